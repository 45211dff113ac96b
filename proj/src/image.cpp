#include <cmath>

#include "milnorlab/analyzers.hpp"

namespace milnorlab {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace

bool image_membership(const MapGerm& g, std::span<const double> v, double eps,
                      std::size_t n_seeds, const SolveConfig& cfg, const RngSpec& rng,
                      std::size_t workers) {
  if (v.size() != g.target_dim())
    throw DimensionMismatch("image target has wrong dimension");
  if (!(eps > 0.0)) throw Error("image ball radius must be positive");

  const std::size_t m = g.source_dim();
  double vn = norm2(v);
  if (vn == 0.0) return true;  // germs fix the origin
  VectorSystem sys = VectorSystem::level(g.components, v);
  Annulus ball(0.0, eps, m);

  // The absolute solve tolerance stops separating hits from near-misses once
  // |v| shrinks toward it; demand a residual small against the target itself.
  SolveConfig mcfg = cfg;
  mcfg.tol_residual = std::min(cfg.tol_residual, (1e-4 * vn) * (1e-4 * vn));

  auto found = run_chunked<unsigned char>(
      n_seeds, 64, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<unsigned char> out;
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> dir;
          double n = 0.0;
          do {
            dir = stream.gaussian(m);
            n = norm2(dir);
          } while (n <= 1e-12);
          double rad = eps * std::pow(stream.uniform(), 1.0 / static_cast<double>(m));
          for (auto& c : dir) c *= rad / n;
          SolveResult res = lm_solve(sys, std::move(dir), mcfg, &ball);
          if (res.ok) {
            out.push_back(1);
            return out;  // one preimage settles the chunk
          }
        }
        return out;
      });
  for (unsigned char f : found)
    if (f) return true;
  return false;
}

ImageGermReport image_germ_stability(const MapGerm& g,
                                     const std::vector<std::vector<double>>& directions,
                                     const std::vector<double>& magnitudes, double eps1,
                                     double eps2, std::size_t n_seeds, const SolveConfig& cfg,
                                     const RngSpec& rng, std::size_t workers) {
  if (directions.empty()) throw Error("image stability needs at least one direction");
  if (magnitudes.empty()) throw Error("image stability needs at least one magnitude");
  for (std::size_t t = 0; t + 1 < magnitudes.size(); ++t)
    if (!(magnitudes[t] > magnitudes[t + 1]))
      throw Error("image magnitudes must decrease strictly");
  if (!(magnitudes.back() > 0.0)) throw Error("image magnitudes must be positive");
  if (!(eps1 > eps2) || !(eps2 > 0.0)) throw Error("image radii must satisfy eps1 > eps2 > 0");
  const std::size_t p = g.target_dim();
  for (const auto& d : directions)
    if (d.size() != p) throw DimensionMismatch("image direction has wrong dimension");

  ImageGermReport rep;
  rep.directions = directions;
  rep.magnitudes = magnitudes;
  rep.eps1 = eps1;
  rep.eps2 = eps2;
  const std::size_t T = magnitudes.size();
  rep.member.assign(directions.size() * T * 2, 0);
  rep.unstable.assign(directions.size(), 0);

  for (std::size_t d = 0; d < directions.size(); ++d) {
    for (std::size_t t = 0; t < T; ++t) {
      std::vector<double> v(p);
      for (std::size_t j = 0; j < p; ++j) v[j] = magnitudes[t] * directions[d][j];
      const std::size_t cell = (d * T + t) * 2;
      // Small ball first: a preimage there lies in the big ball too.
      bool member2 = image_membership(
          g, v, eps2, n_seeds, cfg, RngSpec{rng.master_seed, rng.stream_id + (cell + 1) * kStreamStride},
          workers);
      bool member1 =
          member2 ||
          image_membership(g, v, eps1, n_seeds, cfg,
                           RngSpec{rng.master_seed, rng.stream_id + cell * kStreamStride}, workers);
      rep.member[cell + 0] = member1 ? 1 : 0;
      rep.member[cell + 1] = member2 ? 1 : 0;
    }
    if (T >= 2) {
      bool split_deep = true;
      for (std::size_t t = T - 2; t < T; ++t)
        split_deep = split_deep && rep.member_at(d, t, 0) && !rep.member_at(d, t, 1);
      rep.unstable[d] = split_deep ? 1 : 0;
      rep.any_unstable = rep.any_unstable || split_deep;
    }
  }
  return rep;
}

std::vector<std::vector<double>> default_directions(std::size_t p, std::size_t n,
                                                    const RngSpec& rng) {
  if (p == 0 || n == 0) throw Error("need a positive dimension and direction count");
  if (p == 2) {
    std::vector<std::vector<double>> dirs;
    dirs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      double a = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(n);
      dirs.push_back({std::cos(a), std::sin(a)});
    }
    return dirs;
  }
  return sample_sphere(p, 1.0, n, rng, 1);
}

}  // namespace milnorlab
