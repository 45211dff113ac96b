#include "milnorlab/analyzers.hpp"

#include <cmath>

namespace milnorlab {

const char* to_string(Tameness t) {
  switch (t) {
    case Tameness::NotTame: return "not_tame";
    case Tameness::TameUpToResolution: return "tame_up_to_resolution";
    case Tameness::TriviallyTame: return "trivially_tame";
  }
  return "unknown";
}

double poly_scale(const Poly& p, double r) {
  double s = 0.0;
  for (const auto& [mono, coeff] : p.terms())
    s += std::abs(coeff.to_double()) * std::pow(r, static_cast<double>(mono.total_degree()));
  return s;
}

VectorSystem scaled_system(const std::vector<Poly>& gens, double r) {
  VectorSystem sys = VectorSystem::make(gens);
  sys.weights.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    double s = poly_scale(gens[i], r);
    sys.weights[i] = s > 0.0 ? 1.0 / s : 0.0;
  }
  return sys;
}

double relative_residual(const std::vector<Poly>& gens, std::span<const double> x, double r) {
  double worst = 0.0;
  for (const auto& g : gens) {
    double s = poly_scale(g, r);
    if (s <= 0.0) continue;
    worst = std::max(worst, std::abs(g.eval_double(x)) / s);
  }
  return worst;
}

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

std::vector<std::vector<double>> sample_members(const std::vector<Poly>& gens,
                                                const Annulus& ring, std::size_t n_seeds,
                                                double rel_tol, const SolveConfig& cfg,
                                                const RngSpec& rng, std::size_t workers,
                                                double dedupe_radius) {
  VectorSystem sys = scaled_system(gens, ring.r1);
  double d = static_cast<double>(ring.dim);
  double lo = std::pow(ring.r0, d), hi = std::pow(ring.r1, d);

  auto hits = run_chunked<std::vector<double>>(
      n_seeds, 64, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> seed(ring.dim);
          while (true) {
            double nn = 0.0;
            for (auto& c : seed) {
              c = stream.normal();
              nn += c * c;
            }
            if (nn > 1e-24) {
              double scale = std::pow(lo + (hi - lo) * stream.uniform(), 1.0 / d) / std::sqrt(nn);
              for (auto& c : seed) c *= scale;
              break;
            }
          }
          PolishResult p = polish_to_stagnation(sys, std::move(seed), cfg, &ring);
          if (relative_residual(gens, p.x, ring.r1) <= rel_tol) out.push_back(std::move(p.x));
        }
        return out;
      });

  std::vector<std::vector<double>> unique;
  for (auto& p : hits) {
    bool seen = false;
    for (const auto& q : unique)
      if (dist2(p, q) <= dedupe_radius) {
        seen = true;
        break;
      }
    if (!seen) unique.push_back(std::move(p));
  }
  return unique;
}

IsvReport isolated_singular_value_check(const MapGerm& g, const Annulus& region,
                                        const SolveConfig& cfg, const RngSpec& rng,
                                        const Thresholds& th, std::size_t n_seeds,
                                        std::size_t workers) {
  IsvReport report;
  report.ceiling_factor = th.value_ceiling;

  Ideal sing = singular_ideal(g);
  if (sing.whole_space) {
    // Every point is singular; sample the region directly.
    auto pts = sample_annulus(region, n_seeds / 4 + 1, rng, workers);
    report.n_points = pts.size();
    for (auto& x : pts) {
      auto val = eval_double(g, x);
      if (norm2(val) > th.value_ceiling * norm2(x)) report.violations.push_back(std::move(x));
    }
    report.holds = report.violations.empty();
    return report;
  }

  auto pts = sample_members(sing.gens, region, n_seeds, th.rel_probe, cfg, rng, workers,
                            th.dedupe);
  report.n_points = pts.size();
  if (pts.empty()) {
    report.vacuous = true;
    report.holds = true;
    return report;
  }
  for (auto& x : pts) {
    auto val = eval_double(g, x);
    if (norm2(val) > th.value_ceiling * norm2(x)) report.violations.push_back(std::move(x));
  }
  report.holds = report.violations.empty();
  return report;
}

ViolationReport milnor_zero_fiber_check(const MapGerm& g, const Annulus& region,
                                        std::size_t n_seeds, const SolveConfig& cfg,
                                        const RngSpec& rng, const Thresholds& th,
                                        std::size_t workers) {
  ViolationReport report;
  report.n_seeds = n_seeds;
  report.tau = th.tau;

  Ideal milnor = milnor_ideal(g);
  Ideal sing = singular_ideal(g);
  report.tau_prime = derived_tolerance(th.tau, sing.max_degree());

  // Points on M(G) intersect G^{-1}(0): solve both ideals as one stack. A
  // whole-space Milnor set reduces the stack to the components alone.
  std::vector<Poly> stack;
  if (!milnor.whole_space) stack = milnor.gens;
  stack.insert(stack.end(), g.components.begin(), g.components.end());

  auto pts = sample_members(stack, region, n_seeds, th.rel_probe, cfg, rng, workers, th.dedupe);
  report.n_members = pts.size();
  if (pts.empty()) {
    report.vacuous = true;
    return report;
  }

  VectorSystem sing_sys = VectorSystem::make(sing.gens);
  for (auto& x : pts) {
    double sing_norm = std::sqrt(sing_sys.ssq(x));
    if (sing_norm > report.tau_prime) {
      ++report.n_violations;
      report.violations.push_back(std::move(x));
    }
  }
  return report;
}

}  // namespace milnorlab
