#include "milnorlab/sample.hpp"

#include <cmath>

namespace milnorlab {

namespace {

constexpr std::size_t kChunk = 256;
constexpr double kDedupeRadius = 1e-8;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

std::vector<double> unit_direction(RandomStream& stream, std::size_t dim) {
  while (true) {
    std::vector<double> v = stream.gaussian(dim);
    double r = norm2(v);
    if (r > 1e-12) {
      for (auto& c : v) c /= r;
      return v;
    }
  }
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

std::vector<std::vector<double>> sample_sphere(std::size_t dim, double radius, std::size_t n,
                                               const RngSpec& rng, std::size_t workers) {
  if (dim == 0 || !(radius > 0.0)) throw Error("sphere sampling needs dim >= 1, radius > 0");
  auto pts = run_chunked<std::vector<double>>(
      n, kChunk, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        out.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> v = unit_direction(stream, dim);
          for (auto& c : v) c *= radius;
          out.push_back(std::move(v));
        }
        return out;
      });
  for (const auto& p : pts)
    if (std::abs(norm2(p) - radius) > 1e-14 * radius)
      throw Error("sphere sampling postcondition violated: radius drift");
  return pts;
}

std::vector<std::vector<double>> sample_ball(std::size_t dim, double radius, std::size_t n,
                                             const RngSpec& rng, std::size_t workers) {
  if (dim == 0 || !(radius > 0.0)) throw Error("ball sampling needs dim >= 1, radius > 0");
  double d = static_cast<double>(dim);
  return run_chunked<std::vector<double>>(
      n, kChunk, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        out.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> v = unit_direction(stream, dim);
          double r = radius * std::pow(stream.uniform(), 1.0 / d);
          for (auto& c : v) c *= r;
          out.push_back(std::move(v));
        }
        return out;
      });
}

std::vector<std::vector<double>> sample_annulus(const Annulus& region, std::size_t n,
                                                const RngSpec& rng, std::size_t workers) {
  double d = static_cast<double>(region.dim);
  double lo = std::pow(region.r0, d), hi = std::pow(region.r1, d);
  return run_chunked<std::vector<double>>(
      n, kChunk, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        out.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> v = unit_direction(stream, region.dim);
          double r = std::pow(lo + (hi - lo) * stream.uniform(), 1.0 / d);
          for (auto& c : v) c *= r;
          out.push_back(std::move(v));
        }
        return out;
      });
}

std::vector<std::vector<double>> variety_sample(const Ideal& ideal, const Annulus& region,
                                                std::size_t n_seeds, const SolveConfig& cfg,
                                                const RngSpec& rng, std::size_t workers) {
  if (ideal.whole_space) throw Error("variety sampling is undefined for a whole-space ideal");
  if (region.dim != ideal.nvars())
    throw DimensionMismatch("variety sampling: region dimension mismatch");

  VectorSystem sys = VectorSystem::make(ideal.gens);
  double d = static_cast<double>(region.dim);
  double lo = std::pow(region.r0, d), hi = std::pow(region.r1, d);

  auto hits = run_chunked<std::vector<double>>(
      n_seeds, 64, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> seed = unit_direction(stream, region.dim);
          double r = std::pow(lo + (hi - lo) * stream.uniform(), 1.0 / d);
          for (auto& c : seed) c *= r;
          SolveResult res = lm_solve(sys, std::move(seed), cfg, &region);
          if (res.ok) out.push_back(std::move(res.x));
        }
        return out;
      });

  for (const auto& p : hits) {
    if (!(sys.ssq(p) <= cfg.tol_residual * (1.0 + 1e-9)))
      throw Error("variety sampling postcondition violated: residual recheck failed");
    if (!region.contains(p))
      throw Error("variety sampling postcondition violated: point left the region");
  }

  std::vector<std::vector<double>> unique;
  for (auto& p : hits) {
    bool seen = false;
    for (const auto& q : unique)
      if (dist2(p, q) <= kDedupeRadius) {
        seen = true;
        break;
      }
    if (!seen) unique.push_back(std::move(p));
  }
  return unique;
}

ConstrainedMinResult constrained_min(const std::vector<Poly>& objective, const Ideal& constraint,
                                     const Annulus& region, const SolveConfig& cfg,
                                     const RngSpec& rng, std::size_t restarts,
                                     double feasible_tol, double mu_base) {
  if (objective.empty()) throw Error("constrained minimization requires an objective");
  if (region.dim != objective[0].nvars())
    throw DimensionMismatch("constrained minimization: region dimension mismatch");

  VectorSystem obj_sys = VectorSystem::make(objective);
  bool has_constraint = !constraint.whole_space && !constraint.gens.empty();
  VectorSystem con_sys;
  if (has_constraint) con_sys = VectorSystem::make(constraint.gens);

  // The penalty objective |G|^2 + mu * |gens|^2 as one weighted least-squares
  // stack; weights carry sqrt(mu) so the rational rows stay exact.
  std::vector<Poly> stacked = objective;
  if (has_constraint)
    stacked.insert(stacked.end(), constraint.gens.begin(), constraint.gens.end());
  VectorSystem pen_sys = VectorSystem::make(stacked);
  pen_sys.weights.assign(pen_sys.rows(), 1.0);

  double d = static_cast<double>(region.dim);
  double lo = std::pow(region.r0, d), hi = std::pow(region.r1, d);

  ConstrainedMinResult result;
  bool found = false;

  for (std::size_t restart = 0; restart < restarts; ++restart) {
    RandomStream stream(RngSpec{rng.master_seed, rng.stream_id + restart});
    std::vector<double> x = unit_direction(stream, region.dim);
    double r = std::pow(lo + (hi - lo) * stream.uniform(), 1.0 / d);
    for (auto& c : x) c *= r;

    std::size_t n_stages = has_constraint ? 7 : 1;
    for (std::size_t k = 0; k < n_stages; ++k) {
      double mu = has_constraint ? mu_base * std::pow(10.0, static_cast<double>(k)) : 0.0;
      for (std::size_t row = objective.size(); row < pen_sys.rows(); ++row)
        pen_sys.weights[row] = std::sqrt(mu);

      PolishResult polished = polish_to_stagnation(pen_sys, x, cfg, &region);
      x = polished.x;

      PenaltyStage stage;
      stage.restart = restart;
      stage.mu = mu;
      stage.objective = obj_sys.ssq(x);
      stage.constraint_residual = has_constraint ? con_sys.ssq(x) : 0.0;
      stage.x = x;

      bool feasible = stage.constraint_residual <= feasible_tol;
      if (feasible && (!found || stage.objective < result.value)) {
        result.value = stage.objective;
        result.argmin = x;
        found = true;
      }
      result.trace.push_back(std::move(stage));
    }
  }

  if (!found) throw NoFeasiblePoint("no point met the constraint tolerance in the region");
  return result;
}

}  // namespace milnorlab
