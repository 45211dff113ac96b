#pragma once

#include <vector>

#include "milnorlab/rng.hpp"
#include "milnorlab/solve.hpp"

namespace milnorlab {

// All samplers are pure functions of (arguments, rng) and produce identical
// output for any worker count: work is cut into fixed chunks, chunk c draws
// from stream rng.stream_id + c, and chunks are concatenated in order.

// n points uniform on the sphere of the given radius (normalized Gaussians).
// Every returned point satisfies ||x|| = radius to relative 1e-14.
std::vector<std::vector<double>> sample_sphere(std::size_t dim, double radius, std::size_t n,
                                               const RngSpec& rng, std::size_t workers = 1);

// n points uniform in the closed ball of the given radius.
std::vector<std::vector<double>> sample_ball(std::size_t dim, double radius, std::size_t n,
                                             const RngSpec& rng, std::size_t workers = 1);

// n points uniform in the annulus (volume-weighted radial law).
std::vector<std::vector<double>> sample_annulus(const Annulus& region, std::size_t n,
                                                const RngSpec& rng, std::size_t workers = 1);

// Points on the vanishing set of the ideal inside the region: each of n_seeds
// random annulus seeds is driven by damped least squares with a radial clamp
// every step; hits with residual <= cfg.tol_residual are kept, then
// deduplicated at distance 1e-8 (first occurrence in stream order wins).
std::vector<std::vector<double>> variety_sample(const Ideal& ideal, const Annulus& region,
                                                std::size_t n_seeds, const SolveConfig& cfg,
                                                const RngSpec& rng, std::size_t workers = 1);

// Quadratic-penalty minimization of |objective(x)|^2 over the constraint
// variety intersected with the region. For each random restart the penalty
// weight climbs mu_k = 10^k * mu_base, k = 0..6, each stage polished by
// damped least squares warm-started from the previous stage.
struct PenaltyStage {
  std::size_t restart = 0;
  double mu = 0.0;
  double objective = 0.0;            // |objective(x)|^2, unweighted
  double constraint_residual = 0.0;  // sum of squared constraint generators
  std::vector<double> x;
};

struct ConstrainedMinResult {
  double value = 0.0;  // objective at the best feasible stage point
  std::vector<double> argmin;
  std::vector<PenaltyStage> trace;  // every stage of every restart, in order
};

// feasible_tol bounds the constraint residual (sum of squares) for a stage
// point to count as feasible. Throws NoFeasiblePoint if no stage qualifies.
// A whole_space (or generator-free) constraint is dropped: plain objective
// minimization over the region, one stage per restart.
ConstrainedMinResult constrained_min(const std::vector<Poly>& objective, const Ideal& constraint,
                                     const Annulus& region, const SolveConfig& cfg,
                                     const RngSpec& rng, std::size_t restarts = 8,
                                     double feasible_tol = 1e-12, double mu_base = 1.0);

}  // namespace milnorlab
