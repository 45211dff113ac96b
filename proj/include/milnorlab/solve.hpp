#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milnorlab/ideal.hpp"

namespace milnorlab {

struct SolveConfig {
  double tol_residual = 1e-12;  // success means sum of squares <= this
  int max_iterations = 200;
  double damping0 = 1e-3;
  // Gain-ratio thresholds steering the damping update: shrink above `good`,
  // grow below `bad`.
  double ratio_good = 0.75;
  double ratio_bad = 0.25;
};

// Closed annulus {x in R^dim : r0 <= |x| <= r1}. r0 = 0 degenerates to a ball.
struct Annulus {
  double r0 = 0.0;
  double r1 = 1.0;
  std::size_t dim = 0;

  Annulus(double inner, double outer, std::size_t ambient_dim);

  bool contains(std::span<const double> x, double slack = 1e-12) const;
  // Radial projection into [r0, r1]. A zero vector lands on the inner sphere
  // along the first axis so the result is always well defined.
  void clamp(std::vector<double>& x) const;
};

enum class FailureReason { MaxIterations, Diverged, SingularUpdate };
const char* to_string(FailureReason r);

struct SolveResult {
  bool ok = false;
  std::vector<double> x;
  double residual = 0.0;  // sum of squares at x
  int iterations = 0;
  FailureReason reason = FailureReason::MaxIterations;  // meaningful when !ok
};

// Polynomial residual vector with its exact symbolic Jacobian, plus optional
// per-row numeric weights (used by the quadratic-penalty driver).
struct VectorSystem {
  std::vector<Poly> fs;
  std::vector<std::vector<Poly>> jac;  // fs.size() rows, nvars() columns
  std::vector<double> weights;         // empty means all ones

  static VectorSystem make(std::vector<Poly> fs);
  // Rows for the equations f_i(x) = v_i, i.e. f_i - v_i with the target
  // converted to its exact binary rational.
  static VectorSystem level(const std::vector<Poly>& fs, std::span<const double> v);

  std::size_t nvars() const { return jac.empty() ? 0 : jac[0].size(); }
  std::size_t rows() const { return fs.size(); }

  Eigen::VectorXd eval(std::span<const double> x) const;
  Eigen::MatrixXd jac_at(std::span<const double> x) const;
  double ssq(std::span<const double> x) const;
};

// Damped least squares (Levenberg-Marquardt) on 1/2 |F(x)|^2. Succeeds only
// if the residual tolerance is met; the success path re-verifies residual and
// region membership from scratch before returning.
SolveResult lm_solve(const VectorSystem& sys, std::vector<double> seed,
                     const SolveConfig& cfg = {}, const Annulus* clamp = nullptr);
SolveResult lm_solve(const std::vector<Poly>& system, std::vector<double> seed,
                     const SolveConfig& cfg = {}, const Annulus* clamp = nullptr);

// Same iteration, but driven until the damping saturates or iterations run
// out, always returning the best iterate seen. Never fails: callers judge the
// final residual themselves (membership gates, stagnation analysis).
struct PolishResult {
  std::vector<double> x;
  double residual = 0.0;
  int iterations = 0;
};
PolishResult polish_to_stagnation(const VectorSystem& sys, std::vector<double> seed,
                                  const SolveConfig& cfg = {}, const Annulus* clamp = nullptr);

}  // namespace milnorlab
