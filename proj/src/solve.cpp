#include "milnorlab/solve.hpp"

#include <cmath>

namespace milnorlab {

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::MaxIterations: return "max_iterations";
    case FailureReason::Diverged: return "diverged";
    case FailureReason::SingularUpdate: return "singular_update";
  }
  return "unknown";
}

Annulus::Annulus(double inner, double outer, std::size_t ambient_dim)
    : r0(inner), r1(outer), dim(ambient_dim) {
  if (!(r0 >= 0.0) || !(r1 > r0)) throw Error("annulus requires 0 <= r0 < r1");
  if (dim == 0) throw Error("annulus requires a positive ambient dimension");
}

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace

bool Annulus::contains(std::span<const double> x, double slack) const {
  if (x.size() != dim) return false;
  double r = norm2(x);
  return r >= r0 - slack && r <= r1 + slack;
}

void Annulus::clamp(std::vector<double>& x) const {
  if (x.size() != dim) throw DimensionMismatch("annulus clamp: point arity mismatch");
  double r = norm2(x);
  if (r < 1e-300) {
    std::fill(x.begin(), x.end(), 0.0);
    x[0] = r0 > 0.0 ? r0 : 0.0;
    return;
  }
  double target = r;
  if (r < r0) target = r0;
  if (r > r1) target = r1;
  if (target != r) {
    double s = target / r;
    for (auto& c : x) c *= s;
  }
}

VectorSystem VectorSystem::make(std::vector<Poly> fs) {
  if (fs.empty()) throw Error("vector system requires at least one equation");
  std::size_t n = fs[0].nvars();
  VectorSystem sys;
  sys.jac.reserve(fs.size());
  for (const auto& f : fs) {
    if (f.nvars() != n) throw DimensionMismatch("vector system: mixed arities");
    std::vector<Poly> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) row.push_back(f.partial(j));
    sys.jac.push_back(std::move(row));
  }
  sys.fs = std::move(fs);
  return sys;
}

VectorSystem VectorSystem::level(const std::vector<Poly>& fs, std::span<const double> v) {
  if (fs.size() != v.size()) throw DimensionMismatch("level system: target arity mismatch");
  std::vector<Poly> shifted;
  shifted.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    shifted.push_back(fs[i] - Poly::constant(fs[i].nvars(), Rat::from_double(v[i])));
  return make(std::move(shifted));
}

Eigen::VectorXd VectorSystem::eval(std::span<const double> x) const {
  Eigen::VectorXd F(static_cast<Eigen::Index>(fs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    double w = weights.empty() ? 1.0 : weights[i];
    F(static_cast<Eigen::Index>(i)) = w * fs[i].eval_double(x);
  }
  return F;
}

Eigen::MatrixXd VectorSystem::jac_at(std::span<const double> x) const {
  Eigen::MatrixXd J(static_cast<Eigen::Index>(fs.size()), static_cast<Eigen::Index>(nvars()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    double w = weights.empty() ? 1.0 : weights[i];
    for (std::size_t j = 0; j < nvars(); ++j)
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          w * jac[i][j].eval_double(x);
  }
  return J;
}

double VectorSystem::ssq(std::span<const double> x) const { return eval(x).squaredNorm(); }

namespace {

constexpr double kDampingCap = 1e14;
constexpr double kDivergenceRadius = 1e8;

struct CoreOutcome {
  std::vector<double> best_x;
  double best_ssq = 0.0;
  int iterations = 0;
  bool hit_tol = false;
  bool diverged = false;
  bool singular = false;
};

// One Levenberg-Marquardt run shared by the root finder and the polisher.
// Keeps the best iterate; stops on tolerance (when stop_at_tol), divergence,
// damping saturation, or the iteration cap.
CoreOutcome lm_core(const VectorSystem& sys, std::vector<double> x, const SolveConfig& cfg,
                    const Annulus* clamp, bool stop_at_tol) {
  if (x.size() != sys.nvars()) throw DimensionMismatch("lm: seed arity mismatch");
  if (clamp) clamp->clamp(x);

  CoreOutcome out;
  Eigen::VectorXd F = sys.eval(x);
  double ssq = F.squaredNorm();
  out.best_x = x;
  out.best_ssq = ssq;

  double mu = cfg.damping0;
  const auto n = static_cast<Eigen::Index>(sys.nvars());

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    out.iterations = iter + 1;
    if (stop_at_tol && out.best_ssq <= cfg.tol_residual) {
      out.hit_tol = true;
      return out;
    }

    Eigen::MatrixXd J = sys.jac_at(x);
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * F;

    bool stepped = false;
    while (mu <= kDampingCap) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += mu;
      Eigen::VectorXd delta = Eigen::LDLT<Eigen::MatrixXd>(A).solve(-g);
      if (!delta.allFinite()) {
        out.singular = true;
        return out;
      }

      std::vector<double> x_new = x;
      for (Eigen::Index j = 0; j < n; ++j) x_new[static_cast<std::size_t>(j)] += delta(j);
      if (clamp) clamp->clamp(x_new);

      double r_new = norm2(x_new);
      Eigen::VectorXd F_new = sys.eval(x_new);
      double ssq_new = F_new.squaredNorm();
      if (!std::isfinite(ssq_new) || r_new > kDivergenceRadius) {
        out.diverged = true;
        return out;
      }

      if (ssq_new < ssq) {
        double predicted = delta.dot(mu * delta - g);  // > 0 for a descent step
        double gain = predicted > 0 ? (ssq - ssq_new) / predicted : 1.0;
        if (gain > cfg.ratio_good)
          mu = std::max(mu / 3.0, 1e-15);
        else if (gain < cfg.ratio_bad)
          mu *= 2.0;
        x = std::move(x_new);
        F = std::move(F_new);
        ssq = ssq_new;
        if (ssq < out.best_ssq) {
          out.best_ssq = ssq;
          out.best_x = x;
        }
        stepped = true;
        break;
      }
      mu *= 10.0;
    }
    if (!stepped) return out;  // damping saturated: stagnation
  }
  if (stop_at_tol && out.best_ssq <= cfg.tol_residual) out.hit_tol = true;
  return out;
}

void verify_postcondition(const VectorSystem& sys, const SolveResult& res, const SolveConfig& cfg,
                          const Annulus* clamp) {
  double check = sys.ssq(res.x);
  if (!(check <= cfg.tol_residual * (1.0 + 1e-9)))
    throw Error("lm postcondition violated: residual recheck failed");
  if (clamp && !clamp->contains(res.x))
    throw Error("lm postcondition violated: point escaped the annulus");
}

}  // namespace

SolveResult lm_solve(const VectorSystem& sys, std::vector<double> seed, const SolveConfig& cfg,
                     const Annulus* clamp) {
  CoreOutcome out = lm_core(sys, std::move(seed), cfg, clamp, /*stop_at_tol=*/true);
  SolveResult res;
  res.x = out.best_x;
  res.residual = out.best_ssq;
  res.iterations = out.iterations;
  if (out.hit_tol) {
    res.ok = true;
    verify_postcondition(sys, res, cfg, clamp);
    return res;
  }
  res.ok = false;
  if (out.diverged)
    res.reason = FailureReason::Diverged;
  else if (out.singular)
    res.reason = FailureReason::SingularUpdate;
  else
    res.reason = FailureReason::MaxIterations;
  return res;
}

SolveResult lm_solve(const std::vector<Poly>& system, std::vector<double> seed,
                     const SolveConfig& cfg, const Annulus* clamp) {
  return lm_solve(VectorSystem::make(system), std::move(seed), cfg, clamp);
}

PolishResult polish_to_stagnation(const VectorSystem& sys, std::vector<double> seed,
                                  const SolveConfig& cfg, const Annulus* clamp) {
  CoreOutcome out = lm_core(sys, std::move(seed), cfg, clamp, /*stop_at_tol=*/false);
  PolishResult res;
  res.x = std::move(out.best_x);
  res.residual = out.best_ssq;
  res.iterations = out.iterations;
  if (clamp && !clamp->contains(res.x))
    throw Error("polish postcondition violated: point escaped the annulus");
  return res;
}

}  // namespace milnorlab
