#include <cmath>

#include "milnorlab/analyzers.hpp"

namespace milnorlab {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

PolyMat matmul(const PolyMat& a, const PolyMat& b, std::size_t nvars) {
  if (a.cols != b.rows) throw DimensionMismatch("matrix product shape mismatch");
  PolyMat out = PolyMat::make(a.rows, b.cols, nvars);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      Poly s = Poly::constant(nvars, Rat(0));
      for (std::size_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
      out.at(i, j) = s;
    }
  return out;
}

std::vector<std::vector<double>> members_of(const Ideal& ideal, const Annulus& region,
                                            std::size_t n_seeds, const SolveConfig& cfg,
                                            const RngSpec& rng, const Thresholds& th,
                                            std::size_t workers) {
  if (ideal.whole_space) return sample_annulus(region, n_seeds / 4 + 1, rng, workers);
  return sample_members(ideal.gens, region, n_seeds, th.rel_probe, cfg, rng, workers, th.dedupe);
}

}  // namespace

CompositionReport composition_analysis(const MapGerm& g_outer, const MapGerm& f_inner,
                                       const Annulus& region, std::size_t n_seeds,
                                       const TamenessOptions& tame_opt, const SolveConfig& cfg,
                                       const RngSpec& rng, const Thresholds& th,
                                       std::size_t workers) {
  if (g_outer.source_dim() != f_inner.target_dim())
    throw DimensionMismatch("outer germ source must match inner germ target");
  if (region.dim != f_inner.source_dim())
    throw DimensionMismatch("region lives in the inner germ source");

  CompositionReport rep;
  rep.h = compose(g_outer, f_inner);
  const std::size_t m = f_inner.source_dim();

  // d(G after F) = (dG after F) * dF, as polynomial matrices.
  PolyMat lhs = jacobian(rep.h);
  PolyMat rhs = matmul(substitute(jacobian(g_outer), f_inner), jacobian(f_inner), m);
  rep.chain_rule_exact = lhs.rows == rhs.rows && lhs.cols == rhs.cols;
  if (rep.chain_rule_exact)
    for (std::size_t i = 0; i < lhs.rows; ++i)
      for (std::size_t j = 0; j < lhs.cols; ++j)
        rep.chain_rule_exact = rep.chain_rule_exact && lhs.at(i, j) == rhs.at(i, j);

  Ideal sing_h = singular_ideal(rep.h);
  Ideal milnor_h = milnor_ideal(rep.h);
  Ideal milnor_f = milnor_ideal(f_inner);
  Ideal fiber_f = zero_fiber_ideal(f_inner);
  Ideal fiber_h = zero_fiber_ideal(rep.h);

  ResidualSystem milnor_f_res = residual_system(milnor_f);

  // Singular points of the composition should sit on the inner zero fibre.
  {
    InclusionCheck chk;
    chk.name = "sing_h_in_fiber_f";
    chk.n_seeds = n_seeds;
    chk.tau = th.tau;
    chk.tau_prime = derived_tolerance(th.tau, fiber_f.max_degree());
    auto members = members_of(sing_h, region, n_seeds, cfg, rng, th, workers);
    chk.n_members = members.size();
    for (const auto& x : members)
      if (norm2(eval_double(f_inner, x)) > chk.tau_prime) {
        ++chk.n_violations;
        chk.violations.push_back(x);
      }
    rep.inclusions.push_back(std::move(chk));
  }

  // Milnor set of the composition, away from its zero fibre, should sit on
  // the Milnor set of the inner germ.
  {
    InclusionCheck chk;
    chk.name = "milnor_h_in_milnor_f";
    chk.n_seeds = n_seeds;
    chk.tau = th.tau;
    chk.tau_prime = derived_tolerance(th.tau, milnor_f.max_degree());
    auto members = members_of(milnor_h, region, n_seeds, cfg,
                              RngSpec{rng.master_seed, rng.stream_id + kStreamStride}, th, workers);
    for (const auto& x : members) {
      if (norm2(eval_double(rep.h, x)) <= th.tau) continue;  // puncture at the fibre
      ++chk.n_members;
      if (!milnor_f.whole_space && std::sqrt(milnor_f_res.residual(x)) > chk.tau_prime) {
        ++chk.n_violations;
        chk.violations.push_back(x);
      }
    }
    rep.inclusions.push_back(std::move(chk));
  }

  // The inner zero fibre should land inside the composed zero fibre.
  {
    InclusionCheck chk;
    chk.name = "fiber_f_in_fiber_h";
    chk.n_seeds = n_seeds;
    chk.tau = th.tau;
    chk.tau_prime = derived_tolerance(th.tau, fiber_h.max_degree());
    auto members =
        members_of(fiber_f, region, n_seeds, cfg,
                   RngSpec{rng.master_seed, rng.stream_id + 2 * kStreamStride}, th, workers);
    chk.n_members = members.size();
    for (const auto& x : members)
      if (norm2(eval_double(rep.h, x)) > chk.tau_prime) {
        ++chk.n_violations;
        chk.violations.push_back(x);
      }
    rep.inclusions.push_back(std::move(chk));
  }

  rep.h_verdict = tameness_scan(rep.h, tame_opt, cfg,
                                RngSpec{rng.master_seed, rng.stream_id + 64 * kStreamStride});
  rep.f_verdict = tameness_scan(f_inner, tame_opt, cfg,
                                RngSpec{rng.master_seed, rng.stream_id + 128 * kStreamStride});
  return rep;
}

}  // namespace milnorlab
