#include <cmath>
#include <functional>
#include <limits>

#include "milnorlab/analyzers.hpp"

namespace milnorlab {

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

double unit_dist(std::span<const double> a, std::span<const double> b) {
  double na = norm2(a), nb = norm2(b);
  if (na <= 0.0 || nb <= 0.0) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] / na - b[i] / nb;
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

TamenessVerdict tameness_scan(const MapGerm& g, const TamenessOptions& opt,
                              const SolveConfig& cfg, const RngSpec& rng) {
  const Thresholds& th = opt.thresholds;
  const std::size_t m = g.source_dim();
  if (opt.stages == 0) throw Error("tameness scan needs at least one stage");

  TamenessVerdict verdict;
  verdict.smallest_radius = opt.r0 * std::pow(2.0, -static_cast<double>(opt.stages - 1));

  if (opt.check_isv) {
    verdict.isv_checked = true;
    Annulus full(verdict.smallest_radius / 2.0, opt.r0, m);
    IsvReport isv = isolated_singular_value_check(g, full, cfg, rng, th, 400, opt.workers);
    verdict.isv_holds = isv.holds;
  }

  Ideal milnor = milnor_ideal(g);
  Ideal fibre = zero_fiber_ideal(g);

  // |G(x)|^2 as one polynomial, for the level-retargeting row.
  Poly sumsq = Poly::constant(m, Rat(0));
  for (const auto& c : g.components) sumsq += c * c;

  std::vector<std::vector<WitnessPoint>> stage_witnesses(opt.stages);
  bool any_fibre_present = false;

  for (std::size_t k = 0; k < opt.stages; ++k) {
    const double r = opt.r0 * std::pow(2.0, -static_cast<double>(k));
    Annulus ring(r / 2.0, r, m);
    StageSummary stage;
    stage.index = k;
    stage.radius = r;

    const std::uint64_t base = rng.stream_id + (k + 1) * kStreamStride;

    // A stage only matters when the zero fibre reaches its annulus: witnesses
    // are Milnor-set points approaching the punctured fibre at this scale.
    if (fibre.whole_space) {
      stage.fibre_present = true;
    } else {
      stage.fibre_present =
          !sample_members(fibre.gens, ring, opt.fibre_probe_seeds, th.rel_probe, cfg,
                          RngSpec{rng.master_seed, base}, opt.workers, th.dedupe)
               .empty();
    }
    if (!stage.fibre_present || fibre.whole_space) {
      // Whole-space fibre means |G| = 0 identically: nothing can pass the
      // value floor, so the hunt is pointless either way.
      verdict.stages.push_back(stage);
      any_fibre_present = any_fibre_present || stage.fibre_present;
      continue;
    }
    any_fibre_present = true;

    ConstrainedMinResult hunt =
        constrained_min(g.components, milnor, ring, cfg, RngSpec{rng.master_seed, base + 1024},
                        opt.restarts, std::numeric_limits<double>::infinity(), 1.0);
    stage.n_candidates = hunt.trace.size();

    const bool constrained = !milnor.whole_space;
    VectorSystem milnor_sys;
    if (constrained) milnor_sys = scaled_system(milnor.gens, r);
    VectorSystem fibre_sys = scaled_system(fibre.gens, r);

    const double t = th.level_target * r;
    std::vector<Poly> level_rows;
    if (constrained) level_rows = milnor.gens;
    level_rows.push_back(sumsq - Poly::constant(m, Rat::from_double(t * t)));
    VectorSystem level_sys = scaled_system(level_rows, r);
    // The level row's natural scale includes the target offset.
    level_sys.weights.back() = 1.0 / (poly_scale(sumsq, r) + t * t);

    double best_score = std::numeric_limits<double>::infinity();

    for (std::size_t ci = 0; ci < hunt.trace.size(); ++ci) {
      std::vector<double> x = hunt.trace[ci].x;

      // A candidate sitting on the fibre itself has no preferred value
      // direction; nudge it so the level equation has a usable gradient.
      if (norm2(eval_double(g, x)) < t / 10.0) {
        RandomStream nudge(RngSpec{rng.master_seed, base + 4096 + ci});
        auto u = nudge.gaussian(m);
        double un = norm2(u);
        if (un > 0.0)
          for (std::size_t j = 0; j < m; ++j) x[j] += t * u[j] / un;
        ring.clamp(x);
      }

      // Alternate driving |G| to the level target and re-projecting onto the
      // Milnor set; ending on the projection keeps membership honest.
      for (int round = 0; round < 3; ++round) {
        x = polish_to_stagnation(level_sys, std::move(x), cfg, &ring).x;
        if (constrained) x = polish_to_stagnation(milnor_sys, std::move(x), cfg, &ring).x;
      }

      const double value = norm2(eval_double(g, x));
      const double mres = constrained ? relative_residual(milnor.gens, x, r) : 0.0;
      if (mres > th.rel_membership) continue;

      PolishResult anchor = polish_to_stagnation(fibre_sys, x, cfg, nullptr);
      if (relative_residual(fibre.gens, anchor.x, r) > th.rel_probe) continue;
      const double a_dist = dist2(x, anchor.x);
      const double a_norm = norm2(anchor.x);
      if (a_dist > th.proximity * r || a_norm < r / 2.0) continue;
      if (value < th.value_floor * r) continue;  // fibre points are not obstructions

      // Anchor-qualified: a Milnor-set point of nonzero value hugging the
      // punctured zero fibre at this scale.
      stage.obstruction_found = true;
      best_score = std::min(best_score, value);

      if (value > th.value_ceiling * r) continue;

      WitnessPoint w;
      w.x = x;
      w.norm = norm2(x);
      w.value = value;
      w.milnor_residual = mres;
      w.fiber_anchor = anchor.x;
      w.anchor_distance = a_dist;
      w.anchor_norm = a_norm;
      w.radius = r;
      w.stage = k;
      // Re-verify the witness contract before emitting it.
      if (!(w.value > 0.0) || w.milnor_residual > th.rel_membership ||
          w.norm < (r / 2.0) * (1.0 - 1e-9) || w.norm > r * (1.0 + 1e-9))
        throw Error("witness invariant violated on emission");
      stage_witnesses[k].push_back(std::move(w));
    }

    stage.n_witnesses = stage_witnesses[k].size();
    if (stage.obstruction_found) stage.obstruction_score = best_score;
    verdict.stages.push_back(stage);
  }

  if (!any_fibre_present) {
    verdict.kind = Tameness::TriviallyTame;
    verdict.trivially_tame_reason = "zero fibre meets no probed annulus; within resolution "
                                    "the fibre is the origin alone";
    return verdict;
  }

  // Deepest run of `persistence` consecutive stages whose witnesses chain up:
  // one witness per stage, all limit estimates mutually close on the unit
  // sphere (scale-free comparison across radii).
  const std::size_t W = th.persistence;
  std::vector<const WitnessPoint*> chain;
  std::function<bool(std::size_t)> extend = [&](std::size_t stage_idx) -> bool {
    for (const auto& w : stage_witnesses[stage_idx]) {
      bool close = true;
      for (const auto* c : chain)
        close = close && unit_dist(w.fiber_anchor, c->fiber_anchor) <= th.proximity;
      if (!close) continue;
      chain.push_back(&w);
      if (chain.size() == W || extend(stage_idx - 1)) return true;
      chain.pop_back();
    }
    return false;
  };

  if (W >= 1 && opt.stages >= W) {
    for (std::size_t deep = opt.stages; deep-- >= W;) {
      bool populated = true;
      for (std::size_t j = 0; j < W; ++j)
        populated = populated && !stage_witnesses[deep - j].empty();
      if (!populated) continue;
      chain.clear();
      if (extend(deep)) {
        verdict.kind = Tameness::NotTame;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
          verdict.witnesses.push_back(**it);  // shallow to deep
        verdict.limit_estimate = verdict.witnesses.back().fiber_anchor;
        return verdict;
      }
    }
  }

  verdict.kind = Tameness::TameUpToResolution;
  return verdict;
}

}  // namespace milnorlab
