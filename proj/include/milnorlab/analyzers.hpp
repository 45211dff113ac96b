#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "milnorlab/cluster.hpp"
#include "milnorlab/sample.hpp"

namespace milnorlab {

// Shared numeric gates. Residual gates are relative: a point is on a variety
// when every generator g satisfies |g(x)| <= tol * scale(g, r), where
// scale(g, r) = sum of |coefficient| * r^degree over the terms of g. Absolute
// thresholds stop separating anything once generators carry high degrees and
// the radius drops: every point in a small annulus then passes. Value gates
// scale linearly with the radius so verdicts survive domain rescaling.
struct Thresholds {
  double tau = 1e-12;             // absolute sum-of-squares tolerance for raw solves
  double rel_membership = 1e-10;  // witness-grade relative membership (max over gens)
  double rel_probe = 1e-8;        // presence/inclusion-grade relative membership
  double value_ceiling = 1e-3;    // witness needs |G(x)| <= value_ceiling * r
  double value_floor = 1e-5;      // ... and |G(x)| >= value_floor * r (nonzero value)
  double level_target = 1e-4;     // retarget witnesses to |G(x)| = level_target * r
  double proximity = 0.25;        // anchor within proximity * r; chain gate on the unit sphere
  std::size_t persistence = 3;    // consecutive stages required for a NotTame verdict
  std::size_t local_dim_k = 10;   // PCA neighborhood size
  double pca_rel = 0.1;           // relative eigenvalue cut for local dimension
  double pca_floor = 1e-10;       // absolute eigenvalue floor
  double dedupe = 1e-8;           // point dedup radius
};

// sum over terms of |coefficient| * r^degree: the magnitude scale of p on the
// sphere of radius r. Always >= smallest positive term scale; 0 for the zero
// polynomial.
double poly_scale(const Poly& p, double r);

// Residual rows divided by their radius-r scales, so residuals are read in
// units of each generator's own magnitude. Zero generators get weight 0.
VectorSystem scaled_system(const std::vector<Poly>& gens, double r);

// max over generators of |g(x)| / scale(g, r); zero generators contribute 0.
double relative_residual(const std::vector<Poly>& gens, std::span<const double> x, double r);

// Points of the common zero set of `gens` inside the ring: scale-normalized
// damped least squares from random ring seeds, polished to stagnation, kept
// when the relative residual meets rel_tol, deduplicated.
std::vector<std::vector<double>> sample_members(const std::vector<Poly>& gens,
                                                const Annulus& ring, std::size_t n_seeds,
                                                double rel_tol, const SolveConfig& cfg,
                                                const RngSpec& rng, std::size_t workers = 1,
                                                double dedupe_radius = 1e-8);

// ---------------------------------------------------------------------------
// Isolated singular value: Sing G inside G^{-1}(0).

struct IsvReport {
  bool holds = true;
  bool vacuous = false;  // no singular points found in the region
  std::size_t n_points = 0;
  double ceiling_factor = 1e-3;  // violation when |G(x)| > factor * |x|
  std::vector<std::vector<double>> violations;
};

IsvReport isolated_singular_value_check(const MapGerm& g, const Annulus& region,
                                        const SolveConfig& cfg, const RngSpec& rng,
                                        const Thresholds& th = {}, std::size_t n_seeds = 400,
                                        std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Tameness scan.

struct WitnessPoint {
  std::vector<double> x;            // the witness itself
  double norm = 0.0;                // |x|
  double value = 0.0;               // |G(x)|
  double milnor_residual = 0.0;     // relative residual on the Milnor generators
  std::vector<double> fiber_anchor; // nearby zero-fibre point x*
  double anchor_distance = 0.0;     // |x - x*|
  double anchor_norm = 0.0;         // |x*|
  double radius = 0.0;              // stage radius r
  std::size_t stage = 0;
};

struct StageSummary {
  std::size_t index = 0;
  double radius = 0.0;
  bool fibre_present = false;  // zero fibre meets the annulus [r/2, r]
  std::size_t n_candidates = 0;
  std::size_t n_witnesses = 0;
  bool obstruction_found = false;
  double obstruction_score = 0.0;  // min |G| over anchor-qualified candidates
};

enum class Tameness { NotTame, TameUpToResolution, TriviallyTame };
const char* to_string(Tameness t);

struct TamenessVerdict {
  Tameness kind = Tameness::TameUpToResolution;
  bool isv_checked = false;
  bool isv_holds = true;  // verdict carries a warning flag when this is false
  double smallest_radius = 0.0;
  std::vector<StageSummary> stages;
  // NotTame evidence: one witness per stage of the qualifying consecutive
  // chain (deepest chain found), plus the limit estimate = deepest anchor.
  std::vector<WitnessPoint> witnesses;
  std::vector<double> limit_estimate;
  std::string trivially_tame_reason;
};

struct TamenessOptions {
  double r0 = 0.1;
  std::size_t stages = 6;  // probes radii r0 * 2^-k for k = 0..stages-1
  std::size_t fibre_probe_seeds = 160;
  std::size_t restarts = 8;  // penalty restarts per stage
  std::size_t workers = 1;
  bool check_isv = true;
  Thresholds thresholds;
};

TamenessVerdict tameness_scan(const MapGerm& g, const TamenessOptions& opt,
                              const SolveConfig& cfg, const RngSpec& rng);

// ---------------------------------------------------------------------------
// Fibre topology.

struct ClusterSummary {
  std::size_t size = 0;
  std::size_t dim = 0;
  std::vector<double> representative;
};

struct FiberReport {
  std::vector<double> target;
  double eps = 0.0;
  std::size_t n_seeds = 0;
  std::size_t n_hits = 0;    // converged, inside the ball, before dedup
  std::size_t n_unique = 0;  // after dedup and gap refinement (can exceed n_hits)
  bool no_solutions = false;
  bool discrete = false;  // isolated-solution regime: every unique point is a cluster
  double linkage_radius = 0.0;
  std::array<std::size_t, 3> plateau_counts{0, 0, 0};  // at h/2, h, 2h
  bool plateau = false;
  std::vector<ClusterSummary> clusters;
  std::vector<std::vector<double>> points;  // unique hits, for plots
  std::vector<std::size_t> labels;          // cluster index per point
};

FiberReport fiber_report(const MapGerm& g, std::span<const double> v, double eps,
                         std::size_t n_seeds, const SolveConfig& cfg, const RngSpec& rng,
                         const Thresholds& th = {}, std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Image germ probes.

// True iff a preimage of v is found inside the closed ball of radius eps.
// One-sided: false only means not found at this seed budget.
bool image_membership(const MapGerm& g, std::span<const double> v, double eps,
                      std::size_t n_seeds, const SolveConfig& cfg, const RngSpec& rng,
                      std::size_t workers = 1);

struct ImageGermReport {
  std::vector<std::vector<double>> directions;  // unit vectors in the target
  std::vector<double> magnitudes;               // strictly decreasing
  double eps1 = 0.0, eps2 = 0.0;                // eps1 > eps2
  // member[d][t][e] with e = 0 for eps1, 1 for eps2, flattened row-major.
  std::vector<unsigned char> member;
  std::vector<unsigned char> unstable;  // per direction
  bool any_unstable = false;

  bool member_at(std::size_t d, std::size_t t, std::size_t e) const {
    return member[(d * magnitudes.size() + t) * 2 + e] != 0;
  }
};

// Unstable direction: for the two smallest magnitudes, membership holds in
// the eps1 ball but fails in the eps2 ball -- the image germ visibly depends
// on the ball radius along that ray. Smaller ball solved first; a hit there
// implies membership in the larger ball without a second solve, which makes
// the membership matrix monotone in eps by construction.
ImageGermReport image_germ_stability(const MapGerm& g,
                                     const std::vector<std::vector<double>>& directions,
                                     const std::vector<double>& magnitudes, double eps1,
                                     double eps2, std::size_t n_seeds, const SolveConfig& cfg,
                                     const RngSpec& rng, std::size_t workers = 1);

// Equally spaced directions on the unit circle for p = 2, a deterministic
// sphere sample otherwise.
std::vector<std::vector<double>> default_directions(std::size_t p, std::size_t n,
                                                    const RngSpec& rng);

// ---------------------------------------------------------------------------
// Composition ladder.

struct InclusionCheck {
  std::string name;
  std::size_t n_seeds = 0;
  std::size_t n_members = 0;  // sampled points that lie on the left-hand variety
  std::size_t n_violations = 0;
  double tau = 0.0;
  double tau_prime = 0.0;
  std::vector<std::vector<double>> violations;
};

struct CompositionReport {
  MapGerm h;  // G after F
  bool chain_rule_exact = false;
  std::vector<InclusionCheck> inclusions;  // Sing H vs F=0; M(H) vs M(F); F=0 vs H=0
  TamenessVerdict h_verdict;
  TamenessVerdict f_verdict;
};

CompositionReport composition_analysis(const MapGerm& g_outer, const MapGerm& f_inner,
                                       const Annulus& region, std::size_t n_seeds,
                                       const TamenessOptions& tame_opt, const SolveConfig& cfg,
                                       const RngSpec& rng, const Thresholds& th = {},
                                       std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Milnor-set / zero-fibre inclusion sample check.

struct ViolationReport {
  std::size_t n_seeds = 0;
  std::size_t n_members = 0;  // points found on M(G) intersect G^{-1}(0) in the region
  std::size_t n_violations = 0;
  bool vacuous = false;  // no members found
  double tau = 0.0;
  double tau_prime = 0.0;  // singular residual bound 10 * tau^(1/deg)
  std::vector<std::vector<double>> violations;
};

ViolationReport milnor_zero_fiber_check(const MapGerm& g, const Annulus& region,
                                        std::size_t n_seeds, const SolveConfig& cfg,
                                        const RngSpec& rng, const Thresholds& th = {},
                                        std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Product structure probe: drop the last component and compare fibres.

struct ProductReport {
  FiberReport full;     // fibre of F at (delta, 0, ..., 0)
  FiberReport reduced;  // fibre of (g_1, ..., g_{p-1}) at (delta, 0, ..., 0)
  bool corollary_hypothesis_met = false;  // p >= 3
  bool inconclusive = false;              // a fibre lacks a plateau
  bool counts_equal = false;
  bool dims_shift = false;  // sorted reduced dims == sorted full dims, each + 1
  bool consistent = false;  // counts_equal && dims_shift, when conclusive
};

ProductReport product_structure_check(const MapGerm& f, double delta, double eps,
                                      std::size_t n_seeds, const SolveConfig& cfg,
                                      const RngSpec& rng, const Thresholds& th = {},
                                      std::size_t workers = 1);

}  // namespace milnorlab
