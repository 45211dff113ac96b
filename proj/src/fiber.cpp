#include <algorithm>
#include <cmath>
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

double diameter(const std::vector<std::vector<double>>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, dist2(pts[i], pts[j]));
  return best;
}

struct MstEdge {
  double w = 0.0;
  std::size_t a = 0, b = 0;
};

// Minimum spanning tree (Prim). Single-linkage clusters at threshold h are
// the components left after cutting MST edges above h, so the edge weights
// are exactly the heights where the cluster count changes.
std::vector<MstEdge> mst_edges(const std::vector<std::vector<double>>& pts) {
  std::size_t n = pts.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::vector<char> used(n, 0);
  used[0] = 1;
  for (std::size_t j = 1; j < n; ++j) best[j] = dist2(pts[0], pts[j]);
  std::vector<MstEdge> edges;
  edges.reserve(n - 1);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && (pick == n || best[j] < best[pick])) pick = j;
    used[pick] = 1;
    edges.push_back({best[pick], from[pick], pick});
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && dist2(pts[pick], pts[j]) < best[j]) {
        best[j] = dist2(pts[pick], pts[j]);
        from[j] = pick;
      }
  }
  return edges;
}

std::vector<double> mst_edge_heights(const std::vector<std::vector<double>>& pts) {
  std::vector<double> heights;
  for (const auto& e : mst_edges(pts)) heights.push_back(e.w);
  std::sort(heights.begin(), heights.end());
  return heights;
}

// The linkage radius is read off the widest band (log scale) over which the
// cluster count is constant: between consecutive merge heights, capped above
// by the diameter. A fixed multiple of the median nearest-neighbor distance
// fails on curves, where gap statistics have an exponential tail and some
// within-cluster gap exceeds any fixed multiple at every sample size.
double stable_linkage_radius(const std::vector<double>& heights, double diam) {
  double best_ratio = 0.0, lo = heights.back(), hi = diam;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    double band_lo = heights[i];
    double band_hi = i + 1 < heights.size() ? heights[i + 1] : diam;
    if (!(band_lo > 0.0) || band_hi < band_lo) continue;
    double ratio = band_hi / band_lo;
    if (ratio >= best_ratio) {  // ties resolve toward fewer clusters
      best_ratio = ratio;
      lo = band_lo;
      hi = band_hi;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

FiberReport fiber_report(const MapGerm& g, std::span<const double> v, double eps,
                         std::size_t n_seeds, const SolveConfig& cfg, const RngSpec& rng,
                         const Thresholds& th, std::size_t workers) {
  if (v.size() != g.target_dim())
    throw DimensionMismatch("fiber target has wrong dimension");
  if (!(eps > 0.0)) throw Error("fiber ball radius must be positive");

  FiberReport rep;
  rep.target.assign(v.begin(), v.end());
  rep.eps = eps;
  rep.n_seeds = n_seeds;

  const std::size_t m = g.source_dim();
  VectorSystem sys = VectorSystem::level(g.components, v);

  // The acceptance tolerance must shrink with the target: under a fixed
  // absolute bound, once |v| drops below sqrt(tol) every point where |G| is
  // merely small passes, and a thickened zero fibre bleeds into the report as
  // one giant spurious component.
  SolveConfig fcfg = cfg;
  double vn = norm2(v);
  if (vn > 0.0)
    fcfg.tol_residual = std::min(cfg.tol_residual, (1e-4 * vn) * (1e-4 * vn));

  // Solve from ball seeds; keep sharpened hits that stay in the closed ball.
  auto hits = run_chunked<std::vector<double>>(
      n_seeds, 64, workers, rng, [&](RandomStream& stream, std::size_t begin, std::size_t end) {
        std::vector<std::vector<double>> out;
        for (std::size_t i = begin; i < end; ++i) {
          std::vector<double> dir;
          double n = 0.0;
          do {
            dir = stream.gaussian(m);
            n = norm2(dir);
          } while (n <= 1e-12);
          double rad = eps * std::pow(stream.uniform(), 1.0 / static_cast<double>(m));
          for (auto& c : dir) c *= rad / n;
          SolveResult res = lm_solve(sys, dir, fcfg);
          if (!res.ok) continue;
          PolishResult pol = polish_to_stagnation(sys, std::move(res.x), fcfg);
          if (norm2(pol.x) > eps * (1.0 + 1e-9)) continue;
          if (sys.ssq(pol.x) > fcfg.tol_residual * (1.0 + 1e-9)) continue;
          out.push_back(std::move(pol.x));
        }
        return out;
      });
  rep.n_hits = hits.size();

  std::vector<std::vector<double>> unique;
  for (auto& h : hits) {
    bool fresh = true;
    for (const auto& u : unique)
      if (dist2(h, u) <= th.dedupe) {
        fresh = false;
        break;
      }
    if (fresh) unique.push_back(std::move(h));
  }
  rep.no_solutions = unique.empty();

  // Discrete regime: too few points, or a point cloud whose nearest-neighbor
  // spacing is comparable to its extent, is a set of isolated solutions; a
  // linkage radius derived from that spacing would merge or shatter it.
  double mnn = median_nn_distance(unique);
  rep.discrete = unique.size() < 2 || mnn > 0.1 * diameter(unique);

  // Ball-uniform seeding starves the fibre near the ball boundary, leaving
  // oversized gaps inside one connected piece. Polishing the midpoint of a
  // long spanning-tree edge fills such a gap when the edge is internal; the
  // midpoint between two components polishes onto one of them (or fails the
  // residual), so refinement never bridges genuinely separate pieces.
  if (!rep.discrete) {
    for (int round = 0; round < 3; ++round) {
      double med = median_nn_distance(unique);
      if (!(med > 0.0)) break;
      std::vector<std::vector<double>> added;
      for (const auto& e : mst_edges(unique)) {
        if (e.w <= 3.0 * med) continue;
        std::vector<double> mid(m);
        for (std::size_t c = 0; c < m; ++c) mid[c] = 0.5 * (unique[e.a][c] + unique[e.b][c]);
        PolishResult pol = polish_to_stagnation(sys, std::move(mid), fcfg);
        if (norm2(pol.x) > eps * (1.0 + 1e-9)) continue;
        if (sys.ssq(pol.x) > fcfg.tol_residual * (1.0 + 1e-9)) continue;
        added.push_back(std::move(pol.x));
      }
      std::size_t before = unique.size();
      for (auto& h : added) {
        bool fresh = true;
        for (const auto& u : unique)
          if (dist2(h, u) <= th.dedupe) {
            fresh = false;
            break;
          }
        if (fresh) unique.push_back(std::move(h));
      }
      if (unique.size() == before) break;
    }
  }
  rep.n_unique = unique.size();
  rep.labels.assign(unique.size(), 0);
  if (rep.discrete) {
    rep.linkage_radius = mnn;
    rep.plateau_counts = {unique.size(), unique.size(), unique.size()};
    rep.plateau = !unique.empty();
    std::vector<std::size_t> order(unique.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return unique[a] < unique[b]; });
    for (std::size_t ci = 0; ci < order.size(); ++ci) {
      ClusterSummary cs;
      cs.size = 1;
      cs.dim = 0;
      cs.representative = unique[order[ci]];
      rep.clusters.push_back(std::move(cs));
      rep.labels[order[ci]] = ci;
    }
  } else {
    double h = stable_linkage_radius(mst_edge_heights(unique), diameter(unique));
    rep.linkage_radius = h;
    rep.plateau_counts = {single_linkage(unique, h / 2.0).size(),
                          single_linkage(unique, h).size(),
                          single_linkage(unique, 2.0 * h).size()};
    rep.plateau = rep.plateau_counts[0] == rep.plateau_counts[1] &&
                  rep.plateau_counts[1] == rep.plateau_counts[2];
    auto grouped = single_linkage(unique, h);
    for (std::size_t ci = 0; ci < grouped.size(); ++ci) {
      const auto& idxs = grouped[ci];
      ClusterSummary cs;
      cs.size = idxs.size();
      cs.representative = unique[idxs[0]];
      if (idxs.size() >= th.local_dim_k + 1) {
        std::vector<std::vector<double>> members;
        members.reserve(idxs.size());
        for (std::size_t i : idxs) members.push_back(unique[i]);
        cs.dim = local_dim(members, th.local_dim_k, th.pca_rel, th.pca_floor);
      } else {
        cs.dim = 0;
      }
      rep.clusters.push_back(std::move(cs));
      for (std::size_t i : idxs) rep.labels[i] = ci;
    }
  }

  rep.points = std::move(unique);
  return rep;
}

ProductReport product_structure_check(const MapGerm& f, double delta, double eps,
                                      std::size_t n_seeds, const SolveConfig& cfg,
                                      const RngSpec& rng, const Thresholds& th,
                                      std::size_t workers) {
  const std::size_t p = f.target_dim();
  if (p < 2) throw Error("product structure probe needs at least two components");

  ProductReport rep;
  rep.corollary_hypothesis_met = p >= 3;

  std::vector<double> target(p, 0.0);
  target[0] = delta;
  rep.full = fiber_report(f, target, eps, n_seeds, cfg, rng, th, workers);

  MapGerm reduced = f;
  reduced.components.pop_back();
  if (reduced.name) *reduced.name += "_reduced";
  std::vector<double> target_red(p - 1, 0.0);
  target_red[0] = delta;
  rep.reduced = fiber_report(reduced, target_red, eps, n_seeds, cfg,
                             RngSpec{rng.master_seed, rng.stream_id + kStreamStride}, th, workers);

  rep.inconclusive = !rep.full.plateau || !rep.reduced.plateau;
  rep.counts_equal = rep.full.clusters.size() == rep.reduced.clusters.size();

  // Dropping the last component should thicken every fibre cluster by one
  // dimension; compare the multisets of cluster dimensions.
  std::vector<std::size_t> full_dims, red_dims;
  for (const auto& c : rep.full.clusters) full_dims.push_back(c.dim + 1);
  for (const auto& c : rep.reduced.clusters) red_dims.push_back(c.dim);
  std::sort(full_dims.begin(), full_dims.end());
  std::sort(red_dims.begin(), red_dims.end());
  rep.dims_shift = rep.counts_equal && full_dims == red_dims;

  rep.consistent = !rep.inconclusive && rep.counts_equal && rep.dims_shift;
  return rep;
}

}  // namespace milnorlab
