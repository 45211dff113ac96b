#include "milnorlab/map_germ.hpp"

#include <set>

namespace milnorlab {

void MapGerm::validate() const {
  std::size_t m = vars.size();
  std::size_t p = components.size();
  if (p < 1 || m < p) throw DimensionMismatch("map germ needs m >= p >= 1");
  std::set<std::string> seen(vars.begin(), vars.end());
  if (seen.size() != m) throw Error("duplicate variable names");
  for (const auto& c : components) {
    if (c.nvars() != m) throw DimensionMismatch("component arity mismatch");
    if (!c.constant_term().is_zero()) throw Error("component has nonzero constant term");
  }
}

PolyMat jacobian(const MapGerm& g) {
  std::size_t m = g.source_dim(), p = g.target_dim();
  PolyMat j = PolyMat::make(p, m, m);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t v = 0; v < m; ++v) j.at(i, v) = g.components[i].partial(v);
  return j;
}

PolyMat substitute(const PolyMat& mat, const MapGerm& f) {
  PolyMat out = PolyMat::make(mat.rows, mat.cols, f.source_dim());
  for (std::size_t i = 0; i < mat.entries.size(); ++i)
    out.entries[i] = mat.entries[i].substitute(f.components);
  return out;
}

MapGerm compose(const MapGerm& g, const MapGerm& f) {
  if (f.target_dim() != g.source_dim())
    throw DimensionMismatch("compose: inner target dimension != outer source dimension");
  MapGerm h;
  h.vars = f.vars;
  h.components.reserve(g.target_dim());
  for (const auto& comp : g.components) h.components.push_back(comp.substitute(f.components));
  h.validate();
  return h;
}

namespace {

// Cofactor expansion along the first row of the submatrix picked by
// `rows`/`cols` (index lists into `mat`).
Poly det_cofactor(const PolyMat& mat, const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols) {
  std::size_t n = rows.size();
  std::size_t nv = mat.entries.empty() ? 0 : mat.entries[0].nvars();
  if (n == 1) return mat.at(rows[0], cols[0]);
  Poly acc(nv);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < n; ++j) {
    const Poly& pivot = mat.at(rows[0], cols[j]);
    if (pivot.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(n - 1);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) sub_cols.push_back(cols[c]);
    Poly term = pivot * det_cofactor(mat, sub_rows, sub_cols);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// Lexicographically increasing k-subsets of {0, .., n-1}.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Poly> minors(const PolyMat& mat, std::size_t k) {
  std::vector<Poly> out;
  if (k == 0 || k > mat.rows || k > mat.cols) return out;
  auto row_sets = subsets(mat.rows, k);
  auto col_sets = subsets(mat.cols, k);
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) out.push_back(det_cofactor(mat, rs, cs));
  return out;
}

std::vector<Rat> eval(const MapGerm& g, std::span<const Rat> x) {
  std::vector<Rat> out;
  out.reserve(g.target_dim());
  for (const auto& c : g.components) out.push_back(c.eval(x));
  return out;
}

std::vector<double> eval_double(const MapGerm& g, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(g.target_dim());
  for (const auto& c : g.components) out.push_back(c.eval_double(x));
  return out;
}

}  // namespace milnorlab
