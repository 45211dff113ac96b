#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnorlab/poly.hpp"

namespace milnorlab {

// Dense matrix of polynomials sharing one ambient variable set.
struct PolyMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Poly> entries;  // row-major

  const Poly& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  Poly& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }

  static PolyMat make(std::size_t rows, std::size_t cols, std::size_t nvars) {
    PolyMat m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(rows * cols, Poly(nvars));
    return m;
  }
};

// Polynomial map germ (R^m, 0) -> (R^p, 0): every component vanishes at the
// origin, m >= p >= 1, variable names pairwise distinct.
struct MapGerm {
  std::vector<std::string> vars;     // length m
  std::vector<Poly> components;      // length p, each with nvars == m
  std::optional<std::string> name;

  std::size_t source_dim() const { return vars.size(); }
  std::size_t target_dim() const { return components.size(); }

  // Throws on contract violations; used by every constructor path.
  void validate() const;
};

// p x m matrix of first partials, rows follow component order.
PolyMat jacobian(const MapGerm& g);

// Entry-wise substitution of F's components into the entries of M (entries
// must have arity F.target_dim()).
PolyMat substitute(const PolyMat& mat, const MapGerm& f);

// H = G after F; requires F.target_dim() == G.source_dim().
MapGerm compose(const MapGerm& g, const MapGerm& f);

// All k x k minors of `mat`, enumerated over lexicographically increasing
// (row subset, column subset) pairs, each expanded along its first row.
// Empty when k exceeds either dimension.
std::vector<Poly> minors(const PolyMat& mat, std::size_t k);

std::vector<Rat> eval(const MapGerm& g, std::span<const Rat> x);
std::vector<double> eval_double(const MapGerm& g, std::span<const double> x);

}  // namespace milnorlab
