#pragma once

#include <string>
#include <vector>

#include "milnorlab/map_germ.hpp"

namespace milnorlab {

enum class IdealKind { Singular, Milnor, ZeroFiber, Custom };

const char* to_string(IdealKind k);

// Finitely generated ideal of polynomials in a fixed variable set. Generator
// order is the deterministic minor enumeration order of its constructor.
// `whole_space` marks ideals whose vanishing set is all of R^m: either no
// minors exist (square Jacobian case) or every enumerated generator is the
// zero polynomial (radial degeneracy).
struct Ideal {
  std::vector<std::string> vars;
  std::vector<Poly> gens;
  IdealKind kind = IdealKind::Custom;
  bool whole_space = false;

  std::size_t nvars() const { return vars.size(); }

  // Max total degree over the generators, at least 1 (tolerance calibration
  // divides by it).
  std::uint64_t max_degree() const {
    std::uint64_t d = 1;
    for (const auto& g : gens) d = std::max(d, g.degree());
    return d;
  }
};

// Rank-deficiency locus of the Jacobian: all p x p minors of JG.
Ideal singular_ideal(const MapGerm& g);

// Rank-deficiency locus of (grad rho^2 / 2; JG), rho = distance to 0: all
// (p+1) x (p+1) minors of the (p+1) x m matrix whose first row is
// (x_1, .., x_m) and remaining rows are JG. When p+1 > m there are no such
// minors and the locus is all of R^m.
Ideal milnor_ideal(const MapGerm& g);

// The components of G themselves.
Ideal zero_fiber_ideal(const MapGerm& g);

// Sum-of-squares merit function of an ideal with its exact symbolic gradient.
struct ResidualSystem {
  Ideal source;
  std::vector<Poly> gradient;  // d/dx_j of sum_i g_i^2, one entry per variable

  double residual(std::span<const double> x) const {
    double s = 0;
    for (const auto& g : source.gens) {
      double v = g.eval_double(x);
      s += v * v;
    }
    return s;
  }

  Rat residual_exact(std::span<const Rat> x) const {
    Rat s(0);
    for (const auto& g : source.gens) {
      Rat v = g.eval(x);
      s += v * v;
    }
    return s;
  }

  std::vector<double> grad(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(gradient.size());
    for (const auto& g : gradient) out.push_back(g.eval_double(x));
    return out;
  }
};

ResidualSystem residual_system(const Ideal& ideal);

// Heuristic derived tolerance for inclusion checks on sampled points:
// tau' = C * tau^(1/d) with C = 10 and d the max generator degree of the
// ideal being tested on the right-hand side.
double derived_tolerance(double tau, std::uint64_t max_degree);

}  // namespace milnorlab
