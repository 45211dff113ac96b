#include "milnorlab/ideal.hpp"

#include <cmath>

namespace milnorlab {

const char* to_string(IdealKind k) {
  switch (k) {
    case IdealKind::Singular: return "singular";
    case IdealKind::Milnor: return "milnor";
    case IdealKind::ZeroFiber: return "zero_fiber";
    case IdealKind::Custom: return "custom";
  }
  return "custom";
}

namespace {

bool all_zero(const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (!g.is_zero()) return false;
  return true;
}

}  // namespace

Ideal singular_ideal(const MapGerm& g) {
  g.validate();
  Ideal ideal;
  ideal.vars = g.vars;
  ideal.kind = IdealKind::Singular;
  ideal.gens = minors(jacobian(g), g.target_dim());
  ideal.whole_space = ideal.gens.empty() || all_zero(ideal.gens);
  return ideal;
}

Ideal milnor_ideal(const MapGerm& g) {
  g.validate();
  std::size_t m = g.source_dim(), p = g.target_dim();
  Ideal ideal;
  ideal.vars = g.vars;
  ideal.kind = IdealKind::Milnor;
  if (p + 1 > m) {
    ideal.whole_space = true;
    return ideal;
  }
  PolyMat mat = PolyMat::make(p + 1, m, m);
  for (std::size_t v = 0; v < m; ++v) mat.at(0, v) = Poly::variable(m, v);
  PolyMat jac = jacobian(g);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t v = 0; v < m; ++v) mat.at(i + 1, v) = jac.at(i, v);
  ideal.gens = minors(mat, p + 1);
  ideal.whole_space = ideal.gens.empty() || all_zero(ideal.gens);
  return ideal;
}

Ideal zero_fiber_ideal(const MapGerm& g) {
  g.validate();
  Ideal ideal;
  ideal.vars = g.vars;
  ideal.kind = IdealKind::ZeroFiber;
  ideal.gens = g.components;
  ideal.whole_space = all_zero(ideal.gens);
  return ideal;
}

ResidualSystem residual_system(const Ideal& ideal) {
  ResidualSystem sys;
  sys.source = ideal;
  std::size_t m = ideal.nvars();
  sys.gradient.assign(m, Poly(m));
  for (std::size_t v = 0; v < m; ++v) {
    Poly acc(m);
    for (const auto& g : ideal.gens) {
      Poly dg = g.partial(v);
      if (dg.is_zero()) continue;
      acc += (g * dg).scaled(Rat(2));
    }
    sys.gradient[v] = std::move(acc);
  }
  return sys;
}

double derived_tolerance(double tau, std::uint64_t max_degree) {
  return 10.0 * std::pow(tau, 1.0 / static_cast<double>(std::max<std::uint64_t>(max_degree, 1)));
}

}  // namespace milnorlab
