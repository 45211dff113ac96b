#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "milnorlab/ideal.hpp"
#include "milnorlab/parse.hpp"

using namespace milnorlab;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};

// Signed permutation expansion. Deliberately not the cofactor recursion the
// library uses, so the two determinants can disagree if either is wrong.
Poly det_leibniz(const std::vector<std::vector<Poly>>& a) {
  std::size_t n = a.size();
  std::size_t nv = a[0][0].nvars();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly det = Poly::constant(nv, Rat(0));
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly prod = Poly::constant(nv, inversions % 2 ? Rat(-1) : Rat(1));
    for (std::size_t i = 0; i < n; ++i) prod = prod * a[i][perm[i]];
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

MapGerm germ(const std::string& text) { return parse_germ(text); }

MapGerm sabbah() { return germ("vars: x y z\npoly: x^2 - y^2*z\npoly: y\n"); }
MapGerm act() { return germ("vars: x y z\npoly: y^4 - z^2*x^2 - x^4\npoly: x*y\n"); }
MapGerm square_germ() { return germ("vars: u v\npoly: u^2 - v^2\npoly: 2*u*v\n"); }
MapGerm xy_germ() { return germ("vars: x y\npoly: x\npoly: x*y\n"); }

// Rho-augmented matrix assembled from scratch with Poly::partial, bypassing
// jacobian() and minors().
std::vector<std::vector<Poly>> rho_matrix(const MapGerm& g) {
  std::size_t m = g.source_dim();
  std::vector<std::vector<Poly>> rows;
  std::vector<Poly> rho;
  for (std::size_t j = 0; j < m; ++j) rho.push_back(Poly::variable(m, j));
  rows.push_back(rho);
  for (const auto& c : g.components) {
    std::vector<Poly> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back(c.partial(j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("milnor ideal of the plane-curve family is principal: x*y^2 + 2*x*z") {
  MapGerm g = sabbah();
  Ideal mi = milnor_ideal(g);
  CHECK(mi.kind == IdealKind::Milnor);
  CHECK_FALSE(mi.whole_space);
  REQUIRE(mi.gens.size() == 1);

  Poly expected = parse_poly("x*y^2 + 2*x*z", XYZ);
  Poly oracle = det_leibniz(rho_matrix(g));
  CHECK(oracle == expected);

  // Either orientation of the generator presents the same principal ideal.
  bool matches = (mi.gens[0] == expected) ||
                 (mi.gens[0] == expected.scaled(Rat(-1)));
  CHECK(matches);
  CHECK(mi.max_degree() == 3);
}

TEST_CASE("milnor ideal of the open nonisolated-singularity germ") {
  MapGerm g = act();
  Ideal mi = milnor_ideal(g);
  REQUIRE(mi.gens.size() == 1);

  Poly expected =
      parse_poly("-(2*x^4*z) - 2*x^2*y^2*z - 2*x^2*z^3 - 4*y^4*z", XYZ);
  CHECK(det_leibniz(rho_matrix(g)) == expected);
  bool matches = (mi.gens[0] == expected) ||
                 (mi.gens[0] == expected.scaled(Rat(-1)));
  CHECK(matches);

  // The generator factors through z: it vanishes on {z = 0} identically.
  Poly z = Poly::variable(3, 2);
  Poly quotient = parse_poly("-(2*x^4) - 2*x^2*y^2 - 2*x^2*z^2 - 4*y^4", XYZ);
  CHECK(mi.gens[0] == z * quotient);
}

TEST_CASE("singular ideals match hand-computed minors") {
  Ideal s = singular_ideal(sabbah());
  CHECK(s.kind == IdealKind::Singular);
  REQUIRE(s.gens.size() == 3);
  CHECK(s.gens[0] == parse_poly("2*x", XYZ));
  CHECK(s.gens[1].is_zero());
  CHECK(s.gens[2] == parse_poly("y^2", XYZ));
  CHECK_FALSE(s.whole_space);

  Ideal a = singular_ideal(act());
  REQUIRE(a.gens.size() == 3);
  CHECK(a.gens[0] == parse_poly("-(2*x^2*z^2) - 4*x^4 - 4*y^4", XYZ));
  CHECK(a.gens[1] == parse_poly("2*x^2*y*z", XYZ));
  CHECK(a.gens[2] == parse_poly("2*x^3*z", XYZ));

  std::vector<std::string> UV = {"u", "v"};
  Ideal q = singular_ideal(square_germ());
  REQUIRE(q.gens.size() == 1);
  CHECK(q.gens[0] == parse_poly("4*u^2 + 4*v^2", UV));
}

TEST_CASE("square Jacobians make the milnor ideal the whole space") {
  for (MapGerm g : {square_germ(), xy_germ()}) {
    Ideal mi = milnor_ideal(g);
    CHECK(mi.whole_space);
    CHECK(mi.gens.empty());
    CHECK(mi.max_degree() == 1);
  }
}

TEST_CASE("radial functions have identically zero rho-augmented minors") {
  MapGerm g = germ("vars: x y\npoly: x^2 + y^2\n");
  Ideal mi = milnor_ideal(g);
  CHECK(mi.whole_space);
  REQUIRE(mi.gens.size() == 1);
  CHECK(mi.gens[0].is_zero());
  CHECK(det_leibniz(rho_matrix(g)).is_zero());
}

TEST_CASE("scaling the rho row rescales every minor, so grad(rho^2) and "
          "grad-direction x define the same locus") {
  MapGerm g = act();
  std::size_t m = g.source_dim(), p = g.target_dim();

  PolyMat standard = PolyMat::make(p + 1, m, g.vars.size());
  PolyMat doubled = PolyMat::make(p + 1, m, g.vars.size());
  PolyMat jg = jacobian(g);
  for (std::size_t j = 0; j < m; ++j) {
    standard.at(0, j) = Poly::variable(m, j);
    doubled.at(0, j) = Poly::variable(m, j).scaled(Rat(2));
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      standard.at(i + 1, j) = jg.at(i, j);
      doubled.at(i + 1, j) = jg.at(i, j);
    }

  std::vector<Poly> ms = minors(standard, p + 1);
  std::vector<Poly> md = minors(doubled, p + 1);
  REQUIRE(ms.size() == md.size());
  for (std::size_t i = 0; i < ms.size(); ++i)
    CHECK(md[i] == ms[i].scaled(Rat(2)));
}

TEST_CASE("zero-fiber ideal carries the components verbatim") {
  MapGerm g = sabbah();
  Ideal zf = zero_fiber_ideal(g);
  CHECK(zf.kind == IdealKind::ZeroFiber);
  REQUIRE(zf.gens.size() == 2);
  CHECK(zf.gens[0] == g.components[0]);
  CHECK(zf.gens[1] == g.components[1]);
  CHECK_FALSE(zf.whole_space);

  MapGerm zg = germ("vars: x y\npoly: 0\npoly: 0\n");
  CHECK(zero_fiber_ideal(zg).whole_space);
}

TEST_CASE("residual gradients match central finite differences") {
  std::mt19937_64 rng(515001);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const double h = 1e-6, tol = 1e-5;

  std::vector<Ideal> ideals;
  for (MapGerm g : {sabbah(), act(), square_germ(), xy_germ()}) {
    ideals.push_back(singular_ideal(g));
    ideals.push_back(milnor_ideal(g));
    ideals.push_back(zero_fiber_ideal(g));
  }

  for (const Ideal& ideal : ideals) {
    ResidualSystem sys = residual_system(ideal);
    REQUIRE(sys.gradient.size() == ideal.nvars());
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(ideal.nvars());
      for (auto& c : x) c = coord(rng);
      std::vector<double> sym = sys.grad(x);
      for (std::size_t j = 0; j < x.size(); ++j) {
        std::vector<double> hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        double fd = (sys.residual(hi) - sys.residual(lo)) / (2 * h);
        CHECK(std::abs(fd - sym[j]) <= tol * std::max(1.0, std::abs(sym[j])));
      }
    }
  }
}

TEST_CASE("double residual tracks the exact rational residual") {
  ResidualSystem sys = residual_system(milnor_ideal(sabbah()));
  std::mt19937_64 rng(99173);
  std::uniform_int_distribution<long> num(-20, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rat> xq = {Rat(num(rng), 16), Rat(num(rng), 16), Rat(num(rng), 16)};
    std::vector<double> xd;
    for (const auto& q : xq) xd.push_back(q.to_double());
    double exact = sys.residual_exact(xq).to_double();
    double approx = sys.residual(xd);
    CHECK(std::abs(approx - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("derived tolerance is 10 * tau^(1/max_degree)") {
  CHECK(derived_tolerance(1e-12, 4) == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(derived_tolerance(1e-12, 1) == doctest::Approx(1e-11).epsilon(1e-12));
  CHECK(derived_tolerance(1e-12, 3) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(derived_tolerance(1e-12, 6) == doctest::Approx(1e-1).epsilon(1e-12));
}
