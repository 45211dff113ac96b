#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "milnorlab/cluster.hpp"
#include "milnorlab/parse.hpp"
#include "milnorlab/sample.hpp"

using namespace milnorlab;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};

double norm_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

MapGerm sabbah() { return parse_germ("vars: x y z\npoly: x^2 - y^2*z\npoly: y\n"); }
MapGerm square_germ() { return parse_germ("vars: u v\npoly: u^2 - v^2\npoly: 2*u*v\n"); }

}  // namespace

TEST_CASE("rationals capture binary doubles exactly") {
  CHECK(Rat::from_double(0.5) == Rat(1, 2));
  CHECK(Rat::from_double(-0.375) == Rat(-3, 8));
  double v = 1e-4;
  CHECK(Rat::from_double(v).to_double() == v);
  CHECK_THROWS_AS(Rat::from_double(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("streams are reproducible and stream ids decorrelate") {
  RandomStream a(RngSpec{42, 7});
  RandomStream b(RngSpec{42, 7});
  RandomStream c(RngSpec{42, 8});
  bool all_equal = true, any_differs = false;
  for (int i = 0; i < 1000; ++i) {
    double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
    all_equal = all_equal && (va == vb);
    any_differs = any_differs || (va != vc);
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("normals have the right first two moments") {
  RandomStream s(RngSpec{42, 0});
  const int n = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = s.normal();
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n, var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("chunked fan-out is worker-count independent and ordered") {
  auto job = [](RandomStream& stream, std::size_t begin, std::size_t end) {
    std::vector<double> out;
    for (std::size_t i = begin; i < end; ++i) out.push_back(double(i) + stream.uniform());
    return out;
  };
  auto one = run_chunked<double>(1000, 64, 1, RngSpec{9, 100}, job);
  auto many = run_chunked<double>(1000, 64, 4, RngSpec{9, 100}, job);
  REQUIRE(one.size() == 1000);
  CHECK(one == many);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i] >= double(i));
    CHECK(one[i] < double(i) + 1.0);
  }
}

TEST_CASE("annulus clamping projects radially") {
  Annulus ring(0.5, 1.0, 3);
  std::vector<double> inside = {0.0, 0.6, 0.0};
  ring.clamp(inside);
  CHECK(inside == std::vector<double>{0.0, 0.6, 0.0});

  std::vector<double> far = {3.0, 0.0, 4.0};  // norm 5
  ring.clamp(far);
  CHECK(norm_of(far) == doctest::Approx(1.0));
  CHECK(far[0] / far[2] == doctest::Approx(0.75));

  std::vector<double> origin = {0.0, 0.0, 0.0};
  ring.clamp(origin);
  CHECK(norm_of(origin) == doctest::Approx(0.5));

  CHECK_THROWS_AS(Annulus(0.5, 0.5, 3), Error);
}

TEST_CASE("damped least squares finds the nearby root of a perturbed fold") {
  std::vector<std::string> UV = {"u", "v"};
  std::vector<Poly> sys = {parse_poly("u^2 - v^2 - 1/10000", UV), parse_poly("2*u*v", UV)};
  SolveResult res = lm_solve(sys, {0.02, 0.001});
  REQUIRE(res.ok);
  CHECK(res.residual <= 1e-12);
  CHECK(res.x[0] == doctest::Approx(0.01).epsilon(1e-2));
  // residual <= 1e-12 bounds |2uv| by 1e-6, so with u near 0.01, |v| <= ~5e-5
  CHECK(std::abs(res.x[1]) < 1e-4);

  PolishResult sharp = polish_to_stagnation(VectorSystem::make(sys), res.x);
  CHECK(sharp.x[0] == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(std::abs(sharp.x[1]) < 1e-12);
}

TEST_CASE("a single linear equation is driven into tolerance") {
  std::vector<Poly> sys = {parse_poly("x", XYZ)};
  SolveResult res = lm_solve(sys, {0.7, -0.3, 0.2});
  REQUIRE(res.ok);
  CHECK(std::abs(res.x[0]) <= 1e-6);
  // The other coordinates are untouched: the system does not mention them.
  CHECK(res.x[1] == doctest::Approx(-0.3));
  CHECK(res.x[2] == doctest::Approx(0.2));
}

TEST_CASE("a system with no real roots fails instead of pretending") {
  std::vector<std::string> X = {"x"};
  std::vector<Poly> sys = {parse_poly("x^2 + 1", X)};
  SolveResult res = lm_solve(sys, {0.3});
  CHECK_FALSE(res.ok);
  CHECK(res.residual >= 0.9);  // stuck near the global minimum value 1
}

TEST_CASE("polishing continues far past the solve tolerance") {
  Poly gen = parse_poly("x*y^2 + 2*x*z", XYZ);
  VectorSystem sys = VectorSystem::make({gen});
  PolishResult polished = polish_to_stagnation(sys, {1e-3, 0.07, 0.05});
  CHECK(polished.residual <= 1e-24);
}

TEST_CASE("sphere samples sit on the sphere and average out") {
  auto pts = sample_sphere(2, 1.0, 10000, RngSpec{42, 0});
  REQUIRE(pts.size() == 10000);
  double cx = 0.0, cy = 0.0;
  for (const auto& p : pts) {
    CHECK(std::abs(norm_of(p) - 1.0) <= 1e-14);
    cx += p[0];
    cy += p[1];
  }
  cx /= 10000.0;
  cy /= 10000.0;
  CHECK(std::sqrt(cx * cx + cy * cy) < 0.05);

  auto again = sample_sphere(2, 1.0, 10000, RngSpec{42, 0}, 4);
  CHECK(pts == again);
}

TEST_CASE("ball and annulus samples respect their radial bounds") {
  auto ball = sample_ball(3, 0.2, 2000, RngSpec{1, 0});
  for (const auto& p : ball) CHECK(norm_of(p) <= 0.2 + 1e-15);

  Annulus ring(0.05, 0.1, 3);
  auto ann = sample_annulus(ring, 2000, RngSpec{1, kStreamStride});
  for (const auto& p : ann) {
    CHECK(norm_of(p) >= 0.05 - 1e-15);
    CHECK(norm_of(p) <= 0.1 + 1e-15);
  }
}

TEST_CASE("variety sampling covers both branches of the plane-curve Milnor set") {
  Ideal mi = milnor_ideal(sabbah());  // principal: x*(y^2 + 2*z)
  Annulus ring(0.05, 0.1, 3);
  auto pts = variety_sample(mi, ring, 400, SolveConfig{}, RngSpec{42, 0});
  REQUIRE(pts.size() >= 100);

  std::size_t on_x0 = 0, on_parabola = 0;
  for (const auto& p : pts) {
    double g = p[0] * (p[1] * p[1] + 2.0 * p[2]);
    CHECK(std::abs(g) <= 1e-5);
    if (std::abs(p[0]) <= 1e-5) ++on_x0;
    if (std::abs(p[2] + p[1] * p[1] / 2.0) <= 1e-5) ++on_parabola;
  }
  CHECK(on_x0 > 0);
  CHECK(on_parabola > 0);

  auto again = variety_sample(mi, ring, 400, SolveConfig{}, RngSpec{42, 0}, 4);
  CHECK(pts == again);
}

TEST_CASE("variety sampling returns nothing when the variety misses the region") {
  Annulus ring(0.05, 0.1, 2);
  Ideal sing = singular_ideal(square_germ());  // zero set is the origin only
  CHECK(variety_sample(sing, ring, 200, SolveConfig{}, RngSpec{3, 0}).empty());

  MapGerm identity = parse_germ("vars: x y\npoly: x\npoly: y\n");
  CHECK(variety_sample(zero_fiber_ideal(identity), ring, 200, SolveConfig{}, RngSpec{3, 0})
            .empty());
}

TEST_CASE("penalty minimization: radial objective with the constraint dropped") {
  MapGerm g = square_germ();
  Ideal mi = milnor_ideal(g);  // whole space for a square Jacobian
  REQUIRE(mi.whole_space);
  Annulus ring(0.05, 0.1, 2);
  auto res = constrained_min(g.components, mi, ring, SolveConfig{}, RngSpec{42, 0});
  // |G(u,v)|^2 = (u^2+v^2)^2 is radial, so the ring minimum is r0^4.
  CHECK(res.value == doctest::Approx(6.25e-6).epsilon(1e-3));
  CHECK(norm_of(res.argmin) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(res.trace.size() == 8);  // one stage per restart when unconstrained
}

TEST_CASE("penalty minimization walks down the Milnor set toward the zero fibre") {
  MapGerm g = sabbah();
  Ideal mi = milnor_ideal(g);
  Annulus ring(0.05, 0.1, 3);
  auto res = constrained_min(g.components, mi, ring, SolveConfig{}, RngSpec{42, 0});
  CHECK(res.value <= 1e-8);
  CHECK(std::abs(res.argmin[0]) <= 1e-3);  // branch {x = 0}
  CHECK(std::abs(res.argmin[1]) <= 1e-2);  // with y pulled toward 0
  CHECK(res.trace.size() == 8 * 7);

  auto zero_obj = constrained_min({Poly::constant(3, Rat(0))}, mi, ring, SolveConfig{},
                                  RngSpec{42, kStreamStride});
  CHECK(zero_obj.value == 0.0);
  bool feasible_somewhere = false;
  for (const auto& stage : zero_obj.trace)
    feasible_somewhere = feasible_somewhere || stage.constraint_residual <= 1e-12;
  CHECK(feasible_somewhere);
}

TEST_CASE("penalty minimization reports infeasibility honestly") {
  MapGerm g = square_germ();
  Ideal sing = singular_ideal(g);  // only root is the origin, outside the ring
  Annulus ring(0.05, 0.1, 2);
  CHECK_THROWS_AS(
      constrained_min(g.components, sing, ring, SolveConfig{}, RngSpec{42, 0}),
      NoFeasiblePoint);
}

TEST_CASE("single linkage separates two rails and respects permutations") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= 20; ++i) {
    double t = 0.01 * i;
    pts.push_back({0.0, 0.1, t});
    pts.push_back({0.0, -0.1, t});
  }
  auto clusters = single_linkage(pts, 0.03);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].size() == 21);
  CHECK(clusters[1].size() == 21);
  // Canonical order: the cluster holding y = -0.1 has the smaller lead point.
  CHECK(pts[clusters[0][0]][1] == doctest::Approx(-0.1));

  std::vector<std::vector<double>> shuffled = pts;
  std::mt19937_64 rng(5);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto clusters2 = single_linkage(shuffled, 0.03);
  REQUIRE(clusters2.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    REQUIRE(clusters2[c].size() == clusters[c].size());
    for (std::size_t i = 0; i < clusters[c].size(); ++i)
      CHECK(shuffled[clusters2[c][i]] == pts[clusters[c][i]]);
  }

  CHECK(single_linkage({{1.0, 2.0}}, 0.03).size() == 1);
  CHECK(single_linkage(pts, 10.0).size() == 1);
}

TEST_CASE("median nearest-neighbor distance on a uniform grid is the step") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= 30; ++i) pts.push_back({0.01 * i, 0.0});
  CHECK(median_nn_distance(pts) == doctest::Approx(0.01));
  CHECK(median_nn_distance({{1.0, 1.0}}) == 0.0);
}

TEST_CASE("local dimension tells segments, points and patches apart") {
  RandomStream jitter(RngSpec{7, 0});

  std::vector<std::vector<double>> segment;
  for (int i = 0; i < 200; ++i) {
    double t = -0.1 + 0.2 * (double(i) / 199.0);
    segment.push_back({t + 1e-6 * jitter.normal(), 1e-6 * jitter.normal(),
                       0.05 + 1e-6 * jitter.normal()});
  }
  CHECK(local_dim(segment, 10) == 1);

  std::vector<std::vector<double>> two_points;
  for (int i = 0; i < 50; ++i) {
    two_points.push_back({0.1, 0.2, 0.3});
    two_points.push_back({0.1, 0.2, 0.3 + 1e-9});
  }
  CHECK(local_dim(two_points, 10) == 0);

  std::vector<std::vector<double>> patch;
  for (int i = 0; i < 200; ++i) {
    double a = 0.2 * jitter.uniform() - 0.1, b = 0.2 * jitter.uniform() - 0.1;
    patch.push_back({a, b, 1e-6 * jitter.normal()});
  }
  CHECK(local_dim(patch, 10) == 2);

  CHECK_THROWS_AS(local_dim(std::vector<std::vector<double>>(5, {0.0, 0.0}), 10),
                  ClusterTooSmall);
}
