#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "milnorlab/parse.hpp"

using namespace milnorlab;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  return Rat(num(rng), den(rng));
}

Poly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg) {
  std::uniform_int_distribution<int> nterms(1, 8);
  std::uniform_int_distribution<unsigned> expo(0, max_deg);
  Poly p = Poly::constant(nvars, Rat(0));
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Mono m;
    m.e.assign(nvars, 0);
    unsigned budget = max_deg;
    for (std::size_t v = 0; v < nvars; ++v) {
      unsigned e = expo(rng) % (budget + 1);
      m.e[v] = e;
      budget -= e;
    }
    p.add_term(m, random_rat(rng));
  }
  return p;
}

// Catch a ParseError and hand back (kind, position) for compact checks.
struct Caught {
  ParseErrorKind kind;
  std::size_t pos;
};

template <typename Fn>
Caught catch_parse(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return {e.kind, e.position};
  }
  FAIL("expected a ParseError");
  return {ParseErrorKind::SyntaxError, 0};
}

}  // namespace

TEST_CASE("expressions build the expected polynomials") {
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);

  CHECK(parse_poly("y^4 - z^2*x^2 - x^4", XYZ) ==
        y.pow(4) - z.pow(2) * x.pow(2) - x.pow(4));
  CHECK(parse_poly("0", XYZ).is_zero());
  CHECK(parse_poly("0", XYZ).nvars() == 3);

  std::vector<std::string> UV = {"u", "v"};
  Poly u = Poly::variable(2, 0), v = Poly::variable(2, 1);
  CHECK(parse_poly("(u+v)^2 - 2*u*v", UV) == u.pow(2) + v.pow(2));

  CHECK(parse_poly("3/4*x^2", XYZ) == x.pow(2).scaled(Rat(3, 4)));
  CHECK(parse_poly("-5/10", XYZ) == Poly::constant(3, Rat(-1, 2)));
  CHECK(parse_poly("2^3", XYZ) == Poly::constant(3, Rat(8)));
  CHECK(parse_poly("2^3*x", XYZ) == x.scaled(Rat(8)));
  CHECK(parse_poly("--x", XYZ) == x);
  CHECK(parse_poly("-(x - y)", XYZ) == y - x);
}

TEST_CASE("whitespace never changes the result") {
  CHECK(parse_poly(" y ^ 4 - z ^ 2 * x ^ 2\t- x ^ 4 ", XYZ) ==
        parse_poly("y^4-z^2*x^2-x^4", XYZ));
  CHECK(parse_poly("1 / 2 * x", XYZ) == parse_poly("1/2*x", XYZ));
}

TEST_CASE("error kinds carry the offset of the offending token") {
  auto at = [&](const std::string& src) {
    return catch_parse([&] { parse_poly(src, XYZ); });
  };

  Caught c = at("x + w");
  CHECK(c.kind == ParseErrorKind::UnknownVariable);
  CHECK(c.pos == 4);

  c = at("x^y");
  CHECK(c.kind == ParseErrorKind::MalformedExponent);
  CHECK(c.pos == 2);

  c = at("x^(2)");
  CHECK(c.kind == ParseErrorKind::MalformedExponent);
  CHECK(c.pos == 2);

  c = at("x^100001");
  CHECK(c.kind == ParseErrorKind::MalformedExponent);
  CHECK(c.pos == 2);

  c = at("2x");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 1);

  c = at("x y");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 2);

  c = at("(x");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 2);

  c = at("x @ y");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 2);

  c = at("1/x");
  CHECK(c.kind == ParseErrorKind::DivisionByVariable);
  CHECK(c.pos == 2);

  c = at("x/2");
  CHECK(c.kind == ParseErrorKind::DivisionByVariable);
  CHECK(c.pos == 1);

  c = at("(x+y)/2");
  CHECK(c.kind == ParseErrorKind::DivisionByVariable);
  CHECK(c.pos == 5);

  c = at("1/0");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 2);

  c = at("");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 0);

  c = at("x + y )");
  CHECK(c.kind == ParseErrorKind::SyntaxError);
  CHECK(c.pos == 6);
}

TEST_CASE("germ files: directives, metadata, comments") {
  MapGerm g = parse_germ(
      "# a comment\n"
      "name: demo\n"
      "vars: x y\n"
      "# another comment\n"
      "poly: x\n"
      "poly: x*y\n");
  CHECK(g.source_dim() == 2);
  CHECK(g.target_dim() == 2);
  REQUIRE(g.name.has_value());
  CHECK(*g.name == "demo");
  std::vector<std::string> XY = {"x", "y"};
  CHECK(g.components[0] == parse_poly("x", XY));
  CHECK(g.components[1] == parse_poly("x*y", XY));

  MapGerm again = parse_germ(format_germ(g));
  CHECK(again.vars == g.vars);
  CHECK(again.name == g.name);
  CHECK(again.components[0] == g.components[0]);
  CHECK(again.components[1] == g.components[1]);
}

TEST_CASE("germ files reject contract violations") {
  auto kind_of = [](const std::string& text) {
    return catch_parse([&] { parse_germ(text); }).kind;
  };

  CHECK(kind_of("vars: x\npoly: x + 1\n") == ParseErrorKind::NonzeroConstantTerm);
  CHECK(kind_of("vars: x\npoly: x\npoly: x\n") == ParseErrorKind::TargetExceedsSource);
  CHECK(kind_of("vars: x x\npoly: x\n") == ParseErrorKind::DuplicateVariable);
  CHECK(kind_of("poly: x\n") == ParseErrorKind::MissingVars);
  CHECK(kind_of("name: only\n") == ParseErrorKind::MissingVars);
  CHECK(kind_of("vars:\npoly: x\n") == ParseErrorKind::MissingVars);
  CHECK(kind_of("vars: x\n") == ParseErrorKind::SyntaxError);       // no poly lines
  CHECK(kind_of("vars: x\nvars: y\npoly: x\n") == ParseErrorKind::SyntaxError);
  CHECK(kind_of("vars: x\nbogus: 1\npoly: x\n") == ParseErrorKind::SyntaxError);
}

TEST_CASE("the four reference germs survive a format round trip") {
  const char* texts[] = {
      "name: act\nvars: x y z\npoly: y^4 - z^2*x^2 - x^4\npoly: x*y\n",
      "name: sabbah\nvars: x y z\npoly: x^2 - y^2*z\npoly: y\n",
      "name: square\nvars: u v\npoly: u^2 - v^2\npoly: 2*u*v\n",
      "name: xy\nvars: x y\npoly: x\npoly: x*y\n",
  };
  for (const char* text : texts) {
    MapGerm g = parse_germ(text);
    MapGerm h = parse_germ(format_germ(g));
    CHECK(h.vars == g.vars);
    CHECK(h.name == g.name);
    REQUIRE(h.components.size() == g.components.size());
    for (std::size_t i = 0; i < g.components.size(); ++i)
      CHECK(h.components[i] == g.components[i]);
  }
}

TEST_CASE("round trip holds for 500 random germs") {
  std::mt19937_64 rng(77031);
  const std::vector<std::string> pool = {"x", "y", "z", "w"};
  std::uniform_int_distribution<std::size_t> pick_m(1, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t m = pick_m(rng);
    std::uniform_int_distribution<std::size_t> pick_p(1, m);
    std::size_t p = pick_p(rng);

    MapGerm g;
    g.vars.assign(pool.begin(), pool.begin() + static_cast<long>(m));
    for (std::size_t i = 0; i < p; ++i) {
      Poly c = random_poly(rng, m, 6);
      c -= Poly::constant(m, c.constant_term());  // germs fix the origin
      g.components.push_back(c);
    }
    g.validate();

    MapGerm h = parse_germ(format_germ(g));
    CHECK(h.vars == g.vars);
    REQUIRE(h.components.size() == g.components.size());
    for (std::size_t i = 0; i < p; ++i) CHECK(h.components[i] == g.components[i]);
  }
}
