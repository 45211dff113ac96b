#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "milnorlab/errors.hpp"
#include "milnorlab/rat.hpp"

namespace milnorlab {

// Exponent vector; length is the ambient variable count.
struct Mono {
  std::vector<std::uint32_t> e;

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
  }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

// Graded lexicographic order, descending (leading term first when iterating).
// Higher total degree sorts first; ties break lexicographically with the
// earliest variable dominating.
struct GrlexDesc {
  bool operator()(const Mono& a, const Mono& b) const {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

// Multivariate polynomial with exact rational coefficients in canonical form:
// no explicit zero coefficients, terms keyed by exponent vector in graded-lex
// order. Values are immutable from the callers' perspective; all ops return
// fresh polynomials.
class Poly {
 public:
  static constexpr std::size_t kTermBudget = 1000000;

  using TermMap = std::map<Mono, Rat, GrlexDesc>;

  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Mono{std::vector<std::uint32_t>(nvars, 0)}, c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionMismatch("variable index out of range");
    Mono m{std::vector<std::uint32_t>(nvars, 0)};
    m.e[i] = 1;
    Poly p(nvars);
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Total degree; 0 for the zero polynomial.
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  Rat constant_term() const {
    Mono one{std::vector<std::uint32_t>(nvars_, 0)};
    auto it = terms_.find(one);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Mono& m, const Rat& c) {
    if (m.e.size() != nvars_) throw DimensionMismatch("monomial arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    if (terms_.size() > kTermBudget) throw TermBudgetExceeded("polynomial term budget exceeded");
  }

  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Poly& operator+=(const Poly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_arity(b);
    // Collapsing may shrink the result, but the budget guards the blowup case.
    if (a.term_count() * b.term_count() > 4 * kTermBudget)
      throw TermBudgetExceeded("product term budget exceeded");
    Poly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m{ma.e};
        for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] += mb.e[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rat& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }

  Poly pow(unsigned e) const {
    Poly acc = Poly::constant(nvars_, Rat(1));
    Poly base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly partial(std::size_t var) const {
    if (var >= nvars_) throw DimensionMismatch("partial: variable index out of range");
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.e[var] == 0) continue;
      Mono d{m.e};
      d.e[var] -= 1;
      r.terms_.emplace(std::move(d), c * Rat(static_cast<long>(m.e[var])));
    }
    return r;
  }

  Rat eval(std::span<const Rat> x) const {
    if (x.size() != nvars_) throw DimensionMismatch("eval: point arity mismatch");
    Rat sum(0);
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.e[i]) t *= x[i].pow(m.e[i]);
      sum += t;
    }
    return sum;
  }

  // Degree-ordered accumulation over cached coordinate powers.
  double eval_double(std::span<const double> x) const {
    if (x.size() != nvars_) throw DimensionMismatch("eval: point arity mismatch");
    std::vector<std::vector<double>> pw(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      std::uint32_t maxe = 0;
      for (const auto& [m, c] : terms_) maxe = std::max(maxe, m.e[i]);
      pw[i].resize(maxe + 1);
      pw[i][0] = 1.0;
      for (std::uint32_t k = 1; k <= maxe; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c.to_double();
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.e[i]) t *= pw[i][m.e[i]];
      sum += t;
    }
    return sum;
  }

  // Substitute entry i of `images` for variable i. Images share an arity.
  Poly substitute(std::span<const Poly> images) const {
    if (images.size() != nvars_) throw DimensionMismatch("substitute: image count mismatch");
    std::size_t out_vars = images.empty() ? 0 : images[0].nvars();
    for (const auto& g : images)
      if (g.nvars() != out_vars) throw DimensionMismatch("substitute: images disagree on arity");
    Poly sum(out_vars);
    for (const auto& [m, c] : terms_) {
      Poly t = Poly::constant(out_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.e[i]) t = t * images[i].pow(m.e[i]);
      sum += t;
    }
    return sum;
  }

  // Canonical rendering, graded-lex descending: "x*y^2 + 2*x*z", "-x^4 - 2", "0".
  std::string str(std::span<const std::string> var_names) const;

 private:
  void check_arity(const Poly& o) const {
    if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial arity mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

std::string format_monomial(const Mono& m, std::span<const std::string> var_names);

}  // namespace milnorlab
