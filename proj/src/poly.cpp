#include "milnorlab/poly.hpp"

namespace milnorlab {

std::string format_monomial(const Mono& m, std::span<const std::string> var_names) {
  std::string out;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += var_names[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

std::string Poly::str(std::span<const std::string> var_names) const {
  if (var_names.size() != nvars_) throw DimensionMismatch("str: variable name count mismatch");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat mag = c.sign() < 0 ? -c : c;
    bool lead_negative = first && c.sign() < 0;
    if (first) {
      if (lead_negative) out += "-";
      first = false;
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    std::string mono = format_monomial(m, var_names);
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rat(1)) {
      // A leading "-" is a unary minus, and the grammar binds '^' tighter
      // than it ("-x^2" reads as (-x)^2). Spell the coefficient out whenever
      // the first factor carries an exponent so the rendering round-trips.
      bool first_factor_powered = mono.find('^') < mono.find('*');
      if (lead_negative && first_factor_powered)
        out += "1*" + mono;
      else
        out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace milnorlab
