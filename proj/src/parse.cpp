#include "milnorlab/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace milnorlab {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::SyntaxError: return "SyntaxError";
    case ParseErrorKind::UnknownVariable: return "UnknownVariable";
    case ParseErrorKind::MalformedExponent: return "MalformedExponent";
    case ParseErrorKind::DivisionByVariable: return "DivisionByVariable";
    case ParseErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ParseErrorKind::TargetExceedsSource: return "TargetExceedsSource";
    case ParseErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ParseErrorKind::MissingVars: return "MissingVars";
    case ParseErrorKind::BadNumber: return "BadNumber";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrorKind kind_, std::size_t position_, const std::string& detail)
    : Error(std::string(to_string(kind_)) + " at offset " + std::to_string(position_) + ": " +
            detail),
      kind(kind_),
      position(position_) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      cur_ = {Tok::End, start, ""};
      return;
    }
    char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      cur_ = {Tok::Number, start, src_.substr(start, i_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                  src_[i_] == '_'))
        ++i_;
      cur_ = {Tok::Ident, start, src_.substr(start, i_ - start)};
      return;
    }
    ++i_;
    switch (c) {
      case '+': cur_ = {Tok::Plus, start, "+"}; return;
      case '-': cur_ = {Tok::Minus, start, "-"}; return;
      case '*': cur_ = {Tok::Star, start, "*"}; return;
      case '^': cur_ = {Tok::Caret, start, "^"}; return;
      case '/': cur_ = {Tok::Slash, start, "/"}; return;
      case '(': cur_ = {Tok::LParen, start, "("}; return;
      case ')': cur_ = {Tok::RParen, start, ")"}; return;
      default:
        throw ParseError(ParseErrorKind::SyntaxError, start,
                         std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token cur_;
};

class ExprParser {
 public:
  ExprParser(const std::string& src, const std::vector<std::string>& vars)
      : lex_(src), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    const Token& t = lex_.peek();
    if (t.kind == Tok::Slash)
      throw ParseError(ParseErrorKind::DivisionByVariable, t.pos,
                       "'/' may only follow an integer literal inside a rational");
    if (t.kind != Tok::End)
      throw ParseError(ParseErrorKind::SyntaxError, t.pos, "unexpected token '" + t.text + "'");
    return p;
  }

 private:
  Poly expr() {
    Poly acc = term();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.take();
        acc += term();
      } else if (k == Tok::Minus) {
        lex_.take();
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::Star) {
        lex_.take();
        acc *= factor();
      } else if (t.kind == Tok::Slash) {
        throw ParseError(ParseErrorKind::DivisionByVariable, t.pos,
                         "'/' may only follow an integer literal inside a rational");
      } else if (t.kind == Tok::Number || t.kind == Tok::Ident || t.kind == Tok::LParen) {
        // "2x" and "x y": adjacency never multiplies.
        throw ParseError(ParseErrorKind::SyntaxError, t.pos,
                         "implicit multiplication is not allowed before '" + t.text + "'");
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly b = base();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      const Token t = lex_.peek();
      if (t.kind != Tok::Number)
        throw ParseError(ParseErrorKind::MalformedExponent, t.pos,
                         "exponent must be a natural number literal");
      lex_.take();
      unsigned long e = 0;
      try {
        e = std::stoul(t.text);
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::MalformedExponent, t.pos, "exponent out of range");
      }
      if (e > 100000)
        throw ParseError(ParseErrorKind::MalformedExponent, t.pos, "exponent out of range");
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  Poly base() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Minus:
        lex_.take();
        return -base();
      case Tok::Number:
        return rational();
      case Tok::Ident: {
        lex_.take();
        for (std::size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == t.text) return Poly::variable(vars_.size(), i);
        throw ParseError(ParseErrorKind::UnknownVariable, t.pos,
                         "unknown variable '" + t.text + "'");
      }
      case Tok::LParen: {
        lex_.take();
        Poly inner = expr();
        const Token& close = lex_.peek();
        if (close.kind == Tok::Slash)
          throw ParseError(ParseErrorKind::DivisionByVariable, close.pos,
                           "'/' may only follow an integer literal inside a rational");
        if (close.kind != Tok::RParen)
          throw ParseError(ParseErrorKind::SyntaxError, close.pos, "expected ')'");
        lex_.take();
        return inner;
      }
      default:
        throw ParseError(ParseErrorKind::SyntaxError, t.pos,
                         "expected a rational, variable, '(' or '-'");
    }
  }

  Poly rational() {
    Token num = lex_.take();
    if (lex_.peek().kind == Tok::Caret) {
      // "2^3": keep grammar uniform, a number is a base like any other.
      lex_.take();
      const Token t = lex_.peek();
      if (t.kind != Tok::Number)
        throw ParseError(ParseErrorKind::MalformedExponent, t.pos,
                         "exponent must be a natural number literal");
      lex_.take();
      unsigned long e = std::stoul(t.text);
      if (e > 100000)
        throw ParseError(ParseErrorKind::MalformedExponent, t.pos, "exponent out of range");
      return Poly::constant(vars_.size(), Rat::from_string(num.text).pow(static_cast<unsigned>(e)));
    }
    if (lex_.peek().kind != Tok::Slash)
      return Poly::constant(vars_.size(), Rat::from_string(num.text));
    lex_.take();
    const Token den = lex_.peek();
    if (den.kind != Tok::Number)
      throw ParseError(ParseErrorKind::DivisionByVariable, den.pos,
                       "denominator must be a positive integer literal");
    lex_.take();
    Rat d = Rat::from_string(den.text);
    if (d.is_zero())
      throw ParseError(ParseErrorKind::SyntaxError, den.pos, "denominator must be positive");
    return Poly::constant(vars_.size(), Rat::from_string(num.text) / d);
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Poly parse_poly(const std::string& src, const std::vector<std::string>& vars) {
  return ExprParser(src, vars).parse();
}

MapGerm parse_germ(const std::string& text) {
  std::vector<std::string> vars;
  std::vector<std::string> poly_srcs;
  std::optional<std::string> name;
  bool saw_vars = false;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip(line);
    if (body.empty() || body[0] == '#') continue;
    auto fail = [&](ParseErrorKind kind, const std::string& msg) {
      throw ParseError(kind, 0, "line " + std::to_string(line_no) + ": " + msg);
    };
    if (body.rfind("name:", 0) == 0) {
      name = strip(body.substr(5));
      continue;
    }
    if (body.rfind("vars:", 0) == 0) {
      if (saw_vars) fail(ParseErrorKind::SyntaxError, "repeated vars line");
      vars = split_ws(body.substr(5));
      if (vars.empty()) fail(ParseErrorKind::MissingVars, "vars line declares no variables");
      saw_vars = true;
      continue;
    }
    if (body.rfind("poly:", 0) == 0) {
      if (!saw_vars) fail(ParseErrorKind::MissingVars, "poly before vars");
      poly_srcs.push_back(strip(body.substr(5)));
      continue;
    }
    fail(ParseErrorKind::SyntaxError, "unrecognized directive");
  }
  if (!saw_vars) throw ParseError(ParseErrorKind::MissingVars, 0, "no vars line");
  if (poly_srcs.empty()) throw ParseError(ParseErrorKind::SyntaxError, 0, "no poly lines");

  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw ParseError(ParseErrorKind::DuplicateVariable, 0,
                         "variable '" + vars[i] + "' declared twice");
  if (poly_srcs.size() > vars.size())
    throw ParseError(ParseErrorKind::TargetExceedsSource, 0,
                     "more components than source variables");

  MapGerm g;
  g.vars = vars;
  g.name = name;
  for (const auto& src : poly_srcs) {
    Poly p = parse_poly(src, vars);
    if (!p.constant_term().is_zero())
      throw ParseError(ParseErrorKind::NonzeroConstantTerm, 0,
                       "component '" + src + "' does not vanish at the origin");
    g.components.push_back(std::move(p));
  }
  g.validate();
  return g;
}

MapGerm load_germ(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open germ file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_germ(buf.str());
}

std::string format_germ(const MapGerm& g) {
  std::string out;
  if (g.name) out += "name: " + *g.name + "\n";
  out += "vars:";
  for (const auto& v : g.vars) out += " " + v;
  out += "\n";
  for (const auto& c : g.components) out += "poly: " + c.str(g.vars) + "\n";
  return out;
}

void save_germ(const MapGerm& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write germ file: " + path);
  out << format_germ(g);
}

}  // namespace milnorlab
