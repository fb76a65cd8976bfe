#ifndef NONARCH_TOOLS_EXPR_HPP
#define NONARCH_TOOLS_EXPR_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nonarch/error.hpp"
#include "nonarch/multipoly.hpp"
#include "nonarch/polynomial.hpp"
#include "nonarch/rational.hpp"

namespace nonarch::cli {

/// Recursive-descent parser for polynomial expressions with exact rational
/// coefficients. Grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' digits)?
///   atom   := digits | ident | '(' expr ')'
///
/// An identifier is one letter followed by digits, so "xy" is x*y and "x1"
/// is a single variable. Division is only allowed by nonzero constants.
/// Decimal points and other stray characters are parse errors.
class ExprParser {
 public:
  ExprParser(std::string_view text, std::vector<std::string> vars) : text_(text), vars_(std::move(vars)) {}

  MultiPoly parse() {
    MultiPoly r = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  std::string_view text_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  MultiPoly expr() {
    MultiPoly r = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      MultiPoly t = term();
      r = c == '+' ? r + t : r - t;
    }
    return r;
  }

  static bool starts_atom(char c) { return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '('; }

  MultiPoly term() {
    MultiPoly r = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        r = r * unary();
      } else if (c == '/') {
        ++pos_;
        const MultiPoly d = unary();
        if (d.total_degree() != 0 || d.is_zero()) error("division by a non-constant or zero expression");
        r = d.coeff(Exponent(vars_.size(), 0u)).inverse() * r;
      } else if (starts_atom(c)) {
        r = r * power();
      } else {
        return r;
      }
    }
  }

  MultiPoly unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return Rational(-1) * unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("exponent must be a non-negative integer literal");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4) error("exponent too large");
    const unsigned e = static_cast<unsigned>(std::stoul(digits));
    MultiPoly r = MultiPoly::constant(vars_.size(), 1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
  }

  MultiPoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly r = expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
        error("floating-point literals are not accepted");
      return MultiPoly::constant(vars_.size(), Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MultiPoly::variable(vars_.size(), i);
      error("unknown variable '" + name + "'");
    }
    if (c == '\0') error("unexpected end of input");
    error("unexpected '" + std::string(1, c) + "'");
  }
};

/// Identifiers occurring in `text`, in order of first appearance.
inline std::vector<std::string> identifiers(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    std::string name(text.substr(i, j - i));
    bool seen = false;
    for (const auto& s : out) seen = seen || s == name;
    if (!seen) out.push_back(std::move(name));
    i = j;
  }
  return out;
}

inline MultiPoly parse_multi(std::string_view text, const std::vector<std::string>& vars) {
  return ExprParser(text, vars).parse();
}

/// Univariate parse; the variable is whichever single identifier appears
/// (T if none does).
inline Polynomial parse_univariate(std::string_view text) {
  const auto ids = identifiers(text);
  if (ids.size() > 1) fail(ErrorCode::ParseError, "more than one variable in '" + std::string(text) + "'");
  const MultiPoly m = parse_multi(text, {ids.empty() ? std::string("T") : ids.front()});
  std::vector<Rational> c;
  for (const auto& [e, v] : m.terms()) {
    if (c.size() <= e[0]) c.resize(e[0] + 1);
    c[e[0]] = v;
  }
  return Polynomial(std::move(c));
}

}  // namespace nonarch::cli

#endif  // NONARCH_TOOLS_EXPR_HPP
