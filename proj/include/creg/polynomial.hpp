#pragma once

// Monomials over a weighted set of variables, homogeneous polynomials, and
// the textual polynomial syntax used by instance files (`3*x1^2*x2 - y`).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "creg/errors.hpp"

namespace creg {

/// Exponent vector.
using Monomial = std::vector<int>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int e : m) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }
};

int weighted_degree(const Monomial& m, std::span<const int> weights);

Monomial monomial_product(const Monomial& a, const Monomial& b);

/// All monomials of weighted degree d, lexicographically descending (x1 > x2
/// > ...). Within a fixed degree this is graded-lex order.
std::vector<Monomial> monomials_of_degree(std::span<const int> weights, int d);

std::string format_monomial(const Monomial& m, std::span<const std::string> names);

/// Integer-coefficient polynomial straight from the parser.
struct IntPolynomial {
  std::vector<std::pair<Monomial, std::int64_t>> terms;
};

/// Parses `terms joined by + / -`, each term an optional integer coefficient
/// times `*`-separated factors `name` or `name^k`. column_offset and line are
/// folded into ParseError positions.
IntPolynomial parse_polynomial(std::string_view text, std::span<const std::string> var_names, int line = 1,
                               int column_offset = 0);

/// Homogeneous polynomial with coefficients in F, terms sorted graded-lex
/// descending, no zero coefficients. The zero polynomial has no degree.
template <class F>
struct Polynomial {
  using Elem = typename F::Elem;
  std::vector<std::pair<Monomial, Elem>> terms;
  std::optional<int> degree;

  bool is_zero() const { return terms.empty(); }
};

template <class F>
Polynomial<F> to_field(const F& field, const IntPolynomial& p, std::span<const int> weights) {
  std::map<Monomial, typename F::Elem, std::greater<>> acc;
  for (const auto& [m, c] : p.terms) {
    auto it = acc.find(m);
    if (it == acc.end())
      acc.emplace(m, field.from_int(c));
    else
      it->second = field.add(it->second, field.from_int(c));
  }
  Polynomial<F> out;
  for (auto& [m, c] : acc) {
    if (field.is_zero(c)) continue;
    int d = weighted_degree(m, weights);
    if (out.degree && *out.degree != d) throw InvalidInput("polynomial is not homogeneous");
    out.degree = d;
    out.terms.emplace_back(m, c);
  }
  return out;
}

template <class F>
std::string format_polynomial(const F& field, const Polynomial<F>& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms) {
    std::string coeff = field.format(c);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = format_monomial(m, names);
    if (mono == "1")
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace creg
