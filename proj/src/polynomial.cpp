#include "creg/polynomial.hpp"

#include <cctype>
#include <functional>

namespace creg {

int weighted_degree(const Monomial& m, std::span<const int> weights) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * weights[i];
  return d;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<Monomial> monomials_of_degree(std::span<const int> weights, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  const std::size_t n = weights.size();
  Monomial cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int remaining) {
    if (var + 1 == n) {
      if (remaining % weights[var] == 0) {
        cur[var] = remaining / weights[var];
        out.push_back(cur);
      }
      return;
    }
    for (int e = remaining / weights[var]; e >= 0; --e) {
      cur[var] = e;
      rec(var + 1, remaining - e * weights[var]);
    }
    cur[var] = 0;
  };
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(0, d);
  return out;
}

std::string format_monomial(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names, int line, int col0)
      : s_(text), names_(names), line_(line), col0_(col0) {}

  IntPolynomial parse() {
    IntPolynomial out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (consume_sign(sign)) {
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out.terms.push_back(parse_term(sign));
      first = false;
      skip_ws();
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume_sign(int& sign) {
    if (at_end()) return false;
    if (s_[pos_] == '+') {
      ++pos_;
      return true;
    }
    if (s_[pos_] == '-') {
      sign = -1;
      ++pos_;
      return true;
    }
    // U+2212 MINUS SIGN
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      sign = -1;
      pos_ += 3;
      return true;
    }
    return false;
  }

  std::int64_t parse_int() {
    std::int64_t v = 0;
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (std::int64_t{1} << 53)) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return v;
  }

  std::pair<Monomial, std::int64_t> parse_term(int sign) {
    Monomial m(names_.size(), 0);
    std::int64_t coeff = sign;
    bool need_factor = true;
    while (need_factor) {
      skip_ws();
      if (at_end()) fail("expected factor");
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_int();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        std::size_t idx = 0;
        while (idx < names_.size() && names_[idx] != name) ++idx;
        if (idx == names_.size()) {
          pos_ = start;
          fail("unknown variable '" + std::string(name) + "'");
        }
        int e = 1;
        skip_ws();
        if (!at_end() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          e = static_cast<int>(parse_int());
        }
        m[idx] += e;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_ws();
      need_factor = !at_end() && s_[pos_] == '*';
      if (need_factor) ++pos_;
    }
    return {m, coeff};
  }

  std::string_view s_;
  std::span<const std::string> names_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPolynomial parse_polynomial(std::string_view text, std::span<const std::string> var_names, int line,
                               int column_offset) {
  return PolyParser(text, var_names, line, column_offset).parse();
}

}  // namespace creg
