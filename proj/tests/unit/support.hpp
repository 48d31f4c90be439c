#pragma once

#include <random>
#include <string>
#include <vector>

#include "creg/constructions.hpp"
#include "creg/field.hpp"
#include "creg/ring.hpp"

namespace testing {

using creg::PrimeField;
using creg::RationalField;
using Ring = creg::RingPtr<PrimeField>;
using Module = creg::PresentedPtr<PrimeField>;

inline Ring poly(std::vector<std::string> vars, PrimeField f = PrimeField()) {
  return creg::GradedRing<PrimeField>::polynomial_ring(f, std::move(vars));
}

inline Ring quotient(std::vector<std::string> vars, const std::vector<std::string>& ideal,
                     PrimeField f = PrimeField()) {
  std::vector<int> w(vars.size(), 1);
  return creg::GradedRing<PrimeField>::create(f, std::move(vars), std::move(w), ideal);
}

inline Ring square_zero() { return quotient({"x", "y"}, {"x^2", "x*y", "y^2"}); }
inline Ring node() { return quotient({"x", "y"}, {"x*y"}); }
inline Ring ci_quadrics() { return quotient({"x", "y", "z"}, {"x^2", "y^2"}); }

inline Module coker(const Ring& r, std::vector<int> twists, std::vector<std::vector<std::string>> cols) {
  return creg::PresentedModule<PrimeField>::parse(r, std::move(twists), cols);
}

inline long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// dim of the degree-d piece of a standard graded polynomial ring in n variables.
inline long poly_dim(int n, int d) { return d < 0 ? 0 : binomial(d + n - 1, n - 1); }

}  // namespace testing
