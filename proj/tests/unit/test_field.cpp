#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "creg/errors.hpp"
#include "creg/field.hpp"
#include "creg/matrix.hpp"

using namespace creg;

namespace {

bool trial_division_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Size of the row space over GF(p), by enumerating every combination.
std::size_t span_size(const PrimeField& f, const DenseMatrix<PrimeField>& m) {
  std::set<std::vector<std::uint32_t>> seen;
  const std::uint32_t p = f.modulus();
  std::size_t combos = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) combos *= p;
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<std::uint32_t> v(m.cols(), 0);
    std::size_t c = code;
    for (std::size_t r = 0; r < m.rows(); ++r, c /= p)
      for (std::size_t k = 0; k < m.cols(); ++k) v[k] = f.add(v[k], f.mul(static_cast<std::uint32_t>(c % p), m(r, k)));
    seen.insert(v);
  }
  return seen.size();
}

mpz_class det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    mpz_class term = a[0][c] * det(minor);
    total += c % 2 == 0 ? term : mpz_class(-term);
  }
  return total;
}

// Largest size of a nonvanishing minor.
std::size_t minor_rank(const std::vector<std::vector<int>>& a) {
  const std::size_t rows = a.size(), cols = a[0].size();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (std::size_t rmask = 0; rmask < (1u << rows); ++rmask) {
      if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
      for (std::size_t cmask = 0; cmask < (1u << cols); ++cmask) {
        if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
        std::vector<std::vector<mpz_class>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!(rmask >> r & 1)) continue;
          std::vector<mpz_class> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (cmask >> c & 1) row.push_back(a[r][c]);
          sub.push_back(row);
        }
        if (det(sub) != 0) return k;
      }
    }
  }
  return 0;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("GF(7) axioms hold on every triple") {
    PrimeField f(7);
    for (std::uint32_t a = 0; a < 7; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < 7; ++b) {
        CHECK(f.add(a, b) == (a + b) % 7);
        CHECK(f.mul(a, b) == (a * b) % 7);
        CHECK(f.sub(a, b) == (a + 7 - b) % 7);
        for (std::uint32_t c = 0; c < 7; ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          std::uint32_t y = c;
          f.sub_mul(y, a, b);
          CHECK(y == f.sub(c, f.mul(a, b)));
        }
      }
    }
  }

  TEST_CASE("inverses in GF(101) and GF(32003)") {
    for (std::uint32_t p : {101u, 32003u}) {
      PrimeField f(p);
      for (std::uint32_t a = 1; a < p; a += (p > 1000 ? 97 : 1)) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }

  TEST_CASE("integer embedding reduces negatives") {
    PrimeField f(101);
    CHECK(f.from_int(-1) == 100);
    CHECK(f.from_int(205) == 3);
    CHECK(f.from_int(-303) == 0);
  }

  TEST_CASE("primality agrees with trial division") {
    for (std::uint32_t n = 0; n < 3000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
    CHECK(is_prime(32003));
  }

  TEST_CASE("non-prime moduli are rejected") { CHECK_THROWS_AS(PrimeField(100), Error); }

  TEST_CASE("rational arithmetic") {
    RationalField q;
    auto half = q.div(q.one(), q.from_int(2));
    CHECK(q.add(half, half) == q.one());
    CHECK(q.mul(q.inv(q.from_int(-3)), q.from_int(-3)) == q.one());
    CHECK(q.format(q.div(q.from_int(6), q.from_int(-4))) == "-3/2");
  }
}

TEST_SUITE("linear-algebra") {
  TEST_CASE("rank over GF(3) matches the size of the enumerated row space") {
    PrimeField f(3);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      DenseMatrix<PrimeField> m(rows, cols, f);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng() % 3;
      auto rk = rank(f, m);
      CHECK(span_size(f, m) == static_cast<std::size_t>(std::pow(3, rk)));
    }
  }

  TEST_CASE("rank over Q matches the largest nonvanishing minor") {
    RationalField q;
    std::mt19937 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
      std::vector<std::vector<int>> a(rows, std::vector<int>(cols));
      DenseMatrix<RationalField> m(rows, cols, q);
      // Low-rank products show up often enough to exercise the degenerate cases.
      const bool low = trial % 3 == 0;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          a[r][c] = low ? static_cast<int>((r + 1) * (c % 2 + 1)) : static_cast<int>(rng() % 7) - 3;
          m(r, c) = a[r][c];
        }
      CHECK(rank(q, m) == minor_rank(a));
    }
  }

  TEST_CASE("kernel basis: annihilated, independent, of complementary dimension") {
    PrimeField f(32003);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 7;
      DenseMatrix<PrimeField> m(rows, cols, f);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng() % 4 == 0 ? rng() % 32003 : 0;
      auto ker = kernel_basis(f, m);
      CHECK(ker.cols() == cols - rank(f, m));
      CHECK(is_zero_matrix(f, multiply(f, m, ker)));
      CHECK(rank(f, ker) == ker.cols());
    }
  }

  TEST_CASE("subspace residues are constant on cosets") {
    PrimeField f(101);
    std::mt19937 rng(14);
    Subspace<PrimeField> u(f, 6);
    std::vector<Vec<PrimeField>> gens;
    for (int i = 0; i < 3; ++i) {
      Vec<PrimeField> v(6);
      for (auto& e : v) e = rng() % 101;
      gens.push_back(v);
      u.insert(v);
    }
    CHECK(u.dim() == 3);
    CHECK_FALSE(u.insert(gens[0]));
    for (int trial = 0; trial < 20; ++trial) {
      Vec<PrimeField> v(6), w(6);
      for (auto& e : v) e = rng() % 101;
      w = v;
      for (const auto& g : gens) {
        auto c = static_cast<std::uint32_t>(rng() % 101);
        for (std::size_t k = 0; k < 6; ++k) w[k] = f.add(w[k], f.mul(c, g[k]));
      }
      CHECK(u.reduce(v) == u.reduce(w));
      for (std::size_t p : u.pivots()) CHECK(u.reduce(v)[p] == 0);
    }
    CHECK(u.free_positions().size() == 3);
  }

  TEST_CASE("solve_in_span finds coefficients or reports absence") {
    PrimeField f(7);
    auto b = DenseMatrix<PrimeField>::from_columns(f, 3, {{1, 0, 1}, {0, 1, 1}});
    std::vector<std::uint32_t> inside = {2, 3, 5}, outside = {1, 0, 0};
    auto c = solve_in_span(f, b, std::span<const std::uint32_t>(inside));
    REQUIRE(c);
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK_FALSE(solve_in_span(f, b, std::span<const std::uint32_t>(outside)));
  }
}
