#include <doctest.h>

#include <random>

#include "creg/errors.hpp"
#include "creg/random.hpp"
#include "creg/resolution.hpp"
#include "support.hpp"

using namespace creg;
using namespace testing;

namespace {

Module random_module(const Ring& r, std::mt19937& rng) {
  auto p = random_presentation(r->var_names(), rng);
  return coker(r, p.twists, p.columns);
}

void check_exact_and_minimal(const Resolution<PrimeField>& res, int degree_cap) {
  const auto& f = res.ring()->field();
  const int h = res.hom_cap();
  for (int d = res.module().lowest_degree(); d <= degree_cap; ++d) {
    CHECK(rank(f, res.map(0).matrix(d)) == res.module().dim(d));
    for (int l = 1; l <= h; ++l)
      CHECK(is_zero_matrix(f, multiply(f, res.map(l - 1).matrix(d), res.map(l).matrix(d))));
    for (int l = 0; l < h; ++l) CHECK(rank(f, res.map(l + 1).matrix(d)) == res.kernel_dim(l, d));
  }
  // Minimal: no generator maps onto a unit multiple of a generator one step down.
  for (int l = 1; l <= h; ++l) {
    const auto& src = res.free_module(l);
    const auto& dst = res.free_module(l - 1);
    for (std::size_t k = 0; k < src.rank(); ++k) {
      const int a = src.twists()[k];
      const auto& img = res.map(l).image(k);
      for (std::size_t g = 0; g < dst.rank(); ++g)
        if (dst.twists()[g] == a) CHECK(res.ring()->is_zero(dst.component(img, a, g)));
    }
  }
}

}  // namespace

TEST_SUITE("resolution") {
  TEST_CASE("Koszul complexes over polynomial rings") {
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::string> vars;
      for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
      auto s = poly(vars);
      auto c = resolve_completely<PrimeField>(residue_field<PrimeField>(s));
      CHECK(c.length == n);
      for (int i = 0; i <= n; ++i) CHECK(static_cast<long>(c.table.at(i, i)) == binomial(n, i));
      CHECK(c.table.all_complete());
      CHECK(c.table.max_slope() == 0);
    }
  }

  TEST_CASE("known tables") {
    // S/(x^2, y^2): 1; 2 in degree 2; 1 in degree 4.
    auto s = poly({"x", "y"});
    auto ci = resolve_completely<PrimeField>(coker(s, {0}, {{"x^2"}, {"y^2"}}));
    CHECK(ci.table.at(0, 0) == 1);
    CHECK(ci.table.at(1, 2) == 2);
    CHECK(ci.table.at(2, 4) == 1);
    CHECK(ci.table.max_slope() == 2);

    // K over K[x]/(x^3): 1, 1, 1, ... in degrees 0, 1, 3, 4, 6, ...
    auto cubic = quotient({"x"}, {"x^3"});
    Resolution<PrimeField> res(residue_field<PrimeField>(cubic), 4);
    res.extend_to(8);
    auto t = res.betti();
    std::vector<std::pair<int, int>> expect = {{0, 0}, {1, 1}, {2, 3}, {3, 4}, {4, 6}};
    for (auto [i, j] : expect) CHECK(t.at(i, j) == 1);
    CHECK(t.column_total(4) == 1);

    // K over the square-zero ring: 2^i, linear.
    Resolution<PrimeField> sq(residue_field<PrimeField>(square_zero()), 5);
    sq.extend_to(7);
    for (int i = 0; i <= 5; ++i) CHECK(sq.betti().at(i, i) == (1u << i));
  }

  TEST_CASE("resolutions are exact and minimal") {
    std::mt19937 rng(41);
    for (const auto& r : {poly({"x", "y", "z"}), node(), ci_quadrics(), square_zero()}) {
      for (int trial = 0; trial < 3; ++trial) {
        auto m = random_module(r, rng);
        Resolution<PrimeField> res(m, 3);
        const int cap = m->generator_bound() + 5;
        res.extend_to(cap);
        check_exact_and_minimal(res, cap);
      }
    }
  }

  TEST_CASE("Hilbert certificate on complete resolutions") {
    std::mt19937 rng(42);
    for (const auto& s : {poly({"x", "y"}), poly({"x", "y", "z"})}) {
      for (int trial = 0; trial < 6; ++trial) {
        auto m = random_module(s, rng);
        auto c = resolve_completely<PrimeField>(m);
        CHECK(hilbert_certificate(*m, c.table, m->lowest_degree(), m->generator_bound() + 12));
        // A perturbed table fails it.
        auto bad = c.table;
        bad.entries[{0, m->lowest_degree()}] += 1;
        CHECK_FALSE(hilbert_certificate(*m, bad, m->lowest_degree(), m->generator_bound() + 12));
      }
    }
  }

  TEST_CASE("Betti numbers agree with Tor computed through the residue field") {
    std::mt19937 rng(43);
    for (const auto& r : {poly({"x", "y"}), node(), ci_quadrics(), square_zero()}) {
      const int h = 3;
      const int cap = 7;
      Resolution<PrimeField> kres(residue_field<PrimeField>(r), h + 1);
      kres.extend_to(cap + 2);
      for (int trial = 0; trial < 3; ++trial) {
        auto m = random_module(r, rng);
        Resolution<PrimeField> res(m, h);
        res.extend_to(cap);
        auto direct = res.betti();
        auto tor = tor_via_residue_field<PrimeField>(*m, kres, h, cap);
        for (int i = 0; i <= h; ++i)
          for (int j = m->lowest_degree(); j <= cap; ++j) CHECK(direct.at(i, j) == tor.at(i, j));
      }
    }
  }

  TEST_CASE("twisting shifts the table") {
    std::mt19937 rng(44);
    auto r = node();
    for (int trial = 0; trial < 4; ++trial) {
      auto p = random_presentation(r->var_names(), rng);
      auto m = coker(r, p.twists, p.columns);
      auto shifted_twists = p.twists;
      for (int& t : shifted_twists) t += 3;
      auto n = coker(r, shifted_twists, p.columns);
      Resolution<PrimeField> a(m, 3), b(n, 3);
      a.extend_to(6);
      b.extend_to(9);
      for (const auto& [ij, v] : a.betti().entries) CHECK(b.betti().at(ij.first, ij.second + 3) == v);
      CHECK(a.betti().entries.size() == b.betti().entries.size());
    }
  }

  TEST_CASE("projective dimension probe") {
    auto r = node();
    auto line = coker(r, {0}, {{"x + y"}});
    auto pd = pd_probe<PrimeField>(line, 6, 8);
    REQUIRE(pd.pd);
    CHECK(*pd.pd == 1);
    CHECK(pd.hilbert_certified);
    CHECK_FALSE(pd_probe<PrimeField>(residue_field<PrimeField>(r), 6, 8).pd);
    CHECK(*pd_probe<PrimeField>(free_module<PrimeField>(r, {2}), 4, 6).pd == 0);
    // Before the relation is reached nothing is certified.
    CHECK_FALSE(pd_probe<PrimeField>(line, 6, 0).pd);
  }

  TEST_CASE("a second syzygy far above the relations is found") {
    // Finite length, relations in degrees 2 and 3, top degree well above them.
    auto m = coker(poly({"x", "y"}), {1, 1, 1},
                   {{"-3*x^2 + x*y + y^2", "x^2 + x*y - y^2", "3*y^2"},
                    {"3*x^2 - 3*x*y - 2*y^2", "3*x^2 - 3*x*y + 2*y^2", "3*x^2 + 3*x*y + 3*y^2"},
                    {"3*x + 3*y", "x + 2*y", "x"},
                    {"2*x^2 + 2*x*y + 3*y^2", "2*x^2 - 2*x*y - y^2", "3*x^2 - 2*x*y"}});
    const int top = *top_degree(*m);
    CHECK(top > m->max_relation_degree() + 2);
    auto c = resolve_completely<PrimeField>(m);
    CHECK(c.length == 2);
    CHECK(*c.table.max_slope() == top);
    CHECK(c.table.at(2, top + 2) == 1);
    CHECK(betti_degree_bound(*m) >= top + 2);
  }

  TEST_CASE("Hilbert series numerators") {
    auto ci = coker(poly({"x", "y"}), {0}, {{"x^2"}, {"y^2"}});
    CHECK(hilbert_numerator<PrimeField>(ci) == SeriesNumerator{{0, 1}, {2, -2}, {4, 1}});
    CHECK(hilbert_numerator<PrimeField>(ring_module<PrimeField>(node())) == SeriesNumerator{{0, 1}, {2, -1}});
    SeriesNumerator a{{0, 1}, {1, 2}};
    add_series(a, {{1, 2}, {3, 1}}, -1);
    CHECK(a == SeriesNumerator{{0, 1}, {3, -1}});
  }

  TEST_CASE("exactness certificate for finite resolutions") {
    auto line = coker(node(), {0}, {{"x + y"}});
    Resolution<PrimeField> res(line, 3);
    res.extend_to(0);
    CHECK_FALSE(resolution_is_exact(res, 1));
    res.extend_to(4);
    CHECK(resolution_is_exact(res, 1));
    CHECK_FALSE(resolution_is_exact(res, 0));
    Resolution<PrimeField> k(residue_field<PrimeField>(node()), 3);
    k.extend_to(6);
    CHECK_FALSE(resolution_is_exact(k, 2));
  }

  TEST_CASE("rendering") {
    auto s = poly({"x", "y"});
    auto c = resolve_completely<PrimeField>(residue_field<PrimeField>(s));
    auto text = c.table.render();
    CHECK(text.find("total:") != std::string::npos);
    CHECK(text.find("1 2 1") != std::string::npos);
  }
}
