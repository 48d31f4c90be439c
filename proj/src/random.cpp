#include "creg/random.hpp"

#include <algorithm>
#include <sstream>

#include "creg/polynomial.hpp"

namespace creg {

namespace {

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string random_form(const std::vector<std::string>& names, int degree, std::mt19937& rng, int bound) {
  std::vector<int> weights(names.size(), 1);
  std::ostringstream os;
  bool first = true;
  for (const auto& m : monomials_of_degree(weights, degree)) {
    int c = uniform(rng, -bound, bound);
    if (c == 0) continue;
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    os << std::abs(c) << "*" << format_monomial(m, names);
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

RandomPresentation random_presentation(const std::vector<std::string>& var_names, std::mt19937& rng,
                                       const RandomPresentationOptions& o) {
  RandomPresentation p;
  const int gens = uniform(rng, 1, o.max_generators);
  for (int i = 0; i < gens; ++i) p.twists.push_back(uniform(rng, 0, o.max_twist));
  const int lo = *std::max_element(p.twists.begin(), p.twists.end()) + 1;
  const int hi = *std::min_element(p.twists.begin(), p.twists.end()) + o.max_entry_degree;
  const int rels = uniform(rng, 1, o.max_relations);
  for (int r = 0; r < rels; ++r) {
    const int c = uniform(rng, lo, std::max(lo, hi));
    std::vector<std::string> col;
    bool nonzero;
    do {
      col.clear();
      nonzero = false;
      for (int a : p.twists) {
        const int e = c - a;
        col.push_back(e >= 1 && e <= o.max_entry_degree ? random_form(var_names, e, rng, o.coefficient_bound) : "0");
        nonzero = nonzero || col.back() != "0";
      }
    } while (!nonzero);
    p.columns.push_back(std::move(col));
  }
  return p;
}

}  // namespace creg
