#pragma once

// Seeded random homogeneous presentations, produced as text so the same
// module can be rebuilt over any coefficient field.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace creg {

struct RandomPresentation {
  std::vector<int> twists;
  std::vector<std::vector<std::string>> columns;
};

struct RandomPresentationOptions {
  int max_generators = 3;
  int max_relations = 4;
  int max_entry_degree = 2;
  int max_twist = 1;
  int coefficient_bound = 3;  // coefficients drawn from [-b, b]
};

/// Standard graded variables. Entries have degree between 1 and
/// max_entry_degree, so the module is never zero.
RandomPresentation random_presentation(const std::vector<std::string>& var_names, std::mt19937& rng,
                                       const RandomPresentationOptions& options = {});

}  // namespace creg
