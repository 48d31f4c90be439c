#pragma once

#include <optional>
#include <string>
#include <utility>

#include "creg/module.hpp"
#include "creg/resolution.hpp"

namespace creg {

enum class RegStatus {
  Exact,
  /// Exact provided the ring is Koszul: the box value meets the upper bound
  /// reg^L(M) + reg^T(K) with reg^T(K) = 0.
  ExactIfKoszul,
  LowerBound,
  Unknown,
};

std::string to_string(RegStatus s);

struct RegularityValue {
  std::optional<int> value;
  RegStatus status = RegStatus::Unknown;
  std::string certificate;

  bool is_exact() const { return status == RegStatus::Exact || status == RegStatus::ExactIfKoszul; }
};

/// max(j - i) over the table; Exact for complete tables, otherwise a lower
/// bound. Throws EmptyTableError on an empty table.
RegularityValue tor_regularity(const BettiTable& table);

enum class Linearity { Yes, No, YesUpToCaps };

std::string to_string(Linearity l);

/// Whether every entry sits on slope q.
Linearity is_linear_resolution(const BettiTable& table, int q);

/// reg^T of a presented module together with the table it was read from.
/// The status is Exact when the resolution is known completely (over S, or
/// finite projective dimension over R), for free modules (largest twist),
/// and over rings with m^2 = 0, where every syzygy module is a K-vector space
/// sitting one degree above the generators, so reg^T is the largest
/// generator degree.
struct TorRegularityReport {
  BettiTable table;
  RegularityValue reg;
  std::optional<int> pd;
};

template <class F>
TorRegularityReport tor_regularity(PresentedPtr<F> m, int hom_cap, int degree_cap);

/// Default degree cap: largest generator degree plus 10.
template <class F>
int default_degree_cap(const GradedModule<F>& m);

struct KoszulReport {
  bool positive = false;  // no off-diagonal entry within the box
  int hom_cap = 0;
  int degree_cap = 0;
  std::optional<std::pair<int, int>> witness;  // first off-diagonal (i, j)
  BettiTable table;
};

/// Resolves K through the given box and looks for entries off the diagonal.
/// Requires a standard grading.
template <class F>
KoszulReport koszul_probe(RingPtr<F> ring, int hom_cap, int degree_cap);

}  // namespace creg
