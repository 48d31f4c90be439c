#pragma once

// Minimal graded free resolutions, built degree by degree. In each degree d
// the kernel K_d of the current map is computed, the part U_d generated by
// lower-degree kernel elements (sum over v of x_v K_{d-w_v}) is spanned, and
// kernel basis vectors independent modulo U_d become new generators of the
// next free module. Minimality follows because a new generator never lies in
// m * (kernel).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "creg/module.hpp"

namespace creg {

enum class ColumnStatus { Complete, Truncated };
enum class ResolutionBase { OverS, OverR };

/// Graded Betti numbers beta_{i,j} for 0 <= i <= hom_cap and j <= degree_cap.
/// A column marked Complete is known exactly in all degrees.
struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;  // nonzero (i, j) only
  int hom_cap = 0;
  int degree_cap = 0;
  std::vector<ColumnStatus> status;  // one per i in [0, hom_cap]
  ResolutionBase base = ResolutionBase::OverR;

  std::size_t at(int i, int j) const;
  std::size_t column_total(int i) const;
  bool empty() const { return entries.empty(); }
  bool all_complete() const;
  /// Largest i with a nonzero entry.
  std::optional<int> length() const;
  /// max over entries of j - i.
  std::optional<int> max_slope() const;
  /// Largest j with beta_{i,j} != 0 in column i.
  std::optional<int> max_degree(int i) const;
  std::optional<int> min_degree(int i) const;
  /// Macaulay2-style text: rows j - i, columns i, "." for zero.
  std::string render() const;

  friend bool operator==(const BettiTable& a, const BettiTable& b) {
    return a.entries == b.entries && a.hom_cap == b.hom_cap && a.degree_cap == b.degree_cap;
  }
};

template <class F>
class Resolution {
 public:
  using Elem = typename F::Elem;

  /// Resolves module through homological degree hom_cap: the free modules
  /// F_0..F_hom_cap and the maps out of each are built, kernels of the maps
  /// out of F_0..F_{hom_cap-1} are computed.
  Resolution(ModulePtr<F> module, int hom_cap);

  Resolution(const Resolution&) = delete;
  Resolution& operator=(const Resolution&) = delete;

  /// Extends every level through internal degree degree_cap.
  void extend_to(int degree_cap);

  int hom_cap() const { return hom_cap_; }
  /// Largest internal degree processed so far.
  int degree_cap() const { return next_degree_ - 1; }
  const GradedModule<F>& module() const { return *module_; }
  const ModulePtr<F>& module_ptr() const { return module_; }
  const RingPtr<F>& ring() const { return module_->ring(); }

  const FreeModule<F>& free_module(int level) const { return *free_[level]; }
  /// Level 0 is the augmentation F_0 -> M, level l >= 1 is F_l -> F_{l-1}.
  const FreeMap<F>& map(int level) const { return *maps_[level]; }

  /// dim of ker(map(level)) in degree d, for level < hom_cap.
  std::size_t kernel_dim(int level, int d) const;
  /// No kernel of map(level) was found in any processed degree.
  bool kernel_vanishes(int level) const;

  /// Betti numbers found so far; every column is marked Truncated.
  BettiTable betti() const;

 private:
  ModulePtr<F> module_;
  int hom_cap_;
  int next_degree_;
  std::vector<std::unique_ptr<FreeModule<F>>> free_;
  std::vector<std::unique_ptr<FreeMap<F>>> maps_;
  std::vector<std::map<int, Subspace<F>>> kernels_;
  std::vector<std::map<int, std::size_t>> kernel_dims_;
};

/// Compares the Hilbert function of M with the alternating Betti sum
/// sum_i (-1)^i sum_j beta_{i,j} HF(R)_{d-j} for lo <= d <= hi.
template <class F>
bool hilbert_certificate(const GradedModule<F>& m, const BettiTable& table, int lo, int hi);

/// A resolution of a module over a polynomial ring certified to be complete.
template <class F>
struct CompleteResolution {
  std::shared_ptr<Resolution<F>> resolution;
  int length = 0;
  BettiTable table;
};

/// Largest internal degree in which a minimal free resolution of M over a
/// polynomial ring can have a generator. Initial terms of the relations
/// (position over term, reverse lex within a degree) are collected degree by degree
/// until every pair in one component has its lcm inside the processed range,
/// at which point they form a Groebner basis. Betti numbers only drop when
/// passing from the initial module to M, and the Taylor resolution of the
/// initial module lives below the lcm of each component's initial terms.
template <class F>
int betti_degree_bound(const PresentedModule<F>& m, int max_degree = 200);

/// Resolves a module over a polynomial ring to the end: the resolution is
/// extended through betti_degree_bound and then checked against the Hilbert
/// function. Throws CapExhausted when the bound exceeds max_degree.
template <class F>
CompleteResolution<F> resolve_completely(PresentedPtr<F> module, int max_degree = 200);

/// Numerator sum_{i,j} (-1)^i beta_{i,j} t^j of the Hilbert series over the
/// polynomial ring; exact for a complete table.
using SeriesNumerator = std::map<int, long long>;
SeriesNumerator series_numerator(const BettiTable& table);
/// a += scale * b, dropping zero coefficients.
void add_series(SeriesNumerator& a, const SeriesNumerator& b, long long scale = 1);

struct PdReport {
  std::optional<int> pd;
  int hom_cap = 0;
  int degree_cap = 0;
  bool hilbert_certified = false;
};

/// Finite projective dimension is reported only when some level p has zero
/// kernel through the cap and resolution_is_exact certifies levels 0..p as a
/// resolution. The Hilbert certificate on the processed range is reported
/// separately.
template <class F>
PdReport pd_probe(ModulePtr<F> module, int hom_cap, int degree_cap);

/// Tor_i(M, K)_j computed as homology of M tensored with a resolution of the
/// residue field. residue must resolve K through level hom_cap + 1 and
/// internal degree degree_cap - M.lowest_degree().
template <class F>
BettiTable tor_via_residue_field(const GradedModule<F>& m, const Resolution<F>& residue, int hom_cap,
                                 int degree_cap);

}  // namespace creg
