#pragma once

// Local cohomology through graded local duality over S = K[x_1..x_n]:
//   H^i_m(M)_j  ~  (Ext^{n-i}_S(M, S(-sigma))_{-j})^*
// where sigma is the sum of the variable weights. Ext is the cohomology of
// the dual of a complete minimal S-resolution F of M: D_k = Hom(F_k, S(-sigma))
// has twists sigma - a for each twist a of F_k, and d: D_k -> D_{k+1} is the
// transpose of F_{k+1} -> F_k.

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "creg/constructions.hpp"
#include "creg/module.hpp"
#include "creg/regularity.hpp"
#include "creg/resolution.hpp"

namespace creg {

/// One row of a cohomology table: dim H^i_m(M)_j for j in [window_lo, top].
struct CohomRow {
  int i = 0;
  int top = 0;
  int window_lo = 0;
  bool finite_length = false;  // the window covers the whole support
  std::map<int, std::size_t> dims;
};

struct CohomTable {
  int n = 0;
  int sigma = 0;
  std::map<int, CohomRow> rows;  // nonzero rows only

  std::size_t at(int i, int j) const;
  std::optional<int> depth() const;
  std::optional<int> dim() const;
  std::string render() const;
};

template <class F>
class LocalCohomology {
 public:
  using Elem = typename F::Elem;

  explicit LocalCohomology(PresentedPtr<F> m, int max_degree = 200);

  const PresentedPtr<F>& module_over_S() const { return over_s_; }
  const CompleteResolution<F>& resolution() const { return res_; }
  int num_vars() const { return n_; }
  int sigma() const { return sigma_; }

  /// dim Ext^k_S(M, S(-sigma))_e.
  std::size_t ext_dim(int k, int e) const;
  /// Smallest degree with Ext^k nonzero, or nullopt when Ext^k = 0.
  std::optional<int> ext_min_degree(int k) const;
  /// Ext^k is generated in degrees <= this.
  int ext_generator_bound(int k) const;
  /// Largest degree with Ext^k nonzero when Ext^k has finite length.
  std::optional<int> ext_max_degree(int k) const;
  /// Ext^k as a presented S-module.
  PresentedPtr<F> ext_module(int k) const;

  std::size_t dim(int i, int j) const { return ext_dim(n_ - i, -j); }
  /// Largest j with H^i_m(M)_j != 0, nullopt when H^i_m(M) = 0.
  std::optional<int> top(int i) const;

  CohomTable table(int window = 6) const;

 private:
  const FreeModule<F>& dual(int k) const { return *dual_[k]; }
  /// D_k / im(D_{k-1} -> D_k) for 1 <= k <= length.
  PresentedPtr<F> dual_cokernel(int k) const;
  std::size_t rank_of(int k, int e) const;  // rank of D_{k-1} -> D_k in degree e

  PresentedPtr<F> over_s_;
  CompleteResolution<F> res_;
  int n_ = 0;
  int sigma_ = 0;
  int length_ = 0;
  std::vector<std::unique_ptr<FreeModule<F>>> dual_;
  std::vector<std::unique_ptr<FreeMap<F>>> dual_maps_;  // [k]: D_{k-1} -> D_k, k >= 1
  mutable std::map<std::pair<int, int>, std::size_t> ranks_;
  mutable std::map<int, int> generator_bounds_;
  mutable std::map<int, std::optional<int>> min_degrees_;
};

/// max_i (top(H^i) + i), always Exact.
RegularityValue local_regularity(const CohomTable& table);

/// reg^L straight from the tops of the rows, no window needed.
template <class F>
RegularityValue local_regularity(const LocalCohomology<F>& lc);

/// (depth, dim) from the nonzero rows.
std::pair<int, int> depth_dim(const CohomTable& table);

template <class F>
std::pair<int, int> depth_dim(const LocalCohomology<F>& lc);

}  // namespace creg
