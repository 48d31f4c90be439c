#pragma once

// Standard modules and module operations. Operations are first expressed as
// views (GradedModule implementations computed from another module) and then
// turned into explicit presentations: minimal generators and their first
// syzygies, read off the first step of a resolution.

#include <memory>
#include <optional>
#include <vector>

#include "creg/module.hpp"
#include "creg/resolution.hpp"

namespace creg {

/// M_{>=q}, with the variables acting as in M.
template <class F>
class TruncatedModule : public GradedModule<F> {
 public:
  using Elem = typename F::Elem;
  TruncatedModule(ModulePtr<F> inner, int q) : inner_(std::move(inner)), q_(q) {}

  const RingPtr<F>& ring() const override { return inner_->ring(); }
  std::size_t dim(int d) const override { return d >= q_ ? inner_->dim(d) : 0; }
  Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const override;
  int lowest_degree() const override { return std::max(q_, inner_->lowest_degree()); }
  int generator_bound() const override;

 private:
  ModulePtr<F> inner_;
  int q_;
};

/// Hom_K(M, K) for a module of finite length: (M^v)_d = (M_{-d})^*, and a
/// variable acts on a functional by precomposition.
template <class F>
class MatlisDualModule : public GradedModule<F> {
 public:
  using Elem = typename F::Elem;
  /// lo and hi bound the support of inner.
  MatlisDualModule(ModulePtr<F> inner, int lo, int hi) : inner_(std::move(inner)), lo_(lo), hi_(hi) {}

  const RingPtr<F>& ring() const override { return inner_->ring(); }
  std::size_t dim(int d) const override { return -d >= lo_ && -d <= hi_ ? inner_->dim(-d) : 0; }
  Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const override;
  int lowest_degree() const override { return -hi_; }
  int generator_bound() const override { return -lo_; }

 private:
  ModulePtr<F> inner_;
  int lo_, hi_;
};

/// Minimal presentation of a view: generators and all relations of degree
/// <= relation_cap.
template <class F>
PresentedPtr<F> present(ModulePtr<F> view, int relation_cap);

template <class F>
PresentedPtr<F> free_module(RingPtr<F> ring, std::vector<int> twists);

template <class F>
PresentedPtr<F> ring_module(RingPtr<F> ring);

/// K = R/m concentrated in degree 0.
template <class F>
PresentedPtr<F> residue_field(RingPtr<F> ring);

/// m^j as a module, j >= 0 (standard grading only). Throws ZeroModuleError
/// when m^j = 0.
template <class F>
PresentedPtr<F> power_ideal_module(RingPtr<F> ring, int j);

/// M_{>=q} as a presented module. Throws ZeroTruncationError when it is zero.
/// The result's Hilbert series is checked against M's with the terms below q
/// removed.
template <class F>
PresentedPtr<F> truncate(PresentedPtr<F> m, int q);

/// Smallest and largest degree with M_d != 0, for modules that vanish in
/// large degrees. Throws NotFiniteLengthError when M_d does not vanish within
/// max_weight consecutive degrees above the generators before search_limit.
template <class F>
std::pair<int, int> support_range(const GradedModule<F>& m, int search_limit = 200);

template <class F>
std::optional<int> top_degree(const GradedModule<F>& m, int search_limit = 200);

template <class F>
bool is_finite_length(const GradedModule<F>& m, int search_limit = 200);

/// Hom_K(M, K), presented. Requires finite length.
template <class F>
PresentedPtr<F> matlis_dual(ModulePtr<F> m);

/// M viewed over the ambient polynomial ring: the R-relations lifted to S
/// together with g e_i for every ideal generator g and generator e_i. The
/// Hilbert function is compared with M's on the degrees that determine it.
template <class F>
PresentedPtr<F> restrict_to_S(PresentedPtr<F> m);

/// Numerator of the Hilbert series of M over the ambient polynomial ring,
/// read off a complete resolution of restrict_to_S(M). Zero for M = 0.
template <class F>
SeriesNumerator hilbert_numerator(PresentedPtr<F> m);

/// present(view, cap) for growing caps until the result has the given
/// Hilbert series numerator. Since the presentation maps onto the view, equal
/// series make it an isomorphism.
template <class F>
PresentedPtr<F> present_with_numerator(ModulePtr<F> view, const SeriesNumerator& target, int cap,
                                       int max_cap = 200);

/// True when levels 0..p of res, followed by zeros, are a free resolution of
/// its module. Each cokernel F_{l-1}/im(F_l) is compared with the module and
/// with the kernel one step down through exact Hilbert series.
template <class F>
bool resolution_is_exact(const Resolution<F>& res, int p);

}  // namespace creg
