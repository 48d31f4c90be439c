#include "creg/constructions.hpp"

#include <algorithm>

#include "creg/errors.hpp"
#include "creg/field.hpp"
#include "creg/resolution.hpp"

namespace creg {

namespace {

// Multiplies by prod_v (1 - t^{w_v}), the denominator of every Hilbert series
// over S.
template <class F>
SeriesNumerator times_denominator(const GradedRing<F>& ring, SeriesNumerator p) {
  for (int w : ring.weights()) {
    SeriesNumerator shifted;
    for (const auto& [e, c] : p) shifted[e + w] = c;
    add_series(p, shifted, -1);
  }
  return p;
}

template <class F>
SeriesNumerator free_numerator(const GradedRing<F>& ring, const std::vector<int>& twists) {
  SeriesNumerator base;
  if (ring.is_polynomial_ring()) {
    base[0] = 1;
  } else {
    base = hilbert_numerator(ring_module(ring.shared_from_this()));
  }
  SeriesNumerator out;
  for (int a : twists) {
    SeriesNumerator shifted;
    for (const auto& [e, c] : base) shifted[e + a] = c;
    add_series(out, shifted);
  }
  return out;
}

}  // namespace

template <class F>
Vec<F> TruncatedModule<F>::act(std::size_t var, int d, std::span<const Elem> v) const {
  if (d < q_) return Vec<F>(dim(d + ring()->weight(var)), this->field().zero());
  return inner_->act(var, d, v);
}

template <class F>
int TruncatedModule<F>::generator_bound() const {
  return std::max(inner_->generator_bound(), q_ + ring()->max_weight() - 1);
}

template <class F>
Vec<F> MatlisDualModule<F>::act(std::size_t var, int d, std::span<const Elem> v) const {
  const int w = ring()->weight(var);
  const std::size_t out_dim = dim(d + w);
  if (out_dim == 0 || v.empty()) return Vec<F>(out_dim, this->field().zero());
  // (x.phi)(m) = phi(x m) for m in M_{-d-w}; the matrix is the transpose.
  const auto a = inner_->variable_action(var, -d - w);
  const F& f = this->field();
  Vec<F> out(out_dim, f.zero());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (!f.is_zero(a(r, c)) && !f.is_zero(v[r])) out[c] = f.add(out[c], f.mul(a(r, c), v[r]));
  return out;
}

template <class F>
PresentedPtr<F> present(ModulePtr<F> view, int relation_cap) {
  Resolution<F> res(view, 1);
  res.extend_to(relation_cap);
  const auto& f0 = res.free_module(0);
  const auto& f1 = res.free_module(1);
  std::vector<FreeElement<F>> relations;
  for (std::size_t k = 0; k < f1.rank(); ++k) relations.push_back({f1.twists()[k], res.map(1).image(k)});
  return std::make_shared<const PresentedModule<F>>(view->ring(), f0.twists(), std::move(relations));
}

template <class F>
PresentedPtr<F> free_module(RingPtr<F> ring, std::vector<int> twists) {
  std::sort(twists.begin(), twists.end());
  return std::make_shared<const PresentedModule<F>>(std::move(ring), std::move(twists), std::vector<FreeElement<F>>{});
}

template <class F>
PresentedPtr<F> ring_module(RingPtr<F> ring) {
  return free_module(std::move(ring), {0});
}

template <class F>
PresentedPtr<F> residue_field(RingPtr<F> ring) {
  std::vector<FreeElement<F>> relations;
  for (std::size_t v = 0; v < ring->num_vars(); ++v) {
    auto x = ring->variable(v);
    if (!ring->is_zero(x)) relations.push_back({x.degree, x.coords});
  }
  return std::make_shared<const PresentedModule<F>>(ring, std::vector<int>{0}, std::move(relations));
}

template <class F>
PresentedPtr<F> power_ideal_module(RingPtr<F> ring, int j) {
  if (j < 0) throw InvalidInput("power of the maximal ideal must be nonnegative");
  if (!ring->is_standard_graded()) throw GradingError("powers of the maximal ideal need a standard grading");
  if (j == 0) return ring_module(ring);
  if (ring->dim(j) == 0) throw ZeroModuleError("m^" + std::to_string(j) + " is zero");
  return truncate(ring_module(ring), j);
}

template <class F>
std::pair<int, int> support_range(const GradedModule<F>& m, int search_limit) {
  const int lowest = m.lowest_degree();
  const int bound = m.generator_bound();
  const int maxw = m.ring()->max_weight();
  std::optional<int> lo, hi;
  int zero_run = 0;
  for (int d = lowest; d <= search_limit; ++d) {
    if (m.dim(d) > 0) {
      if (!lo) lo = d;
      hi = d;
      zero_run = 0;
    } else if (d > bound && ++zero_run >= maxw) {
      if (!lo) throw ZeroModuleError("module is zero");
      return {*lo, *hi};
    }
  }
  throw NotFiniteLengthError("module does not vanish below degree " + std::to_string(search_limit));
}

template <class F>
std::optional<int> top_degree(const GradedModule<F>& m, int search_limit) {
  try {
    return support_range(m, search_limit).second;
  } catch (const NotFiniteLengthError&) {
    return std::nullopt;
  }
}

template <class F>
bool is_finite_length(const GradedModule<F>& m, int search_limit) {
  return top_degree(m, search_limit).has_value();
}

template <class F>
PresentedPtr<F> truncate(PresentedPtr<F> m, int q) {
  const auto& ring = *m->ring();
  const int maxw = ring.max_weight();
  const int gen_top = std::max(q, m->generator_bound());
  bool nonzero = false;
  for (int d = q; d <= gen_top + maxw - 1 && !nonzero; ++d) nonzero = m->dim(d) > 0;
  if (!nonzero) throw ZeroTruncationError("truncation at degree " + std::to_string(q) + " is zero");

  // Over S, relations of M_{>=q} sit in degrees <= max(q, reg M) + 1, and
  // R-relations are images of S-relations.
  auto over_s = resolve_completely<F>(restrict_to_S(m));
  auto target = series_numerator(over_s.table);
  SeriesNumerator below;
  for (int d = m->lowest_degree(); d < q; ++d)
    if (const auto h = m->dim(d)) below[d] = static_cast<long long>(h);
  add_series(target, times_denominator(ring, below), -1);

  auto view = std::make_shared<const TruncatedModule<F>>(m, q);
  return present_with_numerator<F>(view, target, std::max(q, *over_s.table.max_slope()) + maxw);
}

template <class F>
PresentedPtr<F> matlis_dual(ModulePtr<F> m) {
  auto [lo, hi] = support_range(*m);
  auto view = std::make_shared<const MatlisDualModule<F>>(m, lo, hi);
  auto out = present<F>(view, -lo + m->ring()->max_weight());
  for (int d = -hi - 1; d <= -lo + m->ring()->max_weight(); ++d)
    if (out->dim(d) != view->dim(d)) throw CertificateError("presentation of the Matlis dual is inconsistent");
  return out;
}

template <class F>
PresentedPtr<F> restrict_to_S(PresentedPtr<F> m) {
  const auto& ring = m->ring();
  if (ring->is_polynomial_ring()) return m;
  auto s = ring->ambient();
  const F& f = ring->field();
  const auto& twists = m->twists();
  FreeModule<F> cover(s, twists);

  auto lift = [&](const RingElement<F>& a) {
    RingElement<F> out{a.degree, Vec<F>(s->dim(a.degree), f.zero())};
    const auto& basis = ring->standard_monomials(a.degree);
    for (std::size_t t = 0; t < a.coords.size(); ++t)
      if (!f.is_zero(a.coords[t])) out.coords[*s->monomial_index(basis[t])] = a.coords[t];
    return out;
  };

  std::vector<FreeElement<F>> relations;
  for (std::size_t r = 0; r < m->relations().size(); ++r) {
    const int d = m->relations()[r].degree;
    std::vector<RingElement<F>> entries;
    for (std::size_t i = 0; i < twists.size(); ++i) entries.push_back(lift(m->relation_entry(i, r)));
    relations.push_back({d, cover.element(d, entries)});
  }
  for (const auto& g : ring->ideal_generators()) {
    auto gs = s->normal_form(g);
    for (std::size_t i = 0; i < twists.size(); ++i) {
      const int d = gs.degree + twists[i];
      std::vector<RingElement<F>> entries;
      for (std::size_t k = 0; k < twists.size(); ++k) entries.push_back(k == i ? gs : s->zero(d - twists[k]));
      relations.push_back({d, cover.element(d, entries)});
    }
  }
  auto out = std::make_shared<const PresentedModule<F>>(s, twists, std::move(relations));
  if (!twists.empty()) {
    const int hi = std::max(out->generator_bound(), out->is_free() ? 0 : out->max_relation_degree()) + s->max_weight() + 2;
    for (int d = m->lowest_degree(); d <= hi; ++d)
      if (out->dim(d) != m->dim(d)) throw CertificateError("restriction to the polynomial ring changed the Hilbert function");
  }
  return out;
}

template <class F>
SeriesNumerator hilbert_numerator(PresentedPtr<F> m) {
  if (m->is_zero()) return {};
  return series_numerator(resolve_completely<F>(restrict_to_S(std::move(m))).table);
}

template <class F>
PresentedPtr<F> present_with_numerator(ModulePtr<F> view, const SeriesNumerator& target, int cap, int max_cap) {
  const int maxw = view->ring()->max_weight();
  for (cap = std::max(cap, view->generator_bound()); cap <= max_cap; cap += maxw) {
    auto out = present<F>(view, cap);
    bool ok = true;
    for (int d = view->lowest_degree() - 1; d <= cap + maxw && ok; ++d) ok = out->dim(d) == view->dim(d);
    if (ok && hilbert_numerator<F>(out) == target) return out;
  }
  throw CapExhausted("no presentation matching the Hilbert series through degree " + std::to_string(max_cap));
}

template <class F>
bool resolution_is_exact(const Resolution<F>& res, int p) {
  auto m = std::dynamic_pointer_cast<const PresentedModule<F>>(res.module_ptr());
  if (!m || p < 0 || p >= res.hom_cap()) return false;
  const auto& ring = *res.ring();
  auto free_of = [&](int l) { return free_numerator(ring, res.free_module(l).twists()); };
  // im(F_l -> F_{l-1}) = F_{l-1} - coker.
  auto image = [&](int l) {
    std::vector<FreeElement<F>> relations;
    const auto& src = res.free_module(l);
    for (std::size_t k = 0; k < src.rank(); ++k) relations.push_back({src.twists()[k], res.map(l).image(k)});
    auto coker = std::make_shared<const PresentedModule<F>>(res.ring(), res.free_module(l - 1).twists(),
                                                            std::move(relations));
    auto out = free_of(l - 1);
    add_series(out, hilbert_numerator<F>(coker), -1);
    return out;
  };
  const auto target = hilbert_numerator<F>(m);
  if (p == 0) return free_of(0) == target;
  auto im = image(1);
  auto coker = free_of(0);
  add_series(coker, im, -1);
  if (coker != target) return false;
  for (int l = 1; l <= p; ++l) {
    auto kernel = free_of(l);
    add_series(kernel, im, -1);
    auto next = l < p ? image(l + 1) : SeriesNumerator{};
    if (kernel != next) return false;
    im = std::move(next);
  }
  return true;
}

#define CREG_INSTANTIATE_CONSTRUCTIONS(Field)                                       \
  template class TruncatedModule<Field>;                                            \
  template class MatlisDualModule<Field>;                                           \
  template PresentedPtr<Field> present(ModulePtr<Field>, int);                      \
  template PresentedPtr<Field> free_module(RingPtr<Field>, std::vector<int>);       \
  template PresentedPtr<Field> ring_module(RingPtr<Field>);                         \
  template PresentedPtr<Field> residue_field(RingPtr<Field>);                       \
  template PresentedPtr<Field> power_ideal_module(RingPtr<Field>, int);             \
  template PresentedPtr<Field> truncate(PresentedPtr<Field>, int);                  \
  template std::pair<int, int> support_range(const GradedModule<Field>&, int);      \
  template std::optional<int> top_degree(const GradedModule<Field>&, int);          \
  template bool is_finite_length(const GradedModule<Field>&, int);                  \
  template PresentedPtr<Field> matlis_dual(ModulePtr<Field>);                       \
  template PresentedPtr<Field> restrict_to_S(PresentedPtr<Field>);                  \
  template SeriesNumerator hilbert_numerator(PresentedPtr<Field>);                  \
  template PresentedPtr<Field> present_with_numerator(ModulePtr<Field>, const SeriesNumerator&, int, int); \
  template bool resolution_is_exact(const Resolution<Field>&, int);

CREG_INSTANTIATE_CONSTRUCTIONS(PrimeField)
CREG_INSTANTIATE_CONSTRUCTIONS(RationalField)

}  // namespace creg
