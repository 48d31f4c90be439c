#include "creg/localcohom.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

std::size_t CohomTable::at(int i, int j) const {
  auto it = rows.find(i);
  if (it == rows.end()) return 0;
  auto jt = it->second.dims.find(j);
  return jt == it->second.dims.end() ? 0 : jt->second;
}

std::optional<int> CohomTable::depth() const {
  if (rows.empty()) return std::nullopt;
  return rows.begin()->first;
}

std::optional<int> CohomTable::dim() const {
  if (rows.empty()) return std::nullopt;
  return rows.rbegin()->first;
}

std::string CohomTable::render() const {
  std::ostringstream os;
  if (rows.empty()) os << "(all local cohomology vanishes)\n";
  for (const auto& [i, row] : rows) {
    os << "H^" << i << " top " << row.top << (row.finite_length ? " (finite length)" : "") << ":";
    for (const auto& [j, d] : row.dims) os << ' ' << j << ':' << d;
    os << '\n';
  }
  return os.str();
}

namespace {

/// Ext^k as the graded module ker(D_k -> D_{k+1}) / im(D_{k-1} -> D_k).
template <class F>
class ExtView : public GradedModule<F> {
 public:
  using Elem = typename F::Elem;

  ExtView(const FreeModule<F>* space, const FreeMap<F>* in, const FreeMap<F>* out, int lowest, int bound)
      : space_(space), in_(in), out_(out), lowest_(lowest), bound_(bound) {}

  const RingPtr<F>& ring() const override { return space_->ring(); }
  std::size_t dim(int d) const override { return piece(d).reps.size(); }
  int lowest_degree() const override { return lowest_; }
  int generator_bound() const override { return bound_; }

  Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const override {
    const F& f = this->field();
    const auto& p = piece(d);
    Vec<F> x(space_->dim(d), f.zero());
    for (std::size_t t = 0; t < p.reps.size(); ++t)
      if (!f.is_zero(v[t]))
        for (std::size_t c = 0; c < x.size(); ++c) x[c] = f.add(x[c], f.mul(v[t], p.reps[t][c]));
    const int e = d + ring()->weight(var);
    return coordinates(e, space_->act(var, d, x));
  }

 private:
  struct Piece {
    std::size_t image_dim = 0;
    std::vector<Vec<F>> reps;
    SpanCoordinates<F> coords;
  };

  Vec<F> coordinates(int e, const Vec<F>& x) const {
    const auto& p = piece(e);
    auto c = p.coords.coords(x);
    if (!c) throw Error("Ext action left the cycle space");
    return Vec<F>(c->begin() + p.image_dim, c->end());
  }

  const Piece& piece(int d) const {
    auto it = pieces_.find(d);
    if (it != pieces_.end()) return it->second;
    const F& f = this->field();
    const std::size_t n = space_->dim(d);
    Subspace<F> span(f, n);
    if (in_ != nullptr) {
      const auto& m = in_->matrix(d);
      for (std::size_t c = 0; c < m.cols(); ++c) span.insert(m.column(c));
    }
    Piece p;
    p.image_dim = span.dim();
    std::vector<Vec<F>> basis = span.rows();
    std::vector<Vec<F>> cycles;
    if (out_ != nullptr) {
      auto k = kernel_basis(f, out_->matrix(d));
      for (std::size_t c = 0; c < k.cols(); ++c) cycles.push_back(k.column(c));
    } else {
      for (std::size_t c = 0; c < n; ++c) {
        Vec<F> unit(n, f.zero());
        unit[c] = f.one();
        cycles.push_back(std::move(unit));
      }
    }
    for (auto& z : cycles)
      if (span.insert(z)) p.reps.push_back(z);
    basis.insert(basis.end(), p.reps.begin(), p.reps.end());
    p.coords = SpanCoordinates<F>(f, n, basis);
    return pieces_.emplace(d, std::move(p)).first->second;
  }

  const FreeModule<F>* space_;
  const FreeMap<F>* in_;
  const FreeMap<F>* out_;
  int lowest_, bound_;
  mutable std::map<int, Piece> pieces_;
};

}  // namespace

template <class F>
LocalCohomology<F>::LocalCohomology(PresentedPtr<F> m, int max_degree)
    : over_s_(restrict_to_S(std::move(m))), res_(resolve_completely<F>(over_s_, max_degree)) {
  const auto& s = over_s_->ring();
  n_ = static_cast<int>(s->num_vars());
  sigma_ = s->sigma();
  length_ = res_.length;
  const auto& r = *res_.resolution;
  for (int k = 0; k <= length_; ++k) {
    std::vector<int> twists;
    for (int a : r.free_module(k).twists()) twists.push_back(sigma_ - a);
    dual_.push_back(std::make_unique<FreeModule<F>>(s, std::move(twists)));
  }
  dual_maps_.resize(length_ + 1);
  for (int k = 1; k <= length_; ++k) {
    auto map = std::make_unique<FreeMap<F>>(dual_[k - 1].get(), dual_[k].get());
    const auto& src = r.free_module(k);
    const auto& tgt = r.free_module(k - 1);
    for (std::size_t a = 0; a < tgt.rank(); ++a) {
      const int deg = sigma_ - tgt.twists()[a];
      std::vector<RingElement<F>> entries;
      for (std::size_t b = 0; b < src.rank(); ++b) {
        const int cb = src.twists()[b];
        if (cb - tgt.twists()[a] < 0) {
          entries.push_back(s->zero(cb - tgt.twists()[a]));
          continue;
        }
        entries.push_back(tgt.component(r.map(k).image(b), cb, a));
      }
      map->add_image(dual_[k]->element(deg, entries));
    }
    dual_maps_[k] = std::move(map);
  }
}

template <class F>
std::size_t LocalCohomology<F>::rank_of(int k, int e) const {
  if (k < 1 || k > length_) return 0;
  auto key = std::make_pair(k, e);
  auto it = ranks_.find(key);
  if (it != ranks_.end()) return it->second;
  std::size_t r = rank(over_s_->field(), dual_maps_[k]->matrix(e));
  ranks_.emplace(key, r);
  return r;
}

template <class F>
std::size_t LocalCohomology<F>::ext_dim(int k, int e) const {
  if (k < 0 || k > length_) return 0;
  return dual(k).dim(e) - rank_of(k, e) - rank_of(k + 1, e);
}

template <class F>
int LocalCohomology<F>::ext_generator_bound(int k) const {
  auto it = generator_bounds_.find(k);
  if (it != generator_bounds_.end()) return it->second;
  int bound = dual(k).generator_bound();
  if (k < length_) {
    // Ext^k is a quotient of ker(D_k -> D_{k+1}), the second syzygy module of
    // C = coker(D_k -> D_{k+1}) up to free summands of D_k, so its generators
    // sit in degrees <= reg(C) + 2.
    auto coker = dual_cokernel(k + 1);
    if (!coker->is_zero()) {
      auto complete = resolve_completely<F>(coker);
      bound = std::max(bound, *complete.table.max_slope() + 2);
    }
  }
  generator_bounds_.emplace(k, bound);
  return bound;
}

template <class F>
PresentedPtr<F> LocalCohomology<F>::dual_cokernel(int k) const {
  std::vector<FreeElement<F>> relations;
  for (std::size_t a = 0; a < dual(k - 1).rank(); ++a)
    relations.push_back({dual(k - 1).twists()[a], dual_maps_[k]->image(a)});
  return std::make_shared<const PresentedModule<F>>(over_s_->ring(), dual(k).twists(), std::move(relations));
}

template <class F>
std::optional<int> LocalCohomology<F>::ext_min_degree(int k) const {
  if (k < 0 || k > length_) return std::nullopt;
  auto it = min_degrees_.find(k);
  if (it != min_degrees_.end()) return it->second;
  std::optional<int> found;
  const int bound = ext_generator_bound(k);
  for (int e = dual(k).lowest_degree(); e <= bound; ++e)
    if (ext_dim(k, e) > 0) {
      found = e;
      break;
    }
  min_degrees_.emplace(k, found);
  return found;
}

template <class F>
std::optional<int> LocalCohomology<F>::ext_max_degree(int k) const {
  auto lo = ext_min_degree(k);
  if (!lo) return std::nullopt;
  const int maxw = over_s_->ring()->max_weight();
  auto scan = [&](int hi) -> std::optional<int> {
    int last = *lo, zeros = 0;
    for (int e = *lo; e <= hi; ++e) {
      if (ext_dim(k, e) > 0) {
        last = e;
        zeros = 0;
      } else if (++zeros >= maxw && e > ext_generator_bound(k)) {
        return last;
      }
    }
    return std::nullopt;
  };
  if (auto quick = scan(ext_generator_bound(k) + 2 * maxw + 2)) return quick;
  // A finite-length module has its top degree at its regularity, so it
  // vanishes on (reg, reg + maxw]; otherwise it is nonzero there.
  const int reg = *resolve_completely<F>(ext_module(k)).table.max_slope();
  return scan(std::max(reg, *lo) + maxw);
}

template <class F>
PresentedPtr<F> LocalCohomology<F>::ext_module(int k) const {
  const auto& s = over_s_->ring();
  if (k < 0 || k > length_ || !ext_min_degree(k)) return free_module<F>(s, {});
  const int bound = ext_generator_bound(k);
  auto view = std::make_shared<const ExtView<F>>(dual_[k].get(), k >= 1 ? dual_maps_[k].get() : nullptr,
                                                 k < length_ ? dual_maps_[k + 1].get() : nullptr,
                                                 dual(k).lowest_degree(), bound);
  // HS(Ext^k) = HS(D_k) - HS(im into D_{k+1}) - HS(im from D_{k-1}), and each
  // image is a free module minus a cokernel.
  auto free_of = [&](int j) {
    SeriesNumerator out;
    for (int a : dual(j).twists()) add_series(out, {{a, 1}});
    return out;
  };
  auto target = free_of(k);
  if (k < length_) {
    add_series(target, free_of(k + 1), -1);
    add_series(target, hilbert_numerator<F>(dual_cokernel(k + 1)));
  }
  if (k >= 1) {
    add_series(target, free_of(k), -1);
    add_series(target, hilbert_numerator<F>(dual_cokernel(k)));
  }
  return present_with_numerator<F>(view, target, bound + s->max_weight() + 2);
}

template <class F>
std::optional<int> LocalCohomology<F>::top(int i) const {
  auto e = ext_min_degree(n_ - i);
  if (!e) return std::nullopt;
  return -*e;
}

template <class F>
CohomTable LocalCohomology<F>::table(int window) const {
  CohomTable t;
  t.n = n_;
  t.sigma = sigma_;
  for (int i = 0; i <= n_; ++i) {
    auto tp = top(i);
    if (!tp) continue;
    CohomRow row;
    row.i = i;
    row.top = *tp;
    auto mx = ext_max_degree(n_ - i);
    row.finite_length = mx.has_value();
    row.window_lo = mx ? -*mx : *tp - window;
    for (int j = row.window_lo; j <= row.top; ++j) row.dims[j] = dim(i, j);
    t.rows.emplace(i, std::move(row));
  }
  return t;
}

RegularityValue local_regularity(const CohomTable& table) {
  if (table.rows.empty()) throw ZeroModuleError("all local cohomology vanishes");
  int best = std::numeric_limits<int>::min();
  for (const auto& [i, row] : table.rows) best = std::max(best, row.top + i);
  return {best, RegStatus::Exact, "tops of local cohomology via duality"};
}

template <class F>
RegularityValue local_regularity(const LocalCohomology<F>& lc) {
  std::optional<int> best;
  for (int i = 0; i <= lc.num_vars(); ++i)
    if (auto t = lc.top(i)) best = std::max(best.value_or(*t + i), *t + i);
  if (!best) throw ZeroModuleError("all local cohomology vanishes");
  return {best, RegStatus::Exact, "tops of local cohomology via duality"};
}

std::pair<int, int> depth_dim(const CohomTable& table) {
  if (table.rows.empty()) throw ZeroModuleError("all local cohomology vanishes");
  return {*table.depth(), *table.dim()};
}

template <class F>
std::pair<int, int> depth_dim(const LocalCohomology<F>& lc) {
  std::optional<int> lo, hi;
  for (int i = 0; i <= lc.num_vars(); ++i)
    if (lc.top(i)) {
      if (!lo) lo = i;
      hi = i;
    }
  if (!lo) throw ZeroModuleError("all local cohomology vanishes");
  return {*lo, *hi};
}

#define CREG_INSTANTIATE_LOCALCOHOM(Field)                                         \
  template class LocalCohomology<Field>;                                           \
  template RegularityValue local_regularity(const LocalCohomology<Field>&);        \
  template std::pair<int, int> depth_dim(const LocalCohomology<Field>&);

CREG_INSTANTIATE_LOCALCOHOM(PrimeField)
CREG_INSTANTIATE_LOCALCOHOM(RationalField)

}  // namespace creg
