#include "creg/module.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

template <class F>
DenseMatrix<F> GradedModule<F>::variable_action(std::size_t var, int d) const {
  const F& f = this->field();
  const std::size_t n = dim(d);
  const std::size_t m = dim(d + ring()->weight(var));
  DenseMatrix<F> out(m, n, f);
  Vec<F> unit(n, f.zero());
  for (std::size_t c = 0; c < n; ++c) {
    unit[c] = f.one();
    auto col = act(var, d, unit);
    for (std::size_t r = 0; r < m; ++r) out(r, c) = col[r];
    unit[c] = f.zero();
  }
  return out;
}

template <class F>
DenseMatrix<F> monomial_action(const GradedModule<F>& m, const Monomial& s, int d) {
  const F& f = m.field();
  DenseMatrix<F> acc = DenseMatrix<F>::identity(f, m.dim(d));
  int cur = d;
  for (std::size_t v = 0; v < s.size(); ++v)
    for (int k = 0; k < s[v]; ++k) {
      acc = multiply(f, m.variable_action(v, cur), acc);
      cur += m.ring()->weight(v);
    }
  return acc;
}

template <class F>
DenseMatrix<F> ring_element_action(const GradedModule<F>& m, const RingElement<F>& a, int d) {
  const F& f = m.field();
  DenseMatrix<F> out(m.dim(d + a.degree), m.dim(d), f);
  const auto& basis = m.ring()->standard_monomials(a.degree);
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (f.is_zero(a.coords[i])) continue;
    auto term = monomial_action(m, basis[i], d);
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c)
        if (!f.is_zero(term(r, c))) out(r, c) = f.add(out(r, c), f.mul(a.coords[i], term(r, c)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FreeModule

template <class F>
FreeModule<F>::FreeModule(RingPtr<F> ring, std::vector<int> twists) : ring_(std::move(ring)), twists_(std::move(twists)) {}

template <class F>
std::size_t FreeModule<F>::dim(int d) const {
  std::size_t total = 0;
  for (int a : twists_) total += ring_->dim(d - a);
  return total;
}

template <class F>
std::size_t FreeModule<F>::offset(std::size_t gen, int d) const {
  std::size_t total = 0;
  for (std::size_t g = 0; g < gen; ++g) total += ring_->dim(d - twists_[g]);
  return total;
}

template <class F>
int FreeModule<F>::lowest_degree() const {
  if (twists_.empty()) return 0;
  return *std::min_element(twists_.begin(), twists_.end());
}

template <class F>
int FreeModule<F>::generator_bound() const {
  if (twists_.empty()) return -1;
  return *std::max_element(twists_.begin(), twists_.end());
}

template <class F>
Vec<F> FreeModule<F>::act(std::size_t var, int d, std::span<const Elem> v) const {
  const F& f = ring_->field();
  const int w = ring_->weight(var);
  Vec<F> out(dim(d + w), f.zero());
  std::size_t src = 0, dst = 0;
  for (int a : twists_) {
    const std::size_t n = ring_->dim(d - a);
    const std::size_t m = ring_->dim(d + w - a);
    if (n > 0 && m > 0) {
      const auto& mat = ring_->variable_action(var, d - a);
      for (std::size_t c = 0; c < n; ++c) {
        const auto& x = v[src + c];
        if (f.is_zero(x)) continue;
        for (std::size_t r = 0; r < m; ++r)
          if (!f.is_zero(mat(r, c))) out[dst + r] = f.add(out[dst + r], f.mul(mat(r, c), x));
      }
    }
    src += n;
    dst += m;
  }
  return out;
}

template <class F>
Vec<F> FreeModule<F>::basis_vector(std::size_t gen) const {
  const F& f = ring_->field();
  const int d = twists_[gen];
  Vec<F> v(dim(d), f.zero());
  v[offset(gen, d)] = f.one();
  return v;
}

template <class F>
RingElement<F> FreeModule<F>::component(std::span<const Elem> v, int d, std::size_t gen) const {
  const std::size_t start = offset(gen, d);
  const std::size_t n = ring_->dim(d - twists_[gen]);
  return {d - twists_[gen], Vec<F>(v.begin() + start, v.begin() + start + n)};
}

template <class F>
Vec<F> FreeModule<F>::element(int d, const std::vector<RingElement<F>>& entries) const {
  const F& f = ring_->field();
  if (entries.size() != twists_.size()) throw InvalidInput("entry count does not match the number of generators");
  Vec<F> out(dim(d), f.zero());
  std::size_t pos = 0;
  for (std::size_t g = 0; g < twists_.size(); ++g) {
    const std::size_t n = ring_->dim(d - twists_[g]);
    const auto& e = entries[g];
    if (!ring_->is_zero(e)) {
      if (e.degree != d - twists_[g]) throw InvalidInput("entry degree inconsistent with column degree");
      std::copy(e.coords.begin(), e.coords.end(), out.begin() + pos);
    }
    pos += n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FreeMap

template <class F>
const DenseMatrix<F>& FreeMap<F>::matrix(int d) const {
  auto it = matrices_.find(d);
  if (it != matrices_.end()) return it->second;
  const auto& ring = *source_->ring();
  const F& f = ring.field();
  const auto& twists = source_->twists();
  const std::size_t rows = target_->dim(d), cols = source_->dim(d);
  if (rows != 0 && cols > kMaxDenseEntries / rows)
    throw CapExhausted("a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix in degree " +
                       std::to_string(d) + " exceeds the dense size limit");
  DenseMatrix<F> mat(rows, cols, f);
  std::size_t col = 0;
  for (std::size_t k = 0; k < twists.size() && k < images_.size(); ++k) {
    const int e = d - twists[k];
    const auto& basis = ring.standard_monomials(e);
    for (const auto& s : basis) {
      Vec<F> image;
      if (e == 0) {
        image = images_[k];
      } else {
        // s = x_v * s' with s' standard; recurse through degree d - w_v.
        std::size_t v = 0;
        while (s[v] == 0) ++v;
        Monomial lower = s;
        --lower[v];
        const int dl = d - ring.weight(v);
        const auto& lower_mat = matrix(dl);
        const std::size_t lower_col = source_->offset(k, dl) + *ring.standard_index(lower);
        image = target_->act(v, dl, lower_mat.column(lower_col));
      }
      for (std::size_t r = 0; r < mat.rows(); ++r) mat(r, col) = image[r];
      ++col;
    }
  }
  return matrices_.emplace(d, std::move(mat)).first->second;
}

// ---------------------------------------------------------------------------
// PresentedModule

template <class F>
PresentedModule<F>::PresentedModule(RingPtr<F> ring, std::vector<int> twists, std::vector<FreeElement<F>> relations)
    : cover_(std::move(ring), std::move(twists)) {
  const F& f = cover_.ring()->field();
  min_relation_degree_ = std::numeric_limits<int>::max();
  for (auto& r : relations) {
    if (r.coords.size() != cover_.dim(r.degree))
      throw InvalidInput("relation has the wrong number of coordinates for its degree");
    if (is_zero_vector(f, std::span<const Elem>(r.coords))) continue;
    min_relation_degree_ = std::min(min_relation_degree_, r.degree);
    relations_.push_back(std::move(r));
  }
}

template <class F>
std::shared_ptr<const PresentedModule<F>> PresentedModule<F>::parse(
    RingPtr<F> ring, std::vector<int> twists, const std::vector<std::vector<std::string>>& columns) {
  FreeModule<F> cover(ring, twists);
  std::vector<FreeElement<F>> rels;
  for (const auto& column : columns) {
    if (column.size() != twists.size())
      throw InvalidInput("relation column has " + std::to_string(column.size()) + " entries, expected " +
                         std::to_string(twists.size()));
    std::optional<int> degree;
    std::vector<Polynomial<F>> polys;
    for (std::size_t i = 0; i < column.size(); ++i) {
      auto p = to_field(ring->field(), parse_polynomial(column[i], ring->var_names()), ring->weights());
      if (!p.is_zero()) {
        int d = *p.degree + twists[i];
        if (degree && *degree != d) throw InvalidInput("relation column is not homogeneous");
        degree = d;
      }
      polys.push_back(std::move(p));
    }
    if (!degree) throw InvalidInput("relation column is zero");
    std::vector<RingElement<F>> entries;
    for (std::size_t i = 0; i < polys.size(); ++i)
      entries.push_back(polys[i].is_zero() ? ring->zero(*degree - twists[i]) : ring->normal_form(polys[i]));
    rels.push_back({*degree, cover.element(*degree, entries)});
  }
  return std::make_shared<const PresentedModule>(std::move(ring), std::move(twists), std::move(rels));
}

template <class F>
int PresentedModule<F>::max_relation_degree() const {
  int d = std::numeric_limits<int>::min();
  for (const auto& r : relations_) d = std::max(d, r.degree);
  return d;
}

template <class F>
int PresentedModule<F>::lowest_degree() const {
  return cover_.lowest_degree();
}

template <class F>
int PresentedModule<F>::generator_bound() const {
  return cover_.generator_bound();
}

template <class F>
const typename PresentedModule<F>::Piece& PresentedModule<F>::cached_piece(int d) const {
  std::lock_guard lock(mutex_);
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return it->second;
  const F& f = cover_.ring()->field();
  Piece p;
  p.relations = Subspace<F>(f, cover_.dim(d));
  if (!relations_.empty() && d >= min_relation_degree_) {
    for (const auto& r : relations_)
      if (r.degree == d) p.relations.insert(r.coords);
    const auto& ring = *cover_.ring();
    for (std::size_t v = 0; v < ring.num_vars() && !p.relations.is_full(); ++v) {
      const int e = d - ring.weight(v);
      if (e < min_relation_degree_) continue;
      const auto& lower = cached_piece(e).relations;
      for (const auto& row : lower.rows()) {
        p.relations.insert(cover_.act(v, e, row));
        if (p.relations.is_full()) break;
      }
    }
  }
  p.basis = p.relations.free_positions();
  return pieces_.emplace(d, std::move(p)).first->second;
}

template <class F>
const Subspace<F>& PresentedModule<F>::relation_space(int d) const {
  return cached_piece(d).relations;
}

template <class F>
ModulePiece PresentedModule<F>::piece(int d) const {
  const auto& p = cached_piece(d);
  return {d, p.basis.size(), p.basis};
}

template <class F>
std::size_t PresentedModule<F>::dim(int d) const {
  if (cover_.rank() == 0) return 0;
  return cached_piece(d).basis.size();
}

template <class F>
Vec<F> PresentedModule<F>::project(int d, Vec<F> v) const {
  const auto& p = cached_piece(d);
  p.relations.reduce_in_place(v);
  Vec<F> out;
  out.reserve(p.basis.size());
  for (std::size_t pos : p.basis) out.push_back(v[pos]);
  return out;
}

template <class F>
Vec<F> PresentedModule<F>::lift(int d, std::span<const Elem> coords) const {
  const auto& p = cached_piece(d);
  Vec<F> out(cover_.dim(d), this->field().zero());
  for (std::size_t i = 0; i < p.basis.size(); ++i) out[p.basis[i]] = coords[i];
  return out;
}

template <class F>
DenseMatrix<F> PresentedModule<F>::variable_action(std::size_t var, int d) const {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(var, d);
  auto it = actions_.find(key);
  if (it != actions_.end()) return it->second;
  const F& f = this->field();
  const int e = d + cover_.ring()->weight(var);
  const auto& src = cached_piece(d);
  DenseMatrix<F> mat(dim(e), src.basis.size(), f);
  Vec<F> unit(cover_.dim(d), f.zero());
  for (std::size_t c = 0; c < src.basis.size(); ++c) {
    unit[src.basis[c]] = f.one();
    auto col = project(e, cover_.act(var, d, unit));
    for (std::size_t r = 0; r < col.size(); ++r) mat(r, c) = col[r];
    unit[src.basis[c]] = f.zero();
  }
  return actions_.emplace(key, std::move(mat)).first->second;
}

template <class F>
Vec<F> PresentedModule<F>::act(std::size_t var, int d, std::span<const Elem> v) const {
  return apply(this->field(), variable_action(var, d), v);
}

template <class F>
bool PresentedModule<F>::is_zero() const {
  for (int d = lowest_degree(); d <= generator_bound(); ++d)
    if (dim(d) > 0) return false;
  return true;
}

template <class F>
RingElement<F> PresentedModule<F>::relation_entry(std::size_t gen, std::size_t rel) const {
  const auto& r = relations_[rel];
  return cover_.component(r.coords, r.degree, gen);
}

template <class F>
std::string PresentedModule<F>::format_relations() const {
  std::ostringstream os;
  const auto& ring = *cover_.ring();
  for (std::size_t j = 0; j < relations_.size(); ++j) {
    os << "(";
    for (std::size_t i = 0; i < cover_.rank(); ++i) {
      if (i) os << ", ";
      os << ring.format(relation_entry(i, j));
    }
    os << ")";
    if (j + 1 < relations_.size()) os << " ";
  }
  return os.str();
}

#define CREG_INSTANTIATE_MODULE(Field)                                                             \
  template class GradedModule<Field>;                                                              \
  template class FreeModule<Field>;                                                                \
  template class FreeMap<Field>;                                                                   \
  template class PresentedModule<Field>;                                                           \
  template DenseMatrix<Field> monomial_action(const GradedModule<Field>&, const Monomial&, int);   \
  template DenseMatrix<Field> ring_element_action(const GradedModule<Field>&, const RingElement<Field>&, int);

CREG_INSTANTIATE_MODULE(PrimeField)
CREG_INSTANTIATE_MODULE(RationalField)

}  // namespace creg
