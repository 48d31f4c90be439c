#include "creg/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

template <class F>
GradedRing<F>::GradedRing(F field, std::vector<std::string> names, std::vector<int> weights,
                          std::vector<Polynomial<F>> ideal)
    : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size()) throw InvalidInput("variable names and weights differ in length");
  for (int w : weights_)
    if (w < 1) throw InvalidInput("variable weights must be positive");
  for (auto& g : ideal) {
    if (g.is_zero()) continue;
    if (*g.degree <= 0) throw InvalidInput("ideal generator of degree 0 makes the quotient trivial");
    for (const auto& [m, c] : g.terms)
      if (m.size() != names_.size()) throw InvalidInput("ideal generator has wrong number of variables");
    ideal_.push_back(std::move(g));
  }
}

template <class F>
RingPtr<F> GradedRing<F>::create(F field, std::vector<std::string> names, std::vector<int> weights,
                                 std::vector<Polynomial<F>> ideal) {
  return RingPtr<F>(new GradedRing(std::move(field), std::move(names), std::move(weights), std::move(ideal)));
}

template <class F>
RingPtr<F> GradedRing<F>::create(F field, std::vector<std::string> names, std::vector<int> weights,
                                 const std::vector<std::string>& ideal) {
  std::vector<Polynomial<F>> gens;
  for (const auto& text : ideal) gens.push_back(to_field(field, parse_polynomial(text, names), weights));
  return create(std::move(field), std::move(names), std::move(weights), std::move(gens));
}

template <class F>
RingPtr<F> GradedRing<F>::polynomial_ring(F field, std::vector<std::string> names) {
  std::vector<int> weights(names.size(), 1);
  return create(std::move(field), std::move(names), std::move(weights), std::vector<Polynomial<F>>{});
}

template <class F>
int GradedRing<F>::max_weight() const {
  return weights_.empty() ? 1 : *std::max_element(weights_.begin(), weights_.end());
}

template <class F>
int GradedRing<F>::sigma() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0);
}

template <class F>
bool GradedRing<F>::is_standard_graded() const {
  return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 1; });
}

template <class F>
int GradedRing<F>::max_ideal_degree() const {
  int d = 0;
  for (const auto& g : ideal_) d = std::max(d, *g.degree);
  return d;
}

template <class F>
RingPtr<F> GradedRing<F>::ambient() const {
  if (is_polynomial_ring()) return this->shared_from_this();
  std::lock_guard lock(mutex_);
  if (!ambient_) ambient_ = create(field_, names_, weights_, std::vector<Polynomial<F>>{});
  return ambient_;
}

template <class F>
const typename GradedRing<F>::Piece& GradedRing<F>::piece(int d) const {
  std::lock_guard lock(mutex_);
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return *it->second;
  auto built = build_piece(d);
  return *pieces_.emplace(d, std::move(built)).first->second;
}

template <class F>
std::unique_ptr<typename GradedRing<F>::Piece> GradedRing<F>::build_piece(int d) const {
  auto p = std::make_unique<Piece>();
  p->monomials = monomials_of_degree(weights_, d);
  for (std::size_t i = 0; i < p->monomials.size(); ++i) p->index.emplace(p->monomials[i], i);
  const std::size_t n = p->monomials.size();
  p->ideal = Subspace<F>(field_, n);

  // I_d = span of the generators of degree d plus x_v * I_{d - w_v}.
  for (const auto& g : ideal_) {
    if (*g.degree != d) continue;
    Vec<F> row(n, field_.zero());
    for (const auto& [m, c] : g.terms) row[p->index.at(m)] = c;
    p->ideal.insert(std::move(row));
  }
  if (!ideal_.empty()) {
    for (std::size_t v = 0; v < num_vars() && !p->ideal.is_full(); ++v) {
      int lower_deg = d - weights_[v];
      if (lower_deg <= 0) continue;
      const Piece& lower = piece(lower_deg);
      if (lower.ideal.dim() == 0) continue;
      std::vector<std::size_t> shift(lower.monomials.size());
      for (std::size_t k = 0; k < lower.monomials.size(); ++k) {
        Monomial m = lower.monomials[k];
        ++m[v];
        shift[k] = p->index.at(m);
      }
      for (const auto& lower_row : lower.ideal.rows()) {
        Vec<F> row(n, field_.zero());
        for (std::size_t k = 0; k < lower_row.size(); ++k)
          if (!field_.is_zero(lower_row[k])) row[shift[k]] = lower_row[k];
        p->ideal.insert(std::move(row));
        if (p->ideal.is_full()) break;
      }
    }
  }
  p->ideal.make_reduced();

  p->to_standard.assign(n, -1);
  for (std::size_t k : p->ideal.free_positions()) {
    p->to_standard[k] = static_cast<int>(p->standard.size());
    p->standard.push_back(p->monomials[k]);
  }
  p->nf.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (p->to_standard[k] >= 0) {
      p->nf[k].emplace_back(static_cast<std::size_t>(p->to_standard[k]), field_.one());
      continue;
    }
    // Reduced row: m_k + sum_{free j} c_j m_j = 0 in R.
    const auto& row = p->ideal.row_at_pivot(k);
    for (std::size_t j = k + 1; j < n; ++j)
      if (!field_.is_zero(row[j]) && p->to_standard[j] >= 0)
        p->nf[k].emplace_back(static_cast<std::size_t>(p->to_standard[j]), field_.neg(row[j]));
  }
  return p;
}

template <class F>
const std::vector<Monomial>& GradedRing<F>::monomial_basis(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  return piece(d).monomials;
}

template <class F>
std::optional<std::size_t> GradedRing<F>::monomial_index(const Monomial& m) const {
  const Piece& p = piece(weighted_degree(m, weights_));
  auto it = p.index.find(m);
  if (it == p.index.end()) return std::nullopt;
  return it->second;
}

template <class F>
std::size_t GradedRing<F>::ideal_dim(int d) const {
  return d < 0 ? 0 : piece(d).ideal.dim();
}

template <class F>
std::size_t GradedRing<F>::dim(int d) const {
  return d < 0 ? 0 : piece(d).standard.size();
}

template <class F>
const std::vector<Monomial>& GradedRing<F>::standard_monomials(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  return piece(d).standard;
}

template <class F>
std::optional<std::size_t> GradedRing<F>::standard_index(const Monomial& m) const {
  const Piece& p = piece(weighted_degree(m, weights_));
  auto it = p.index.find(m);
  if (it == p.index.end() || p.to_standard[it->second] < 0) return std::nullopt;
  return static_cast<std::size_t>(p.to_standard[it->second]);
}

template <class F>
void GradedRing<F>::add_normal_form(const Piece& p, std::size_t monomial, const Elem& coeff, Vec<F>& out) const {
  for (const auto& [idx, c] : p.nf[monomial]) out[idx] = field_.add(out[idx], field_.mul(coeff, c));
}

template <class F>
RingElement<F> GradedRing<F>::one() const {
  return normal_form(Monomial(num_vars(), 0));
}

template <class F>
RingElement<F> GradedRing<F>::variable(std::size_t v) const {
  Monomial m(num_vars(), 0);
  m[v] = 1;
  return normal_form(m);
}

template <class F>
RingElement<F> GradedRing<F>::normal_form(const Monomial& m) const {
  int d = weighted_degree(m, weights_);
  const Piece& p = piece(d);
  RingElement<F> out{d, Vec<F>(p.standard.size(), field_.zero())};
  add_normal_form(p, p.index.at(m), field_.one(), out.coords);
  return out;
}

template <class F>
RingElement<F> GradedRing<F>::normal_form(const Polynomial<F>& f) const {
  if (f.is_zero()) throw InvalidInput("the zero polynomial has no degree; use zero(d)");
  const Piece& p = piece(*f.degree);
  RingElement<F> out{*f.degree, Vec<F>(p.standard.size(), field_.zero())};
  for (const auto& [m, c] : f.terms) add_normal_form(p, p.index.at(m), c, out.coords);
  return out;
}

template <class F>
RingElement<F> GradedRing<F>::parse(const std::string& text) const {
  return normal_form(to_field(field_, parse_polynomial(text, names_), weights_));
}

template <class F>
Polynomial<F> GradedRing<F>::to_polynomial(const RingElement<F>& a) const {
  Polynomial<F> out;
  const auto& basis = standard_monomials(a.degree);
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (!field_.is_zero(a.coords[i])) out.terms.emplace_back(basis[i], a.coords[i]);
  if (!out.terms.empty()) out.degree = a.degree;
  return out;
}

template <class F>
std::string GradedRing<F>::format(const RingElement<F>& a) const {
  return format_polynomial(field_, to_polynomial(a), names_);
}

template <class F>
bool GradedRing<F>::is_zero(const RingElement<F>& a) const {
  return is_zero_vector(field_, std::span<const Elem>(a.coords));
}

template <class F>
RingElement<F> GradedRing<F>::multiply(const RingElement<F>& a, const RingElement<F>& b) const {
  const int d = a.degree + b.degree;
  const Piece& target = piece(d);
  RingElement<F> out{d, Vec<F>(target.standard.size(), field_.zero())};
  const auto& sa = standard_monomials(a.degree);
  const auto& sb = standard_monomials(b.degree);
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (field_.is_zero(a.coords[i])) continue;
    for (std::size_t j = 0; j < b.coords.size(); ++j) {
      if (field_.is_zero(b.coords[j])) continue;
      add_normal_form(target, target.index.at(monomial_product(sa[i], sb[j])), field_.mul(a.coords[i], b.coords[j]),
                      out.coords);
    }
  }
  return out;
}

template <class F>
const DenseMatrix<F>& GradedRing<F>::variable_action(std::size_t v, int d) const {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(v, d);
  auto it = var_actions_.find(key);
  if (it != var_actions_.end()) return it->second;
  const int e = d + weights_[v];
  DenseMatrix<F> m(dim(e), dim(d), field_);
  if (d >= 0) {
    const Piece& src = piece(d);
    const Piece& dst = piece(e);
    for (std::size_t c = 0; c < src.standard.size(); ++c) {
      Monomial prod = src.standard[c];
      ++prod[v];
      for (const auto& [idx, coeff] : dst.nf[dst.index.at(prod)]) m(idx, c) = coeff;
    }
  }
  return var_actions_.emplace(key, std::move(m)).first->second;
}

template <class F>
DenseMatrix<F> GradedRing<F>::multiplication_map(const RingElement<F>& f, int d) const {
  const auto& basis = standard_monomials(d);
  std::vector<Vec<F>> cols;
  cols.reserve(basis.size());
  for (const auto& s : basis) cols.push_back(multiply(f, normal_form(s)).coords);
  return DenseMatrix<F>::from_columns(field_, dim(d + f.degree), cols);
}

template <class F>
std::string GradedRing<F>::describe() const {
  std::ostringstream os;
  os << field_.name() << "[";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) os << ",";
    os << names_[i];
    if (weights_[i] != 1) os << ":" << weights_[i];
  }
  os << "]";
  if (!ideal_.empty()) {
    os << "/(";
    for (std::size_t i = 0; i < ideal_.size(); ++i) {
      if (i) os << ", ";
      os << format_polynomial(field_, ideal_[i], names_);
    }
    os << ")";
  }
  return os.str();
}

template <class F>
VeronesePresentation<F> veronese_presentation(const GradedRing<F>& base, int d, int relation_degree_cap,
                                              int check_range) {
  if (!base.is_polynomial_ring() || !base.is_standard_graded())
    throw InvalidInput("Veronese presentation needs a standard graded polynomial ring");
  if (d < 1) throw InvalidInput("Veronese degree must be positive");
  const F& field = base.field();
  VeronesePresentation<F> out;
  out.relation_degree_cap = relation_degree_cap;
  out.variable_monomials = base.monomial_basis(d);
  const std::size_t nvars = out.variable_monomials.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("t" + std::to_string(i + 1));
  auto free_t = GradedRing<F>::polynomial_ring(field, names);

  std::vector<Polynomial<F>> relations;
  Subspace<F> previous_kernel;
  for (int e = 1; e <= relation_degree_cap; ++e) {
    const auto& tmonos = free_t->monomial_basis(e);
    const auto& smonos = base.monomial_basis(d * e);
    DenseMatrix<F> subst(smonos.size(), tmonos.size(), field);
    for (std::size_t c = 0; c < tmonos.size(); ++c) {
      Monomial image(base.num_vars(), 0);
      for (std::size_t v = 0; v < nvars; ++v)
        for (int k = 0; k < tmonos[c][v]; ++k) image = monomial_product(image, out.variable_monomials[v]);
      subst(*base.monomial_index(image), c) = field.one();
    }
    auto ker = kernel_basis(field, subst);
    Subspace<F> generated(field, tmonos.size());
    if (e > 1) {
      for (std::size_t v = 0; v < nvars; ++v)
        for (const auto& row : previous_kernel.rows()) {
          Vec<F> shifted(tmonos.size(), field.zero());
          const auto& lower = free_t->monomial_basis(e - 1);
          for (std::size_t k = 0; k < row.size(); ++k) {
            if (field.is_zero(row[k])) continue;
            Monomial m = lower[k];
            ++m[v];
            shifted[*free_t->monomial_index(m)] = row[k];
          }
          generated.insert(std::move(shifted));
        }
    }
    Subspace<F> kernel_space(field, tmonos.size());
    for (std::size_t k = 0; k < ker.cols(); ++k) {
      Vec<F> vec = ker.column(k);
      kernel_space.insert(vec);
      if (generated.insert(vec)) {
        Polynomial<F> rel;
        for (std::size_t c = 0; c < vec.size(); ++c)
          if (!field.is_zero(vec[c])) rel.terms.emplace_back(tmonos[c], vec[c]);
        rel.degree = e;
        relations.push_back(std::move(rel));
      }
    }
    previous_kernel = std::move(kernel_space);
  }

  out.ring = GradedRing<F>::create(field, names, std::vector<int>(nvars, 1), std::move(relations));
  for (int i = 0; i <= check_range; ++i) {
    if (out.ring->dim(i) != base.dim(i * d))
      throw CertificateError("Veronese relations of degree <= " + std::to_string(relation_degree_cap) +
                             " do not reproduce the Hilbert function in degree " + std::to_string(i));
  }
  out.certified_through = check_range;
  return out;
}

template class GradedRing<PrimeField>;
template class GradedRing<RationalField>;
template VeronesePresentation<PrimeField> veronese_presentation(const GradedRing<PrimeField>&, int, int, int);
template VeronesePresentation<RationalField> veronese_presentation(const GradedRing<RationalField>&, int, int, int);

}  // namespace creg
