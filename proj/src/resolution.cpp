#include "creg/resolution.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

std::size_t BettiTable::at(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second;
}

std::size_t BettiTable::column_total(int i) const {
  std::size_t t = 0;
  for (const auto& [key, v] : entries)
    if (key.first == i) t += v;
  return t;
}

bool BettiTable::all_complete() const {
  return std::all_of(status.begin(), status.end(), [](ColumnStatus s) { return s == ColumnStatus::Complete; });
}

std::optional<int> BettiTable::length() const {
  std::optional<int> out;
  for (const auto& [key, v] : entries) out = std::max(out.value_or(key.first), key.first);
  return out;
}

std::optional<int> BettiTable::max_slope() const {
  std::optional<int> out;
  for (const auto& [key, v] : entries) {
    int s = key.second - key.first;
    out = std::max(out.value_or(s), s);
  }
  return out;
}

std::optional<int> BettiTable::max_degree(int i) const {
  std::optional<int> out;
  for (const auto& [key, v] : entries)
    if (key.first == i) out = std::max(out.value_or(key.second), key.second);
  return out;
}

std::optional<int> BettiTable::min_degree(int i) const {
  std::optional<int> out;
  for (const auto& [key, v] : entries)
    if (key.first == i) out = std::min(out.value_or(key.second), key.second);
  return out;
}

std::string BettiTable::render() const {
  std::ostringstream os;
  if (entries.empty()) {
    os << "(zero)\n";
    return os.str();
  }
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& [key, v] : entries) {
    lo = std::min(lo, key.second - key.first);
    hi = std::max(hi, key.second - key.first);
  }
  const int cols = hom_cap + 1;
  std::vector<std::string> header, totals;
  std::vector<std::vector<std::string>> rows(hi - lo + 1, std::vector<std::string>(cols, "."));
  std::vector<std::size_t> width(cols, 1);
  for (int i = 0; i < cols; ++i) {
    header.push_back(std::to_string(i));
    totals.push_back(std::to_string(column_total(i)));
  }
  for (const auto& [key, v] : entries) rows[key.second - key.first - lo][key.first] = std::to_string(v);
  for (int i = 0; i < cols; ++i) {
    width[i] = std::max({width[i], header[i].size(), totals[i].size()});
    for (const auto& r : rows) width[i] = std::max(width[i], r[i].size());
  }
  std::size_t label = std::string("total:").size();
  for (int r = lo; r <= hi; ++r) label = std::max(label, std::to_string(r).size() + 1);
  auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
  os << std::string(label, ' ');
  for (int i = 0; i < cols; ++i) os << ' ' << pad_left(header[i], width[i]);
  os << '\n' << pad_left("total:", label);
  for (int i = 0; i < cols; ++i) os << ' ' << pad_left(totals[i], width[i]);
  os << '\n';
  for (int r = lo; r <= hi; ++r) {
    os << pad_left(std::to_string(r) + ":", label);
    for (int i = 0; i < cols; ++i) os << ' ' << pad_left(rows[r - lo][i], width[i]);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Resolution

template <class F>
Resolution<F>::Resolution(ModulePtr<F> module, int hom_cap)
    : module_(std::move(module)), hom_cap_(hom_cap), next_degree_(module_->lowest_degree()) {
  if (hom_cap < 0) throw InvalidInput("homological cap must be nonnegative");
  const auto& ring = module_->ring();
  for (int l = 0; l <= hom_cap_; ++l) free_.push_back(std::make_unique<FreeModule<F>>(ring));
  for (int l = 0; l <= hom_cap_; ++l) {
    const GradedModule<F>* target = l == 0 ? module_.get() : free_[l - 1].get();
    maps_.push_back(std::make_unique<FreeMap<F>>(free_[l].get(), target));
  }
  kernels_.resize(hom_cap_);
  kernel_dims_.resize(hom_cap_);
}

template <class F>
void Resolution<F>::extend_to(int degree_cap) {
  const auto& ring = *module_->ring();
  const F& f = ring.field();
  const int lowest = module_->lowest_degree();
  for (int d = next_degree_; d <= degree_cap; ++d) {
    if (d <= module_->generator_bound()) {
      const std::size_t n = module_->dim(d);
      if (n > 0) {
        Subspace<F> generated(f, n);
        for (std::size_t v = 0; v < ring.num_vars() && !generated.is_full(); ++v) {
          const int e = d - ring.weight(v);
          if (e < lowest) continue;
          const std::size_t ne = module_->dim(e);
          Vec<F> unit(ne, f.zero());
          for (std::size_t k = 0; k < ne && !generated.is_full(); ++k) {
            unit[k] = f.one();
            generated.insert(module_->act(v, e, unit));
            unit[k] = f.zero();
          }
        }
        Vec<F> unit(n, f.zero());
        for (std::size_t k = 0; k < n && !generated.is_full(); ++k) {
          unit[k] = f.one();
          if (generated.insert(unit)) {
            free_[0]->add_generator(d);
            maps_[0]->add_image(unit);
          }
          unit[k] = f.zero();
        }
      }
    }
    for (int l = 0; l < hom_cap_; ++l) {
      const auto& src = *free_[l];
      const std::size_t n = src.dim(d);
      Subspace<F> kernel(f, n);
      if (n > 0) {
        auto basis = kernel_basis(f, maps_[l]->matrix(d));
        if (basis.cols() > 0) {
          for (std::size_t v = 0; v < ring.num_vars() && kernel.dim() < basis.cols(); ++v) {
            auto it = kernels_[l].find(d - ring.weight(v));
            if (it == kernels_[l].end()) continue;
            for (const auto& row : it->second.rows()) kernel.insert(src.act(v, it->first, row));
          }
          for (std::size_t c = 0; c < basis.cols() && kernel.dim() < basis.cols(); ++c) {
            auto col = basis.column(c);
            if (kernel.insert(col)) {
              free_[l + 1]->add_generator(d);
              maps_[l + 1]->add_image(std::move(col));
            }
          }
        }
      }
      kernel_dims_[l][d] = kernel.dim();
      kernels_[l].emplace(d, std::move(kernel));
      // Only the last max_weight degrees feed into later ones.
      kernels_[l].erase(kernels_[l].begin(), kernels_[l].lower_bound(d - ring.max_weight() + 1));
    }
  }
  next_degree_ = std::max(next_degree_, degree_cap + 1);
}

template <class F>
std::size_t Resolution<F>::kernel_dim(int level, int d) const {
  auto it = kernel_dims_[level].find(d);
  return it == kernel_dims_[level].end() ? 0 : it->second;
}

template <class F>
bool Resolution<F>::kernel_vanishes(int level) const {
  for (const auto& [d, k] : kernel_dims_[level])
    if (k > 0) return false;
  return true;
}

template <class F>
BettiTable Resolution<F>::betti() const {
  BettiTable t;
  t.hom_cap = hom_cap_;
  t.degree_cap = degree_cap();
  t.status.assign(hom_cap_ + 1, ColumnStatus::Truncated);
  t.base = module_->ring()->is_polynomial_ring() ? ResolutionBase::OverS : ResolutionBase::OverR;
  for (int i = 0; i <= hom_cap_; ++i)
    for (int a : free_[i]->twists()) ++t.entries[{i, a}];
  return t;
}

template <class F>
bool hilbert_certificate(const GradedModule<F>& m, const BettiTable& table, int lo, int hi) {
  const auto& ring = *m.ring();
  for (int d = lo; d <= hi; ++d) {
    long long sum = 0;
    for (const auto& [key, b] : table.entries) {
      long long term = static_cast<long long>(b) * static_cast<long long>(ring.dim(d - key.second));
      sum += key.first % 2 == 0 ? term : -term;
    }
    if (sum != static_cast<long long>(m.dim(d))) return false;
  }
  return true;
}

template <class F>
int betti_degree_bound(const PresentedModule<F>& m, int max_degree) {
  const auto& ring = *m.ring();
  const auto& cover = m.cover();
  const auto& twists = m.twists();
  const auto weights = ring.weights();
  auto divides = [](const Monomial& a, const Monomial& b) {
    for (std::size_t v = 0; v < a.size(); ++v)
      if (a[v] > b[v]) return false;
    return true;
  };
  // a > b in reverse lex: the last differing exponent is smaller in a.
  auto revlex_greater = [](const Monomial& a, const Monomial& b) {
    for (std::size_t v = a.size(); v-- > 0;)
      if (a[v] != b[v]) return a[v] < b[v];
    return false;
  };
  auto lcm = [](Monomial a, const Monomial& b) {
    for (std::size_t v = 0; v < a.size(); ++v) a[v] = std::max(a[v], b[v]);
    return a;
  };

  std::vector<std::vector<Monomial>> initial(twists.size());
  const int lowest = m.lowest_degree();
  int need = std::max(m.generator_bound(), m.is_free() ? lowest : m.max_relation_degree());
  for (int d = lowest; d <= need; ++d) {
    if (d > max_degree)
      throw CapExhausted("Groebner basis of the relations not found through degree " + std::to_string(max_degree));
    // Reorder each block by reverse lex and re-echelonize.
    std::vector<std::size_t> order;
    std::vector<std::size_t> block_of;
    for (std::size_t g = 0; g < twists.size(); ++g) {
      const auto& monos = ring.monomial_basis(d - twists[g]);
      const std::size_t base = cover.offset(g, d);
      std::vector<std::size_t> idx(monos.size());
      for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = t;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return revlex_greater(monos[a], monos[b]); });
      for (std::size_t t : idx) {
        order.push_back(base + t);
        block_of.push_back(g);
      }
    }
    const auto& space = m.relation_space(d);
    Subspace<F> reordered(ring.field(), order.size());
    for (const auto& row : space.rows()) {
      Vec<F> v(order.size());
      for (std::size_t k = 0; k < order.size(); ++k) v[k] = row[order[k]];
      reordered.insert(std::move(v));
    }
    for (std::size_t p : reordered.pivots()) {
      const std::size_t g = block_of[p];
      const Monomial& mono = ring.monomial_basis(d - twists[g])[order[p] - cover.offset(g, d)];
      auto& lead = initial[g];
      if (std::any_of(lead.begin(), lead.end(), [&](const Monomial& h) { return divides(h, mono); })) continue;
      for (const auto& h : lead) need = std::max(need, twists[g] + weighted_degree(lcm(h, mono), weights));
      lead.push_back(mono);
    }
  }

  int bound = lowest;
  for (std::size_t g = 0; g < twists.size(); ++g) {
    Monomial all(ring.num_vars(), 0);
    for (const auto& h : initial[g]) all = lcm(all, h);
    bound = std::max(bound, twists[g] + weighted_degree(all, weights));
  }
  return bound;
}

template <class F>
CompleteResolution<F> resolve_completely(PresentedPtr<F> module, int max_degree) {
  const auto& ring = *module->ring();
  if (!ring.is_polynomial_ring()) throw InvalidInput("complete resolutions are computed over polynomial rings only");
  if (module->is_zero()) throw ZeroModuleError("cannot resolve the zero module");
  const int n = static_cast<int>(ring.num_vars());
  const int bound = betti_degree_bound(*module, max_degree);
  if (bound > max_degree)
    throw CapExhausted("resolution needs degree " + std::to_string(bound) + ", past " + std::to_string(max_degree));
  auto res = std::make_shared<Resolution<F>>(module, n + 1);
  res->extend_to(bound);
  auto table = res->betti();
  int length = n;
  for (int p = 0; p <= n; ++p)
    if (res->kernel_vanishes(p)) {
      length = p;
      break;
    }
  if (!hilbert_certificate(*module, table, module->lowest_degree(), bound + n + 1))
    throw CertificateError("complete resolution fails its Hilbert function check");
  table.status.assign(table.hom_cap + 1, ColumnStatus::Complete);
  return {res, length, table};
}

void add_series(SeriesNumerator& a, const SeriesNumerator& b, long long scale) {
  for (const auto& [e, c] : b) {
    auto& x = a[e];
    x += scale * c;
    if (x == 0) a.erase(e);
  }
}

SeriesNumerator series_numerator(const BettiTable& table) {
  SeriesNumerator out;
  for (const auto& [key, b] : table.entries) {
    auto& c = out[key.second];
    c += key.first % 2 == 0 ? static_cast<long long>(b) : -static_cast<long long>(b);
    if (c == 0) out.erase(key.second);
  }
  return out;
}

template <class F>
PdReport pd_probe(ModulePtr<F> module, int hom_cap, int degree_cap) {
  Resolution<F> res(module, hom_cap + 1);
  res.extend_to(degree_cap);
  PdReport out;
  out.hom_cap = hom_cap;
  out.degree_cap = degree_cap;
  if (res.free_module(0).rank() == 0) throw ZeroModuleError("projective dimension of the zero module");
  auto table = res.betti();
  out.hilbert_certified = hilbert_certificate(*module, table, module->lowest_degree(), degree_cap);
  for (int p = 0; p <= hom_cap; ++p) {
    if (!res.kernel_vanishes(p)) continue;
    if (resolution_is_exact(res, p)) out.pd = p;
    break;
  }
  return out;
}

template <class F>
BettiTable tor_via_residue_field(const GradedModule<F>& m, const Resolution<F>& residue, int hom_cap,
                                 int degree_cap) {
  const F& f = m.field();
  const auto& ring = *m.ring();
  const int lowest = m.lowest_degree();
  if (residue.hom_cap() < hom_cap + 1 || residue.degree_cap() < degree_cap - lowest)
    throw InvalidInput("residue field resolution does not reach the requested caps");

  std::map<std::pair<Monomial, int>, DenseMatrix<F>> monomial_cache;
  auto monomial_matrix = [&](const Monomial& s, int e) -> const DenseMatrix<F>& {
    auto key = std::make_pair(s, e);
    auto it = monomial_cache.find(key);
    if (it == monomial_cache.end()) it = monomial_cache.emplace(key, monomial_action(m, s, e)).first;
    return it->second;
  };

  // C_i in degree j is the direct sum over generators k of F_i of M_{j - c_k}.
  auto chain_dim = [&](int i, int j) {
    std::size_t t = 0;
    for (int c : residue.free_module(i).twists()) t += m.dim(j - c);
    return t;
  };
  // Rank of the differential C_i -> C_{i-1} in degree j.
  auto differential_rank = [&](int i, int j) -> std::size_t {
    if (i == 0) return 0;
    const auto& src = residue.free_module(i);
    const auto& tgt = residue.free_module(i - 1);
    const auto& dmap = residue.map(i);
    DenseMatrix<F> mat(chain_dim(i - 1, j), chain_dim(i, j), f);
    if (mat.rows() == 0 || mat.cols() == 0) return 0;
    std::size_t col0 = 0;
    for (std::size_t k = 0; k < src.rank(); ++k) {
      const int ck = src.twists()[k];
      const std::size_t ncols = m.dim(j - ck);
      if (ncols == 0) continue;
      std::size_t row0 = 0;
      for (std::size_t kk = 0; kk < tgt.rank(); ++kk) {
        const int ckk = tgt.twists()[kk];
        const std::size_t nrows = m.dim(j - ckk);
        if (nrows > 0) {
          auto entry = tgt.component(dmap.image(k), ck, kk);
          const auto& basis = ring.standard_monomials(entry.degree);
          for (std::size_t t = 0; t < entry.coords.size(); ++t) {
            if (f.is_zero(entry.coords[t])) continue;
            const auto& act = monomial_matrix(basis[t], j - ck);
            for (std::size_t r = 0; r < nrows; ++r)
              for (std::size_t c = 0; c < ncols; ++c)
                if (!f.is_zero(act(r, c)))
                  mat(row0 + r, col0 + c) = f.add(mat(row0 + r, col0 + c), f.mul(entry.coords[t], act(r, c)));
          }
        }
        row0 += nrows;
      }
      col0 += ncols;
    }
    return rank(f, mat);
  };

  BettiTable t;
  t.hom_cap = hom_cap;
  t.degree_cap = degree_cap;
  t.status.assign(hom_cap + 1, ColumnStatus::Truncated);
  t.base = ring.is_polynomial_ring() ? ResolutionBase::OverS : ResolutionBase::OverR;
  for (int j = lowest; j <= degree_cap; ++j) {
    std::size_t rank_down = 0;
    for (int i = 0; i <= hom_cap; ++i) {
      std::size_t rank_up = differential_rank(i + 1, j);
      std::size_t tor = chain_dim(i, j) - rank_down - rank_up;
      if (tor > 0) t.entries[{i, j}] = tor;
      rank_down = rank_up;
    }
  }
  return t;
}

#define CREG_INSTANTIATE_RESOLUTION(Field)                                                           \
  template class Resolution<Field>;                                                                  \
  template bool hilbert_certificate(const GradedModule<Field>&, const BettiTable&, int, int);       \
  template CompleteResolution<Field> resolve_completely(PresentedPtr<Field>, int);                   \
  template int betti_degree_bound(const PresentedModule<Field>&, int);                      \
  template PdReport pd_probe(ModulePtr<Field>, int, int);                                            \
  template BettiTable tor_via_residue_field(const GradedModule<Field>&, const Resolution<Field>&, int, int);

CREG_INSTANTIATE_RESOLUTION(PrimeField)
CREG_INSTANTIATE_RESOLUTION(RationalField)

}  // namespace creg
