#include "creg/regularity.hpp"

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

std::string to_string(RegStatus s) {
  switch (s) {
    case RegStatus::Exact:
      return "Exact";
    case RegStatus::ExactIfKoszul:
      return "ExactIfKoszul";
    case RegStatus::LowerBound:
      return "LowerBound";
    case RegStatus::Unknown:
      break;
  }
  return "Unknown";
}

std::string to_string(Linearity l) {
  switch (l) {
    case Linearity::Yes:
      return "yes";
    case Linearity::No:
      return "no";
    case Linearity::YesUpToCaps:
      break;
  }
  return "yes-up-to-caps";
}

RegularityValue tor_regularity(const BettiTable& table) {
  if (table.empty()) throw EmptyTableError("Betti table is empty");
  RegularityValue r;
  r.value = table.max_slope();
  if (table.all_complete()) {
    r.status = RegStatus::Exact;
    r.certificate = "complete resolution";
  } else {
    r.status = RegStatus::LowerBound;
    r.certificate = "box i<=" + std::to_string(table.hom_cap) + ", j<=" + std::to_string(table.degree_cap);
  }
  return r;
}

Linearity is_linear_resolution(const BettiTable& table, int q) {
  if (table.empty()) throw EmptyTableError("Betti table is empty");
  for (const auto& [key, b] : table.entries)
    if (key.second - key.first != q) return Linearity::No;
  return table.all_complete() ? Linearity::Yes : Linearity::YesUpToCaps;
}

template <class F>
int default_degree_cap(const GradedModule<F>& m) {
  return m.generator_bound() + 10;
}

template <class F>
TorRegularityReport tor_regularity(PresentedPtr<F> m, int hom_cap, int degree_cap) {
  if (m->is_zero()) throw ZeroModuleError("Tor-regularity of the zero module");
  const auto& ring = *m->ring();
  TorRegularityReport out;
  if (ring.is_polynomial_ring()) {
    auto complete = resolve_completely<F>(m);
    out.table = complete.table;
    out.pd = complete.length;
    out.reg = tor_regularity(out.table);
    out.reg.certificate = "complete resolution over the polynomial ring";
    return out;
  }

  Resolution<F> res(m, hom_cap + 1);
  res.extend_to(degree_cap);
  out.table = res.betti();
  for (auto it = out.table.entries.begin(); it != out.table.entries.end();)
    it = it->first.first > hom_cap ? out.table.entries.erase(it) : std::next(it);
  out.table.hom_cap = hom_cap;
  out.table.status.resize(hom_cap + 1);

  for (int p = 0; p <= hom_cap; ++p) {
    if (!res.kernel_vanishes(p)) continue;
    if (resolution_is_exact(res, p)) {
      out.pd = p;
      out.table.status.assign(hom_cap + 1, ColumnStatus::Complete);
    }
    break;
  }
  out.reg = tor_regularity(out.table);
  if (out.pd) {
    out.reg.certificate = "finite projective dimension " + std::to_string(*out.pd);
  } else if (m->is_free() && degree_cap >= m->generator_bound()) {
    out.reg = {out.table.max_degree(0), RegStatus::Exact, "free module: largest twist"};
  } else if (ring.is_standard_graded() && ring.dim(2) == 0 && degree_cap >= m->generator_bound() + 1 &&
             out.reg.value == out.table.max_degree(0)) {
    out.reg.status = RegStatus::Exact;
    out.reg.certificate = "m^2 = 0: largest generator degree";
  }
  return out;
}

template <class F>
KoszulReport koszul_probe(RingPtr<F> ring, int hom_cap, int degree_cap) {
  if (!ring->is_standard_graded()) throw GradingError("Koszul probe needs a standard grading");
  Resolution<F> res(residue_field(ring), hom_cap);
  res.extend_to(degree_cap);
  KoszulReport out;
  out.hom_cap = hom_cap;
  out.degree_cap = degree_cap;
  out.table = res.betti();
  for (const auto& [key, b] : out.table.entries)
    if (key.first != key.second) {
      out.witness = key;
      break;
    }
  out.positive = !out.witness;
  return out;
}

#define CREG_INSTANTIATE_REGULARITY(Field)                                               \
  template int default_degree_cap(const GradedModule<Field>&);                           \
  template TorRegularityReport tor_regularity(PresentedPtr<Field>, int, int);           \
  template KoszulReport koszul_probe(RingPtr<Field>, int, int);

CREG_INSTANTIATE_REGULARITY(PrimeField)
CREG_INSTANTIATE_REGULARITY(RationalField)

}  // namespace creg
