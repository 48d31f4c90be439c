#include "creg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"

namespace creg {

const std::vector<std::string> kCheckNames = {"main_inequalities",  "finite_pd_equality", "converse_witness",
                                              "truncation_theorem", "mpower_sandwich",    "polynomial_characterization"};

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::HoldsUpToCaps:
      return "holds-up-to-caps";
    case Verdict::Violated:
      return "violated";
    case Verdict::PreconditionUnmet:
      return "precondition-unmet";
    case Verdict::Error:
      return "error";
    case Verdict::Skipped:
      break;
  }
  return "skipped";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["instance"] = instance;
  j["module"] = module;
  j["regL_M"] = regL_M ? nlohmann::json(*regL_M) : nlohmann::json(nullptr);
  j["regL_R"] = regL_R ? nlohmann::json(*regL_R) : nlohmann::json(nullptr);
  if (regT_M && regT_M->value) {
    j["regT_M"] = *regT_M->value;
    j["regT_status"] = to_string(regT_M->status);
  } else {
    j["regT_M"] = nullptr;
    j["regT_status"] = nullptr;
  }
  j["verdict"] = to_string(verdict);
  j["witness"] = witness;
  j["detail"] = detail;
  j["millis"] = millis;
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "[" << to_string(verdict) << "] " << check << " " << instance;
  if (!module.empty()) os << "/" << module;
  os << ":";
  if (regL_M) os << " regL_M=" << *regL_M;
  if (regL_R) os << " regL_R=" << *regL_R;
  if (regT_M && regT_M->value) os << " regT_M=" << *regT_M->value << " (" << to_string(regT_M->status) << ")";
  if (!witness.empty()) os << " | " << witness;
  if (!detail.empty()) os << " | " << detail;
  os << " (" << millis << " ms)";
  return os.str();
}

bool CorpusResult::any_violated() const {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return r.verdict == Verdict::Violated || r.verdict == Verdict::Error; });
}

// ---------------------------------------------------------------------------
// Analyzer

template <class F>
Analyzer<F>::Analyzer(Instance<F> inst, Caps overrides) : inst_(std::move(inst)), caps_(overrides) {}

template <class F>
int Analyzer<F>::hom_cap() const {
  if (caps_.hom_cap) return *caps_.hom_cap;
  return inst_.spec.hom_cap.value_or(6);
}

template <class F>
int Analyzer<F>::degree_cap(const GradedModule<F>& m) const {
  const int floor = m.generator_bound() + 1;
  if (caps_.deg_cap) return std::max(*caps_.deg_cap, floor);
  if (inst_.spec.deg_cap) return std::max(*inst_.spec.deg_cap, floor);
  return m.generator_bound() + inst_.spec.deg_slack;
}

template <class F>
const std::optional<KoszulReport>& Analyzer<F>::koszul() {
  if (!koszul_) {
    if (!inst_.ring->is_standard_graded()) {
      koszul_.emplace(std::nullopt);
    } else {
      auto k = residue_field<F>(inst_.ring);
      koszul_.emplace(koszul_probe<F>(inst_.ring, hom_cap(), degree_cap(*k)));
    }
  }
  return *koszul_;
}

template <class F>
bool Analyzer<F>::koszul_positive() {
  if (inst_.ring->is_polynomial_ring() && inst_.ring->is_standard_graded()) return true;
  const auto& k = koszul();
  return k && k->positive;
}

template <class F>
const LocalCohomology<F>& Analyzer<F>::cohomology(const std::string& module) {
  auto it = lc_.find(module);
  if (it == lc_.end()) it = lc_.emplace(module, std::make_unique<LocalCohomology<F>>(inst_.module(module))).first;
  return *it->second;
}

template <class F>
const LocalCohomology<F>& Analyzer<F>::ring_cohomology() {
  if (!ring_lc_) ring_lc_ = std::make_unique<LocalCohomology<F>>(ring_module<F>(inst_.ring));
  return *ring_lc_;
}

template <class F>
int Analyzer<F>::regL(const std::string& module) {
  return *local_regularity(cohomology(module)).value;
}

template <class F>
int Analyzer<F>::regL_R() {
  return *local_regularity(ring_cohomology()).value;
}

template <class F>
TorRegularityReport Analyzer<F>::tor_of(PresentedPtr<F> m, std::optional<int> cap) {
  return tor_regularity<F>(m, hom_cap(), cap.value_or(degree_cap(*m)));
}

template <class F>
const TorRegularityReport& Analyzer<F>::tor(const std::string& module) {
  auto it = tor_.find(module);
  if (it != tor_.end()) return it->second;
  auto report = tor_of(inst_.module(module));
  auto& reg = report.reg;
  if (reg.status == RegStatus::LowerBound && koszul_positive()) {
    const auto& trunc = inst_.truncation_of[inst_.index_of(module)];
    if (trunc) {
      const int q = trunc->first;
      bool source_ok = trunc->second.empty();  // m^j = R_{>=j}, and reg^T(R) = 0
      if (!source_ok) {
        const auto& src = tor(trunc->second).reg;
        source_ok = src.is_exact() && *src.value <= q;
      }
      if (source_ok && *reg.value == q && is_linear_resolution(report.table, q) != Linearity::No) {
        reg.status = RegStatus::ExactIfKoszul;
        reg.certificate = "q-linear truncation at q=" + std::to_string(q) + " with q >= reg^T of its source";
      }
    }
    if (reg.status == RegStatus::LowerBound && *reg.value == regL(module)) {
      reg.status = RegStatus::ExactIfKoszul;
      reg.certificate = "box value meets the bound reg^L(M) + reg^T(K)";
    }
  }
  return tor_.emplace(module, std::move(report)).first->second;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

class Stopwatch {
 public:
  long long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Fn>
VerificationReport guarded(const std::string& check, const std::string& instance, const std::string& module, Fn fn) {
  Stopwatch sw;
  VerificationReport r;
  try {
    r = fn();
  } catch (const ZeroModuleError& e) {
    r.verdict = Verdict::PreconditionUnmet;
    r.detail = e.what();
  } catch (const Error& e) {
    r.verdict = Verdict::Error;
    r.detail = e.what();
  }
  r.check = check;
  r.instance = instance;
  r.module = module;
  r.millis = sw.millis();
  return r;
}

}  // namespace

template <class F>
VerificationReport check_main_inequalities(Analyzer<F>& a, const std::string& module) {
  return guarded("main_inequalities", a.instance().spec.name, module, [&] {
    VerificationReport r;
    const int regL_M = a.regL(module);
    const int regL_R = a.regL_R();
    const auto& t = a.tor(module).reg;
    r.regL_M = regL_M;
    r.regL_R = regL_R;
    r.regT_M = t;
    const int v = *t.value;
    const bool exact = t.is_exact();
    const int lower = regL_M - regL_R;

    enum class State { Certified, Unknown, Violated, NotAsserted };
    State lower_state = v >= lower ? State::Certified : exact ? State::Violated : State::Unknown;

    // reg^T(K): 0 under a positive probe, otherwise the box value, which is a
    // lower bound and therefore keeps a certified upper inequality certified.
    int regT_K = 0;
    bool koszul = a.koszul_positive();
    if (!koszul && a.koszul()) regT_K = *a.koszul()->table.max_slope();
    const int upper = regL_M + regT_K;
    State upper_state;
    if (koszul) {
      upper_state = v > upper ? State::Violated : exact ? State::Certified : State::Unknown;
    } else {
      upper_state = exact && v <= upper ? State::Certified : State::NotAsserted;
    }

    std::ostringstream w;
    w << "lower=" << lower << " regT=" << v << " upper=" << upper;
    if (v == lower) w << " (left equality)";
    if (v == upper && upper_state != State::NotAsserted) w << " (right equality)";
    if (lower < v && v < upper) w << " (strict)";
    r.witness = w.str();
    if (upper_state == State::NotAsserted) r.detail = "upper inequality not asserted: Koszul probe negative";

    if (lower_state == State::Violated || upper_state == State::Violated)
      r.verdict = Verdict::Violated;
    else if (lower_state == State::Certified && upper_state != State::Unknown)
      r.verdict = Verdict::Holds;
    else
      r.verdict = Verdict::HoldsUpToCaps;
    return r;
  });
}

template <class F>
VerificationReport check_finite_pd_equality(Analyzer<F>& a, const std::string& module) {
  return guarded("finite_pd_equality", a.instance().spec.name, module, [&] {
    VerificationReport r;
    const auto& tr = a.tor(module);
    r.regT_M = tr.reg;
    if (!tr.pd) {
      r.verdict = Verdict::PreconditionUnmet;
      r.detail = "pd not certified finite within caps";
      return r;
    }
    r.regL_M = a.regL(module);
    r.regL_R = a.regL_R();
    const int lhs = *r.regL_M - *r.regL_R;
    r.witness = "pd=" + std::to_string(*tr.pd) + " regL_M-regL_R=" + std::to_string(lhs) +
                " regT=" + std::to_string(*tr.reg.value);
    r.verdict = lhs == *tr.reg.value ? Verdict::Holds : Verdict::Violated;
    return r;
  });
}

template <class F>
VerificationReport check_converse_witness(Analyzer<F>& a, const std::string& module, int pd_hom_cap) {
  return guarded("converse_witness", a.instance().spec.name, module, [&] {
    VerificationReport r;
    auto m = a.instance().module(module);
    auto pd = pd_probe<F>(m, pd_hom_cap, a.degree_cap(*m));
    const auto& t = a.tor(module).reg;
    r.regL_M = a.regL(module);
    r.regL_R = a.regL_R();
    r.regT_M = t;
    if (pd.pd) {
      r.verdict = Verdict::Skipped;
      r.detail = "pd=" + std::to_string(*pd.pd) + " is finite";
      return r;
    }
    const bool equal = *t.value == *r.regL_M - *r.regL_R;
    if (!equal) {
      r.verdict = Verdict::Skipped;
      r.detail = "equality does not hold; not a witness";
      return r;
    }
    r.witness = "equality holds while pd_probe does not terminate at hom_cap " + std::to_string(pd_hom_cap);
    r.verdict = t.is_exact() ? Verdict::Holds : Verdict::HoldsUpToCaps;
    return r;
  });
}

template <class F>
VerificationReport check_truncation_theorem(Analyzer<F>& a, const std::string& module) {
  return guarded("truncation_theorem", a.instance().spec.name, module, [&] {
    VerificationReport r;
    if (!a.koszul_positive()) {
      r.verdict = Verdict::PreconditionUnmet;
      r.detail = "Koszul probe not positive";
      return r;
    }
    const auto& t = a.tor(module).reg;
    r.regT_M = t;
    const int q0 = *t.value;
    const bool exact = t.is_exact();
    auto m = a.instance().module(module);
    const int base_cap = a.degree_cap(*m);
    bool violated = false, all_definite = true;
    std::ostringstream w;
    for (int q : {q0 - 1, q0, q0 + 1}) {
      PresentedPtr<F> tq;
      try {
        tq = truncate<F>(m, q);
      } catch (const ZeroTruncationError&) {
        w << "q=" << q << ":zero ";
        continue;
      }
      auto tab = a.tor_of(tq, std::max(base_cap, tq->generator_bound() + 2)).table;
      auto lin = is_linear_resolution(tab, q);
      w << "q=" << q << ":" << to_string(lin) << " ";
      const bool expect_known = q < q0 || exact;
      const bool expect_linear = q >= q0;
      if (!expect_known) {
        all_definite = false;
        continue;
      }
      if (expect_linear && lin == Linearity::No) violated = true;
      if (!expect_linear && lin == Linearity::Yes) violated = true;
      if (expect_linear && lin != Linearity::Yes) all_definite = false;
      if (!expect_linear && lin != Linearity::No) all_definite = false;
    }
    r.witness = w.str();
    if (!r.witness.empty()) r.witness.pop_back();
    r.verdict = violated ? Verdict::Violated : all_definite ? Verdict::Holds : Verdict::HoldsUpToCaps;
    return r;
  });
}

template <class F>
VerificationReport check_mpower_sandwich(Analyzer<F>& a, int j) {
  return guarded("mpower_sandwich", a.instance().spec.name, "m^" + std::to_string(j), [&] {
    VerificationReport r;
    if (!a.koszul_positive()) {
      r.verdict = Verdict::PreconditionUnmet;
      r.detail = "Koszul probe not positive";
      return r;
    }
    auto [depth, dim] = depth_dim(a.ring_cohomology());
    (void)dim;
    if (depth == 0) {
      r.verdict = Verdict::PreconditionUnmet;
      r.detail = "depth(R) = 0";
      return r;
    }
    const int rr = a.regL_R();
    auto mj = power_ideal_module<F>(a.ring(), j);
    LocalCohomology<F> lc(mj);
    const int regL = *local_regularity(lc).value;
    auto tr = a.tor_of(mj);
    if (tr.reg.status == RegStatus::LowerBound && is_linear_resolution(tr.table, j) != Linearity::No &&
        *tr.reg.value == j) {
      tr.reg.status = RegStatus::ExactIfKoszul;
      tr.reg.certificate = "j-linear truncation of R over a Koszul ring";
    }
    r.regL_M = regL;
    r.regL_R = rr;
    r.regT_M = tr.reg;
    const int v = *tr.reg.value;
    bool ok = regL == std::max(j, rr) && v == j;
    std::ostringstream w;
    w << "regL(m^j)=" << regL << " max(j,r)=" << std::max(j, rr) << " regT=" << v;
    if (0 < j && j < rr) {
      const bool strict = regL - rr == 0 && 0 < v && v < rr && rr == regL;
      w << " chain " << regL - rr << " < " << v << " < " << regL << (strict ? " strict" : " NOT strict");
      ok = ok && strict;
    }
    r.witness = w.str();
    r.verdict = !ok ? Verdict::Violated : tr.reg.is_exact() ? Verdict::Holds : Verdict::HoldsUpToCaps;
    return r;
  });
}

template <class F>
VerificationReport check_polynomial_characterization(std::vector<Analyzer<F>*> corpus) {
  return guarded("polynomial_characterization", "corpus", "", [&] {
    VerificationReport r;
    bool violated = false, missing = false;
    std::ostringstream w, missing_names;
    for (auto* a : corpus) {
      const auto& name = a->instance().spec.name;
      const bool polynomial = a->ring()->is_polynomial_ring() && a->ring()->is_standard_graded();
      if (polynomial) {
        for (const auto& [mod, ptr] : a->instance().modules) {
          const auto& t = a->tor(mod).reg;
          const int l = a->regL(mod);
          if (!t.is_exact() || *t.value != l) {
            violated = true;
            w << name << "/" << mod << ": regT=" << *t.value << " regL=" << l << "; ";
          }
        }
        continue;
      }
      if (!a->koszul_positive()) continue;
      std::vector<std::string> found;
      for (const auto& [mod, ptr] : a->instance().modules) {
        const auto& t = a->tor(mod).reg;
        if (t.is_exact() && *t.value != a->regL(mod))
          found.push_back(mod + ": regT=" + std::to_string(*t.value) + " regL=" + std::to_string(a->regL(mod)));
      }
      if (found.empty() && a->regL_R() != 0) found.push_back("R: regT=0 regL=" + std::to_string(a->regL_R()));
      if (!found.empty()) {
        w << name << " witnesses";
        for (const auto& f : found) w << " [" << f << "]";
        w << "; ";
      } else {
        missing = true;
        missing_names << name << " ";
      }
    }
    r.witness = w.str();
    if (missing) r.detail = "no certified witness for: " + missing_names.str();
    r.verdict = violated ? Verdict::Violated : missing ? Verdict::HoldsUpToCaps : Verdict::Holds;
    return r;
  });
}

// ---------------------------------------------------------------------------
// Corpus driver

namespace {

bool wanted(const CorpusOptions& o, const std::string& check) {
  return o.checks.empty() || std::find(o.checks.begin(), o.checks.end(), check) != o.checks.end();
}

template <class F>
void run_checks(Analyzer<F>& a, const CorpusOptions& o, CorpusResult& out, std::ostream* progress) {
  auto emit = [&](VerificationReport r) {
    if (progress) *progress << r.to_text() << std::endl;
    out.reports.push_back(std::move(r));
  };
  const bool polynomial = a.ring()->is_polynomial_ring();
  for (const auto& [mod, ptr] : a.instance().modules) {
    if (wanted(o, "main_inequalities")) emit(check_main_inequalities(a, mod));
    if (wanted(o, "finite_pd_equality")) emit(check_finite_pd_equality(a, mod));
    if (!polynomial && wanted(o, "converse_witness")) emit(check_converse_witness(a, mod));
    if (wanted(o, "truncation_theorem")) emit(check_truncation_theorem(a, mod));
  }
  if (wanted(o, "mpower_sandwich"))
    for (int j : a.instance().spec.mpower) emit(check_mpower_sandwich(a, j));
}

template <class F>
std::unique_ptr<Analyzer<F>> make_analyzer(const InstanceSpec& spec, F field, const CorpusOptions& o) {
  return std::make_unique<Analyzer<F>>(build_instance<F>(spec, field), o.caps);
}

struct Group {
  std::vector<std::unique_ptr<Analyzer<PrimeField>>> prime;
  std::vector<std::unique_ptr<Analyzer<RationalField>>> rational;
};

void run_one(const InstanceSpec& spec, const CorpusOptions& o, CorpusResult& out, std::ostream* progress, Group& g) {
  try {
    if (o.rationals || (spec.characteristic == 0 && !o.prime)) {
      g.rational.push_back(make_analyzer(spec, RationalField{}, o));
      run_checks(*g.rational.back(), o, out, progress);
    } else {
      g.prime.push_back(make_analyzer(spec, PrimeField(o.prime.value_or(spec.characteristic)), o));
      run_checks(*g.prime.back(), o, out, progress);
    }
  } catch (const Error& e) {
    VerificationReport r;
    r.check = "build";
    r.instance = spec.name;
    r.verdict = Verdict::Error;
    r.detail = e.what();
    if (progress) *progress << r.to_text() << std::endl;
    out.reports.push_back(std::move(r));
  }
}

template <class F>
void characterize(std::vector<std::unique_ptr<Analyzer<F>>>& group, CorpusResult& out, std::ostream* progress) {
  if (group.empty()) return;
  std::vector<Analyzer<F>*> ptrs;
  for (auto& a : group) ptrs.push_back(a.get());
  auto r = check_polynomial_characterization(ptrs);
  if (progress) *progress << r.to_text() << std::endl;
  out.reports.push_back(std::move(r));
}

}  // namespace

CorpusResult run_instance(const InstanceSpec& spec, const CorpusOptions& options, std::ostream* progress) {
  CorpusResult out;
  Group g;
  run_one(spec, options, out, progress, g);
  return out;
}

CorpusResult run_corpus(const std::filesystem::path& dir, const CorpusOptions& options, std::ostream* progress) {
  CorpusResult out;
  Group g;
  for (const auto& path : list_instances(dir)) {
    InstanceSpec spec;
    try {
      spec = load_instance(path);
    } catch (const Error& e) {
      VerificationReport r;
      r.check = "parse";
      r.instance = path.filename().string();
      r.verdict = Verdict::Error;
      r.detail = e.what();
      if (progress) *progress << r.to_text() << std::endl;
      out.reports.push_back(std::move(r));
      continue;
    }
    if (spec.heavy && !options.include_heavy) continue;
    run_one(spec, options, out, progress, g);
  }
  if (wanted(options, "polynomial_characterization")) {
    characterize(g.prime, out, progress);
    characterize(g.rational, out, progress);
  }
  return out;
}

#define CREG_INSTANTIATE_HARNESS(Field)                                                                   \
  template class Analyzer<Field>;                                                                         \
  template VerificationReport check_main_inequalities(Analyzer<Field>&, const std::string&);              \
  template VerificationReport check_finite_pd_equality(Analyzer<Field>&, const std::string&);             \
  template VerificationReport check_converse_witness(Analyzer<Field>&, const std::string&, int);          \
  template VerificationReport check_truncation_theorem(Analyzer<Field>&, const std::string&);             \
  template VerificationReport check_mpower_sandwich(Analyzer<Field>&, int);                               \
  template VerificationReport check_polynomial_characterization(std::vector<Analyzer<Field>*>);

CREG_INSTANTIATE_HARNESS(PrimeField)
CREG_INSTANTIATE_HARNESS(RationalField)

}  // namespace creg
