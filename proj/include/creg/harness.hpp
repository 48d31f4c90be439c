#pragma once

// Theorem checks over concrete instances. Every check returns a report with
// the regularity triple it used and one of the verdicts below; "violated" is
// reserved for a certified contradiction, so a truncated box can weaken a
// verdict to "holds-up-to-caps" but never produce a false alarm.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "creg/instance.hpp"
#include "creg/localcohom.hpp"
#include "creg/regularity.hpp"

namespace creg {

// Error: a computation failed (cap exhausted, certificate failure); counted
// like a violation by the corpus exit code.
enum class Verdict { Holds, HoldsUpToCaps, Violated, PreconditionUnmet, Skipped, Error };

std::string to_string(Verdict v);

struct VerificationReport {
  std::string check;
  std::string instance;
  std::string module;
  std::optional<int> regL_M;
  std::optional<int> regL_R;
  std::optional<RegularityValue> regT_M;
  Verdict verdict = Verdict::Skipped;
  std::string witness;
  std::string detail;
  long long millis = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct Caps {
  std::optional<int> hom_cap;
  std::optional<int> deg_cap;
};

/// Lazily computed invariants of one instance, shared between checks.
template <class F>
class Analyzer {
 public:
  Analyzer(Instance<F> inst, Caps overrides = {});

  const Instance<F>& instance() const { return inst_; }
  const RingPtr<F>& ring() const { return inst_.ring; }
  int hom_cap() const;
  int degree_cap(const GradedModule<F>& m) const;

  /// Koszul probe of the ring; nullopt for weighted rings.
  const std::optional<KoszulReport>& koszul();
  bool koszul_positive();

  const LocalCohomology<F>& cohomology(const std::string& module);
  const LocalCohomology<F>& ring_cohomology();
  int regL(const std::string& module);
  int regL_R();

  /// reg^T with the Koszul upgrades applied: a box value meeting reg^L(M),
  /// or a q-linear box of a truncation M_{>=q} with q >= reg^T(M), becomes
  /// ExactIfKoszul when the probe is positive.
  const TorRegularityReport& tor(const std::string& module);
  /// The table of an arbitrary module in the instance's box.
  TorRegularityReport tor_of(PresentedPtr<F> m, std::optional<int> degree_cap = std::nullopt);

 private:
  Instance<F> inst_;
  Caps caps_;
  std::optional<std::optional<KoszulReport>> koszul_;
  std::unique_ptr<LocalCohomology<F>> ring_lc_;
  std::map<std::string, std::unique_ptr<LocalCohomology<F>>> lc_;
  std::map<std::string, TorRegularityReport> tor_;
};

template <class F>
VerificationReport check_main_inequalities(Analyzer<F>& a, const std::string& module);

template <class F>
VerificationReport check_finite_pd_equality(Analyzer<F>& a, const std::string& module);

/// Equality reg^L(M) - reg^L(R) = reg^T(M) together with pd_probe failing to
/// terminate at the given homological cap.
template <class F>
VerificationReport check_converse_witness(Analyzer<F>& a, const std::string& module, int pd_hom_cap = 8);

template <class F>
VerificationReport check_truncation_theorem(Analyzer<F>& a, const std::string& module);

template <class F>
VerificationReport check_mpower_sandwich(Analyzer<F>& a, int j);

/// Over polynomial rings reg^T = reg^L for every module; every other
/// Koszul ring in the corpus must exhibit a module where they differ.
template <class F>
VerificationReport check_polynomial_characterization(std::vector<Analyzer<F>*> corpus);

struct CorpusOptions {
  Caps caps;
  bool rationals = false;
  std::optional<std::uint32_t> prime;  // overrides the instance characteristic
  bool include_heavy = false;
  std::vector<std::string> checks;  // empty: all
};

struct CorpusResult {
  std::vector<VerificationReport> reports;
  bool any_violated() const;
};

/// Runs every check on every instance in dir.
CorpusResult run_corpus(const std::filesystem::path& dir, const CorpusOptions& options,
                        std::ostream* progress = nullptr);

/// Runs the checks of one instance (no cross-instance checks).
CorpusResult run_instance(const InstanceSpec& spec, const CorpusOptions& options, std::ostream* progress = nullptr);

extern const std::vector<std::string> kCheckNames;

}  // namespace creg
