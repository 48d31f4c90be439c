// creg: command-line front end for the regularity engine.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <random>

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"
#include "creg/harness.hpp"
#include "creg/instance.hpp"
#include "creg/localcohom.hpp"
#include "creg/random.hpp"
#include "creg/regularity.hpp"
#include "creg/resolution.hpp"

using namespace creg;
using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::string file;
  std::string module;
  std::string check;
  std::optional<int> hom_cap;
  std::optional<int> deg_cap;
  std::string field;  // "", "p" or "Q"
  std::optional<std::uint32_t> prime;
  std::string format = "text";
  std::uint32_t seed = 1;
  int count = 25;
  int q = 0;
  int window = 6;
  bool heavy = false;
  std::vector<std::string> checks;
};

json betti_json(const BettiTable& t) {
  json entries = json::array();
  for (const auto& [ij, b] : t.entries) entries.push_back({ij.first, ij.second, b});
  json status = json::array();
  for (auto s : t.status) status.push_back(s == ColumnStatus::Complete ? "complete" : "truncated");
  return {{"entries", entries},
          {"hom_cap", t.hom_cap},
          {"degree_cap", t.degree_cap},
          {"status", status},
          {"base", t.base == ResolutionBase::OverS ? "S" : "R"}};
}

json reg_json(const RegularityValue& r) {
  return {{"value", r.value ? json(*r.value) : json(nullptr)},
          {"status", to_string(r.status)},
          {"certificate", r.certificate}};
}

std::string reg_text(const RegularityValue& r) {
  std::string s = r.value ? std::to_string(*r.value) : "?";
  s += " (" + to_string(r.status) + ")";
  if (!r.certificate.empty()) s += " [" + r.certificate + "]";
  return s;
}

template <class F>
json module_json(const PresentedModule<F>& m) {
  return {{"twists", m.twists()}, {"relations", m.format_relations()}};
}

template <class F>
std::string module_text(const PresentedModule<F>& m) {
  std::ostringstream os;
  os << "generators in degrees:";
  for (int t : m.twists()) os << " " << t;
  os << "\nrelations:\n" << m.format_relations() << "\n";
  return os.str();
}

template <class F>
PresentedPtr<F> pick_module(const Instance<F>& inst, const std::string& name) {
  if (name.empty()) {
    if (inst.modules.empty()) return ring_module<F>(inst.ring);
    return inst.modules.front().second;
  }
  for (const auto& [n, m] : inst.modules)
    if (n == name) return m;
  if (name == "R") return ring_module<F>(inst.ring);
  if (name == "K") return residue_field<F>(inst.ring);
  throw InvalidInput("no module named '" + name + "'");
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int emit_reports(const Options& o, const CorpusResult& result) {
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : result.reports) arr.push_back(r.to_json());
    std::cout << arr.dump(2) << "\n";
  }
  return result.any_violated() ? 1 : 0;
}

template <class F>
int random_modules(const Options& o, F field) {
  std::mt19937 rng(o.seed);
  json arr = json::array();
  bool bad = false;
  for (int k = 0; k < o.count; ++k) {
    std::vector<std::string> vars = k % 2 == 0 ? std::vector<std::string>{"x", "y"}
                                               : std::vector<std::string>{"x", "y", "z"};
    auto ring = GradedRing<F>::polynomial_ring(field, vars);
    auto p = random_presentation(vars, rng);
    auto m = PresentedModule<F>::parse(ring, p.twists, p.columns);
    auto tor = tor_regularity<F>(m, static_cast<int>(vars.size()) + 1, m->generator_bound() + 10);
    LocalCohomology<F> lc(m);
    const int l = *local_regularity(lc).value;
    const bool ok = tor.reg.status == RegStatus::Exact && *tor.reg.value == l;
    bad = bad || !ok;
    if (o.format == "json")
      arr.push_back({{"index", k}, {"vars", vars}, {"twists", p.twists}, {"columns", p.columns},
                     {"regT", reg_json(tor.reg)}, {"regL", l}, {"verdict", ok ? "holds" : "violated"}});
    else
      std::cout << "[" << (ok ? "holds" : "violated") << "] random module " << k << " over " << vars.size()
                << " variables: regT=" << reg_text(tor.reg) << " regL=" << l << "\n";
  }
  if (o.format == "json") std::cout << arr.dump(2) << "\n";
  return bad ? 1 : 0;
}

template <class F>
int run(const Options& o, F field) {
  if (o.command == "verify" && o.check == "random_modules") return random_modules(o, field);

  auto spec = load_instance(o.file);
  if (o.command == "verify") {
    CorpusOptions co;
    co.caps = {o.hom_cap, o.deg_cap};
    co.rationals = o.field == "Q";
    co.prime = o.prime;
    if (o.check != "all") co.checks = {o.check};
    auto result = run_instance(spec, co, o.format == "json" ? nullptr : &std::cout);
    return emit_reports(o, result);
  }

  auto inst = build_instance<F>(spec, field);
  Analyzer<F> a(inst, {o.hom_cap, o.deg_cap});
  if (o.command == "koszul") {
    const auto& k = a.koszul();
    if (!k) throw GradingError("the Koszul probe needs a standard graded ring");
    json j = {{"positive", k->positive}, {"hom_cap", k->hom_cap}, {"degree_cap", k->degree_cap},
              {"witness", k->witness ? json{k->witness->first, k->witness->second} : json(nullptr)},
              {"betti", betti_json(k->table)}};
    std::ostringstream os;
    os << "Koszul probe: " << (k->positive ? "positive" : "negative") << " (hom_cap " << k->hom_cap
       << ", degree cap " << k->degree_cap << ")\n";
    if (k->witness) os << "witness beta_{" << k->witness->first << "," << k->witness->second << "}\n";
    os << k->table.render() << "\n";
    emit(o, j, os.str());
    return 0;
  }

  auto m = pick_module(inst, o.module);
  if (o.command == "betti" || o.command == "reg-tor") {
    auto r = a.tor_of(m);
    json j = {{"regT", reg_json(r.reg)}, {"pd", r.pd ? json(*r.pd) : json(nullptr)}, {"betti", betti_json(r.table)}};
    std::ostringstream os;
    if (o.command == "betti") os << r.table.render() << "\n";
    os << "reg^T = " << reg_text(r.reg) << "\n";
    if (r.pd) os << "pd = " << *r.pd << "\n";
    emit(o, j, os.str());
  } else if (o.command == "reg-local" || o.command == "cohom") {
    LocalCohomology<F> lc(m);
    auto reg = local_regularity(lc);
    auto [depth, dim] = depth_dim(lc);
    json j = {{"regL", *reg.value}, {"depth", depth}, {"dim", dim}};
    std::ostringstream os;
    if (o.command == "cohom") {
      auto t = lc.table(o.window);
      json rows = json::array();
      for (const auto& [i, row] : t.rows) {
        json dims = json::object();
        for (const auto& [d, v] : row.dims) dims[std::to_string(d)] = v;
        rows.push_back({{"i", i}, {"top", row.top}, {"finite_length", row.finite_length}, {"dims", dims}});
      }
      j["rows"] = rows;
      os << t.render() << "\n";
    }
    os << "depth = " << depth << ", dim = " << dim << "\nreg^L = " << *reg.value << "\n";
    emit(o, j, os.str());
  } else if (o.command == "truncate") {
    auto t = truncate<F>(m, o.q);
    emit(o, module_json(*t), module_text(*t));
  } else if (o.command == "dual") {
    auto d = matlis_dual<F>(m);
    emit(o, module_json(*d), module_text(*d));
  } else if (o.command == "pd") {
    const int hc = o.hom_cap.value_or(8);
    auto r = pd_probe<F>(m, hc, a.degree_cap(*m));
    json j = {{"pd", r.pd ? json(*r.pd) : json(nullptr)}, {"hom_cap", r.hom_cap}, {"degree_cap", r.degree_cap},
              {"hilbert_certified", r.hilbert_certified}};
    std::ostringstream os;
    if (r.pd)
      os << "pd = " << *r.pd << "\n";
    else
      os << "pd not finite within hom_cap " << r.hom_cap << " and degree cap " << r.degree_cap << "\n";
    emit(o, j, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tor-regularity and local regularity of graded modules"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_module) {
    sub->add_option("--hom-cap", o.hom_cap, "homological cap");
    sub->add_option("--deg-cap", o.deg_cap, "absolute internal degree cap");
    sub->add_option("--field", o.field, "p (prime field) or Q")->check(CLI::IsMember({"p", "Q"}));
    sub->add_option("--prime", o.prime, "characteristic of the prime field");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (with_module) sub->add_option("--module", o.module, "module name from the instance file");
  };
  auto instance_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "instance file")->required()->check(CLI::ExistingFile);
    common(sub, true);
    return sub;
  };

  instance_command("betti", "Betti table within the caps");
  instance_command("reg-tor", "Tor-regularity with its status");
  instance_command("reg-local", "local regularity");
  instance_command("cohom", "local cohomology table")->add_option("--window", o.window, "degrees below each top");
  instance_command("truncate", "presentation of M_{>=q}")->add_option("--q", o.q, "truncation degree")->required();
  instance_command("dual", "Matlis dual of a finite-length module");
  instance_command("pd", "projective dimension probe");
  auto* koszul = app.add_subcommand("koszul", "Koszul probe of the ring");
  koszul->add_option("file", o.file, "instance file")->required()->check(CLI::ExistingFile);
  common(koszul, false);

  auto* verify = app.add_subcommand("verify", "run a check (or all) on one instance");
  std::vector<std::string> names = kCheckNames;
  names.push_back("all");
  names.push_back("random_modules");
  verify->add_option("check", o.check, "check name")->required()->check(CLI::IsMember(names));
  verify->add_option("file", o.file, "instance file")->check(CLI::ExistingFile);
  verify->add_option("--seed", o.seed, "seed for random_modules");
  verify->add_option("--count", o.count, "number of random modules");
  common(verify, false);

  auto* corpus = app.add_subcommand("corpus", "run every check on a directory of instances");
  corpus->add_option("dir", o.file, "corpus directory")->required()->check(CLI::ExistingDirectory);
  corpus->add_flag("--heavy", o.heavy, "include instances marked heavy");
  corpus->add_option("--checks", o.checks, "restrict to these checks")->delimiter(',');
  common(corpus, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "verify" && o.check != "random_modules" && o.file.empty())
      throw InvalidInput("verify " + o.check + " needs an instance file");
    if (o.command == "corpus") {
      CorpusOptions co;
      co.caps = {o.hom_cap, o.deg_cap};
      co.rationals = o.field == "Q";
      co.prime = o.prime;
      co.include_heavy = o.heavy;
      co.checks = o.checks;
      auto result = run_corpus(o.file, co, o.format == "json" ? nullptr : &std::cout);
      return emit_reports(o, result);
    }
    bool rationals = o.field == "Q";
    std::uint32_t p = o.prime.value_or(32003);
    if (!o.file.empty() && o.command != "verify" && o.field.empty() && !o.prime) {
      auto spec = load_instance(o.file);
      rationals = spec.characteristic == 0;
      p = spec.characteristic;
    }
    if (rationals) return run(o, RationalField{});
    return run(o, PrimeField(p));
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
