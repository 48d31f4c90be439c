#include "creg/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "creg/constructions.hpp"
#include "creg/errors.hpp"
#include "creg/field.hpp"
#include "creg/polynomial.hpp"

namespace creg {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

Token trim(std::string_view s, int column) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {std::string(s.substr(b, e - b)), column + static_cast<int>(b)};
}

std::vector<Token> split_list(const Token& value, int line) {
  std::vector<Token> out;
  std::size_t start = 0;
  const std::string& s = value.text;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      auto t = trim(std::string_view(s).substr(start, i - start), value.column + static_cast<int>(start));
      if (t.text.empty()) throw ParseError("empty list item", line, t.column);
      out.push_back(std::move(t));
      start = i + 1;
    }
  }
  return out;
}

int parse_int(const Token& t, int line) {
  int v = 0;
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw ParseError("expected an integer, got '" + t.text + "'", line, t.column);
  return v;
}

const std::set<std::string> kKinds = {"free",       "cokernel",   "residue_field", "ring",
                                      "power_ideal", "truncation", "matlis_dual"};

}  // namespace

InstanceSpec parse_instance(std::string_view text, std::string name) {
  InstanceSpec spec;
  spec.name = std::move(name);
  std::string section;
  bool ring_seen = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string_view body = std::string_view(raw).substr(0, hash);
    auto content = trim(body, 1);
    if (content.text.empty()) continue;
    if (content.text.front() == '[') {
      if (content.text.back() != ']') throw ParseError("unterminated section header", line, content.column);
      section = trim(std::string_view(content.text).substr(1, content.text.size() - 2), content.column + 1).text;
      if (section == "module") {
        spec.modules.emplace_back();
        spec.modules.back().line = line;
      } else if (section == "ring") {
        ring_seen = true;
      } else if (section != "ideal" && section != "caps" && section != "checks") {
        throw ParseError("unknown section '" + section + "'", line, content.column + 1);
      }
      continue;
    }
    if (section.empty()) throw ParseError("key outside of any section", line, content.column);
    auto eq = content.text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, content.column);
    auto key = trim(std::string_view(content.text).substr(0, eq), content.column);
    auto value = trim(std::string_view(content.text).substr(eq + 1), content.column + static_cast<int>(eq) + 1);
    if (value.text.empty()) throw ParseError("missing value for '" + key.text + "'", line, value.column);

    auto unknown = [&] { throw ParseError("unknown key '" + key.text + "' in [" + section + "]", line, key.column); };

    if (section == "ring") {
      if (key.text == "vars") {
        for (const auto& item : split_list(value, line)) {
          auto colon = item.text.find(':');
          std::string var = colon == std::string::npos ? item.text : trim(item.text.substr(0, colon), 0).text;
          if (var.empty() || !(std::isalpha(static_cast<unsigned char>(var[0])) || var[0] == '_'))
            throw ParseError("invalid variable name '" + var + "'", line, item.column);
          if (std::find(spec.var_names.begin(), spec.var_names.end(), var) != spec.var_names.end())
            throw ParseError("duplicate variable '" + var + "'", line, item.column);
          int w = 1;
          if (colon != std::string::npos) {
            Token wt = trim(std::string_view(item.text).substr(colon + 1), item.column + static_cast<int>(colon) + 1);
            w = parse_int(wt, line);
            if (w < 1) throw ParseError("variable weights must be positive", line, wt.column);
          }
          spec.var_names.push_back(var);
          spec.weights.push_back(w);
        }
      } else if (key.text == "char") {
        int c = parse_int(value, line);
        if (c < 0 || (c > 0 && !is_prime(static_cast<std::uint32_t>(c))))
          throw ParseError("characteristic must be 0 or a prime", line, value.column);
        spec.characteristic = static_cast<std::uint32_t>(c);
      } else if (key.text == "veronese") {
        spec.veronese = parse_int(value, line);
        if (*spec.veronese < 1) throw ParseError("Veronese degree must be positive", line, value.column);
      } else if (key.text == "relation_cap") {
        spec.relation_cap = parse_int(value, line);
      } else if (key.text == "heavy") {
        spec.heavy = value.text == "true" || value.text == "yes" || value.text == "1";
      } else {
        unknown();
      }
    } else if (section == "ideal") {
      if (!ring_seen || spec.var_names.empty()) throw ParseError("[ideal] needs the variables of [ring] first", line, key.column);
      if (key.text != "gens") unknown();
      for (const auto& item : split_list(value, line)) {
        parse_polynomial(item.text, spec.var_names, line, item.column - 1);
        spec.ideal.push_back(item.text);
      }
    } else if (section == "module") {
      auto& m = spec.modules.back();
      if (key.text == "name") {
        m.name = value.text;
      } else if (key.text == "kind") {
        if (!kKinds.count(value.text)) throw ParseError("unknown module kind '" + value.text + "'", line, value.column);
        m.kind = value.text;
      } else if (key.text == "twists") {
        for (const auto& item : split_list(value, line)) m.twists.push_back(parse_int(item, line));
      } else if (key.text == "column") {
        if (spec.var_names.empty()) throw ParseError("[module] columns need the variables of [ring] first", line, key.column);
        std::vector<std::string> col;
        for (const auto& item : split_list(value, line)) {
          parse_polynomial(item.text, spec.var_names, line, item.column - 1);
          col.push_back(item.text);
        }
        m.columns.push_back(std::move(col));
      } else if (key.text == "j") {
        m.j = parse_int(value, line);
      } else if (key.text == "q") {
        m.q = parse_int(value, line);
      } else if (key.text == "of") {
        m.of = value.text;
      } else {
        unknown();
      }
    } else if (section == "caps") {
      if (key.text == "hom_cap") {
        spec.hom_cap = parse_int(value, line);
      } else if (key.text == "deg_cap") {
        spec.deg_cap = parse_int(value, line);
      } else if (key.text == "deg_slack") {
        spec.deg_slack = parse_int(value, line);
      } else {
        unknown();
      }
    } else if (section == "checks") {
      if (key.text != "mpower") unknown();
      for (const auto& item : split_list(value, line)) spec.mpower.push_back(parse_int(item, line));
    }
  }
  if (!ring_seen || spec.var_names.empty()) throw ParseError("missing [ring] section with vars", std::max(line, 1), 1);
  if (spec.veronese && !spec.ideal.empty()) throw ParseError("a Veronese ring takes no [ideal]", 1, 1);
  std::set<std::string> names;
  for (auto& m : spec.modules) {
    if (m.name.empty()) throw ParseError("module without a name", m.line, 1);
    if (m.kind.empty()) throw ParseError("module '" + m.name + "' without a kind", m.line, 1);
    if (!names.insert(m.name).second) throw ParseError("duplicate module name '" + m.name + "'", m.line, 1);
    if ((m.kind == "truncation" || m.kind == "matlis_dual") && !names.count(m.of))
      throw ParseError("module '" + m.name + "' refers to unknown module '" + m.of + "'", m.line, 1);
    if (m.kind == "power_ideal" && !m.j) throw ParseError("power_ideal needs j", m.line, 1);
    if (m.kind == "truncation" && !m.q) throw ParseError("truncation needs q", m.line, 1);
    if (m.kind == "cokernel" && m.twists.empty()) throw ParseError("cokernel needs twists", m.line, 1);
    if (m.kind == "free" && m.twists.empty()) throw ParseError("free module needs twists", m.line, 1);
  }
  return spec;
}

InstanceSpec load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.stem().string());
}

std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".inst") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
PresentedPtr<F> Instance<F>::module(const std::string& name) const {
  return modules[index_of(name)].second;
}

template <class F>
std::size_t Instance<F>::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < modules.size(); ++i)
    if (modules[i].first == name) return i;
  throw InvalidInput("no module named '" + name + "'");
}

template <class F>
Instance<F> build_instance(const InstanceSpec& spec, F field) {
  Instance<F> inst;
  inst.spec = spec;
  if (spec.veronese) {
    if (std::any_of(spec.weights.begin(), spec.weights.end(), [](int w) { return w != 1; }))
      throw GradingError("Veronese rings are built from standard graded polynomial rings");
    auto base = GradedRing<F>::polynomial_ring(field, spec.var_names);
    inst.ring = veronese_presentation(*base, *spec.veronese, spec.relation_cap).ring;
  } else {
    inst.ring = GradedRing<F>::create(field, spec.var_names, spec.weights, spec.ideal);
  }
  for (const auto& m : spec.modules) {
    PresentedPtr<F> built;
    std::optional<std::pair<int, std::string>> trunc;
    if (m.kind == "free") {
      built = free_module<F>(inst.ring, m.twists);
    } else if (m.kind == "cokernel") {
      built = PresentedModule<F>::parse(inst.ring, m.twists, m.columns);
    } else if (m.kind == "residue_field") {
      built = residue_field<F>(inst.ring);
    } else if (m.kind == "ring") {
      built = ring_module<F>(inst.ring);
    } else if (m.kind == "power_ideal") {
      built = power_ideal_module<F>(inst.ring, *m.j);
      if (*m.j > 0) trunc = std::make_pair(*m.j, std::string());
    } else if (m.kind == "truncation") {
      built = truncate<F>(inst.module(m.of), *m.q);
      trunc = std::make_pair(*m.q, m.of);
    } else if (m.kind == "matlis_dual") {
      built = matlis_dual<F>(inst.module(m.of));
    }
    inst.modules.emplace_back(m.name, std::move(built));
    inst.truncation_of.push_back(std::move(trunc));
  }
  return inst;
}

template struct Instance<PrimeField>;
template struct Instance<RationalField>;
template Instance<PrimeField> build_instance(const InstanceSpec&, PrimeField);
template Instance<RationalField> build_instance(const InstanceSpec&, RationalField);

}  // namespace creg
