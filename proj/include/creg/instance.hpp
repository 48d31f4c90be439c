#pragma once

// Plain-text instance files:
//
//   [ring]
//   vars = x:1, y:1          # name:weight, weight defaults to 1
//   char = 32003             # 0 selects the rationals
//   veronese = 2             # optional: ring becomes the Veronese of K[vars]
//   relation_cap = 2
//   [ideal]
//   gens = x^2, x*y, y^2
//   [module]
//   name = M
//   kind = cokernel          # free | cokernel | residue_field | ring |
//   twists = 0, 0            # power_ideal | truncation | matlis_dual
//   column = x, -y           # one line per relation column
//   [caps]
//   hom_cap = 6
//   deg_cap = 12             # absolute; otherwise generator degree + deg_slack
//   [checks]
//   mpower = 1, 2
//
// Parse errors carry the line and column of the offending token.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "creg/module.hpp"

namespace creg {

struct ModuleSpec {
  std::string name;
  std::string kind;
  std::vector<int> twists;
  std::vector<std::vector<std::string>> columns;
  std::optional<int> j;
  std::optional<int> q;
  std::string of;
  int line = 0;
};

struct InstanceSpec {
  std::string name;
  std::vector<std::string> var_names;
  std::vector<int> weights;
  std::uint32_t characteristic = 32003;
  std::optional<int> veronese;
  int relation_cap = 2;
  std::vector<std::string> ideal;
  std::vector<ModuleSpec> modules;
  std::optional<int> hom_cap;
  std::optional<int> deg_cap;
  int deg_slack = 10;
  std::vector<int> mpower;
  bool heavy = false;
};

InstanceSpec parse_instance(std::string_view text, std::string name = "instance");
InstanceSpec load_instance(const std::filesystem::path& path);

/// Instance files in a directory, sorted by name.
std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir);

template <class F>
struct Instance {
  InstanceSpec spec;
  RingPtr<F> ring;
  std::vector<std::pair<std::string, PresentedPtr<F>>> modules;
  /// Kind-specific facts the harness may use: for power_ideal and
  /// truncation modules, the degree q of the truncation and its source.
  std::vector<std::optional<std::pair<int, std::string>>> truncation_of;

  PresentedPtr<F> module(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
};

template <class F>
Instance<F> build_instance(const InstanceSpec& spec, F field);

}  // namespace creg
