#pragma once

// Job descriptions for the command-line tool: module descriptors, point
// selection, output format and the per-command parameters. A JobSpec can be
// filled from command-line flags or from a JSON config with the same fields.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fusion/lie.hpp"

namespace fusion {

enum class OutputFormat { json, csv, plain };

OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

/// A module given either by builder text ("sl2:2", "sl2_irrep m=2") or by an
/// explicit JSON object with generator matrices.
struct ModuleDescriptor {
  std::string text;
  std::optional<nlohmann::json> explicit_module;

  std::string label() const;
};

struct JobSpec {
  std::string command;
  std::vector<ModuleDescriptor> modules;
  std::string points = "default";
  std::optional<OutputFormat> format;
  bool aux = false;

  // psi
  int k = 1;
  std::optional<int> j;
  int N = 1;
  bool reversed = false;
  int max_r = -1, max_s = -1;
  std::vector<std::pair<int, int>> extra;

  // verlinde, qverlinde
  int level = 1;
  int n = 1;
  int lambda = 0;
  bool doubled = false;
  std::string variant = "plain";
  int m_bound = -1;

  // check
  std::string suite = "all";
  std::uint64_t seed = 1;
  int max_k = 3;

  /// Fields present in `config` override the current values.
  void merge_json(const nlohmann::json& config);
};

/// Builder text: "sl2:m", "abelian:n:r", "slN:n:r", "level:k", "doubled:k", or
/// the keyword forms "sl2_irrep m=2", "abelian_powers n=2 r=1",
/// "slN_sym n=2 r=1", "level_sum k=1 doubled=1".
CyclicModule parse_module_text(const std::string& text);
/// Explicit module: {"algebra": "sl2", "action": {"e": M or [M_0, M_1, ...], ...},
/// "cyclic": [...], "t_grading"?, "aux_grading"?, "labels"?} with entries "p/q".
CyclicModule parse_module_json(const nlohmann::json& obj);
CyclicModule build_module(const ModuleDescriptor& d);

/// Splits "sl2:1,sl2:1" into descriptors.
std::vector<ModuleDescriptor> parse_module_list(const std::string& csv);

/// "default", "random:SEED", or comma-separated rationals.
EvaluationPoints resolve_points(const std::string& spec, std::size_t n);

}  // namespace fusion
