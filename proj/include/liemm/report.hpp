#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liemm/tpp.hpp"

namespace liemm {

inline constexpr const char* kToolName = "liemm";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  std::string subcommand;
  int n = 0, q = 0, s = 0;  // 0: subcommand default
  int order = 0;            // minimum series order
  std::string mode = "auto";  // auto | exhaustive | sampled
  std::uint64_t sample_budget = 10000;
  bool sample_budget_set = false;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool tol_set = false;
  std::string output;
  OutputFormat format = OutputFormat::Json;
  int threads = 0;
  bool timestamp = true;
  std::string instance;
  // omega
  double size_x = 0, size_y = 0, size_z = 0, dim = 0, dmax = 0;
  bool logs = false;
  std::uint64_t trials = 0;  // 0: subcommand default
  bool planted = false;      // su-verify: constant p0
};

const char* format_str(OutputFormat f);
SampleMode parse_mode(const std::string& m);  // throws std::invalid_argument

// What a subcommand hands back before the envelope is added.
struct SubResult {
  nlohmann::json body = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  nlohmann::json cardinalities = nlohmann::json::object();
  nlohmann::json degrees = nlohmann::json::object();
  std::vector<std::string> deviations;
  std::string csv;  // native CSV projection, if the subcommand has one
};

nlohmann::json config_json(const RunConfig& c);

// schema, tool, config echo, deviations, ledgers, result, verdict and,
// unless disabled, a UTC timestamp.
nlohmann::json make_report(const RunConfig& c, const SubResult& r);

// Leaf paths of a JSON value in key order, e.g. "result.tpp.verdict".
std::vector<std::pair<std::string, std::string>> flatten_json(const nlohmann::json& j);

std::string render_report(const nlohmann::json& report, const SubResult& r, OutputFormat f);

}  // namespace liemm
