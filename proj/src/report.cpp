#include "liemm/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace liemm {

const char* format_str(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "?";
}

SampleMode parse_mode(const std::string& m) {
  if (m == "auto") return SampleMode::Auto;
  if (m == "exhaustive") return SampleMode::Exhaustive;
  if (m == "sampled") return SampleMode::Sampled;
  throw std::invalid_argument("mode must be auto, exhaustive or sampled: " + m);
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["q"] = c.q;
  j["s"] = c.s;
  j["order"] = c.order;
  j["mode"] = c.mode;
  j["sample_budget"] = c.sample_budget;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["format"] = format_str(c.format);
  j["threads"] = c.threads;
  if (!c.instance.empty()) j["instance"] = c.instance;
  if (c.subcommand == "omega") {
    j["sizes"] = {c.size_x, c.size_y, c.size_z};
    j["dim"] = c.dim;
    j["dmax"] = c.dmax;
    j["logs"] = c.logs;
  }
  if (c.trials) j["trials"] = c.trials;
  if (c.planted) j["planted_constant_p0"] = true;
  return j;
}

namespace {

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void flatten_into(const nlohmann::json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(path, "{}");
    for (auto it = j.begin(); it != j.end(); ++it) flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    bool scalar = true;
    for (const auto& e : j) scalar = scalar && !e.is_structured();
    if (scalar) {
      out.emplace_back(path, j.dump());
      return;
    }
    for (std::size_t k = 0; k < j.size(); ++k) flatten_into(j[k], path + "[" + std::to_string(k) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(path, j.get<std::string>());
  } else {
    out.emplace_back(path, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

nlohmann::json make_report(const RunConfig& c, const SubResult& r) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config_json(c);
  j["seed"] = c.seed;
  j["deviations"] = r.deviations;
  j["cardinalities"] = r.cardinalities;
  j["degrees"] = r.degrees;
  j["result"] = r.body;
  j["verdict"] = verdict_str(r.verdict);
  j["exit_code"] = verdict_exit_code(r.verdict);
  if (c.timestamp) j["timestamp"] = utc_now();
  return j;
}

std::vector<std::pair<std::string, std::string>> flatten_json(const nlohmann::json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(j, "", out);
  return out;
}

std::string render_report(const nlohmann::json& report, const SubResult& r, OutputFormat f) {
  std::ostringstream os;
  switch (f) {
    case OutputFormat::Json: os << report.dump(2) << "\n"; break;
    case OutputFormat::Csv:
      if (!r.csv.empty()) {
        os << r.csv;
        break;
      }
      os << "key,value\n";
      for (const auto& [k, v] : flatten_json(report)) os << csv_field(k) << ',' << csv_field(v) << "\n";
      break;
    case OutputFormat::Text: {
      os << kToolName << ' ' << kToolVersion << "  " << report["config"]["subcommand"].get<std::string>()
         << "  verdict: " << report["verdict"].get<std::string>() << "\n";
      for (const auto& d : r.deviations) os << "deviation: " << d << "\n";
      std::size_t w = 0;
      auto rows = flatten_json(report);
      for (const auto& kv : rows) w = std::max(w, kv.first.size());
      for (const auto& [k, v] : rows) {
        if (k.rfind("deviations", 0) == 0) continue;
        os << k << std::string(w + 2 - k.size(), ' ') << v << "\n";
      }
      break;
    }
  }
  return os.str();
}

}  // namespace liemm
