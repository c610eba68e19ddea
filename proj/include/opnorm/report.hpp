#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opnorm/errors.hpp"
#include "opnorm/opspace.hpp"

namespace opnorm {

using json = nlohmann::json;

inline json to_json(const NormEstimate& e) {
  json j;
  j["value"] = e.value;
  j["kind"] = e.kind.name();
  j["certificate"] = certificate_name(e.certificate);
  j["seed"] = e.seed;
  j["sample_count"] = e.sample_count;
  if (e.witness) j["witness"] = *e.witness;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

/// Run report: command echo, per-check verdicts, values with certificates.
/// Exit code 0 iff every hard verdict passed; `canonical()` strips the
/// timing field so reports compare bit-for-bit across reruns.
struct Report {
  json doc = json::object();

  Report() {
    doc["checks"] = json::array();
    doc["values"] = json::object();
  }

  void set_command(const std::string& cmd) { doc["command"] = cmd; }
  void set_seed(std::uint64_t seed) { doc["seed"] = seed; }
  void set_timing_ms(double ms) { doc["timing_ms"] = ms; }

  void add_check(const std::string& name, bool passed, json details = json::object()) {
    json c;
    c["name"] = name;
    c["passed"] = passed;
    if (!details.empty()) c["details"] = details;
    doc["checks"].push_back(c);
  }

  void add_evidence(const std::string& name, json details) {
    json c;
    c["name"] = name;
    c["evidence"] = true;
    c["details"] = details;
    doc["checks"].push_back(c);
  }

  void add_value(const std::string& name, json value) { doc["values"][name] = value; }

  bool all_passed() const {
    for (const auto& c : doc["checks"])
      if (c.contains("passed") && !c["passed"].get<bool>()) return false;
    return true;
  }

  int exit_code() const { return all_passed() ? 0 : 1; }

  std::string canonical() const {
    json copy = doc;
    copy.erase("timing_ms");
    return copy.dump();
  }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) fail(errc::config_invalid, "cannot write report to " + path);
    out << doc.dump(2) << "\n";
  }
};

/// UTF-8 comma-separated table with a header row.
inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) fail(errc::config_invalid, "cannot write CSV to " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

inline std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace opnorm
