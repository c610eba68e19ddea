#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/testfn.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// Plain-text configuration: `[section]` headers (dots allowed for nesting)
/// with `key = value` lines; `#` starts a comment.
struct Config {
  std::map<std::string, std::map<std::string, std::string>> sections;

  static Config parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          fail(errc::config_invalid, "line " + std::to_string(lineno) + ": unterminated section");
        section = trim(line.substr(1, line.size() - 2));
        cfg.sections[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        fail(errc::config_invalid, "line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail(errc::config_invalid, "line " + std::to_string(lineno) + ": empty key");
      if (cfg.sections[section].count(key))
        fail(errc::config_invalid, "duplicate key '" + key + "' in [" + section + "]");
      cfg.sections[section][key] = value;
    }
    return cfg;
  }

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::config_invalid, "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& section) const { return sections.count(section) != 0; }
};

/// Strict section accessor: every key must be consumed, unknown keys reject
/// the configuration.
class SectionReader {
 public:
  SectionReader(const Config& cfg, const std::string& name) : name_(name) {
    const auto it = cfg.sections.find(name);
    if (it != cfg.sections.end()) kv_ = &it->second;
  }

  bool present() const { return kv_ != nullptr; }

  std::string get_string(const std::string& key, const std::string& def) {
    consumed_.insert(key);
    if (!kv_) return def;
    const auto it = kv_->find(key);
    return it == kv_->end() ? def : it->second;
  }

  std::string require_string(const std::string& key) {
    consumed_.insert(key);
    if (kv_) {
      const auto it = kv_->find(key);
      if (it != kv_->end()) return it->second;
    }
    fail(errc::config_invalid, "missing required key '" + key + "' in [" + name_ + "]");
  }

  double get_double(const std::string& key, double def) {
    const std::string s = get_string(key, "");
    if (s.empty()) return def;
    return parse_double(key, s);
  }

  int get_int(const std::string& key, int def) {
    const std::string s = get_string(key, "");
    if (s.empty()) return def;
    try {
      return std::stoi(s);
    } catch (...) {
      fail(errc::config_invalid, "key '" + key + "' is not an integer");
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
    const std::string s = get_string(key, "");
    if (s.empty()) return def;
    try {
      return std::stoull(s);
    } catch (...) {
      fail(errc::config_invalid, "key '" + key + "' is not an unsigned integer");
    }
  }

  bool get_bool(const std::string& key, bool def) {
    const std::string s = get_string(key, "");
    if (s.empty()) return def;
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(errc::config_invalid, "key '" + key + "' is not a boolean");
  }

  std::vector<double> get_doubles(const std::string& key, std::vector<double> def = {}) {
    const std::string s = get_string(key, "");
    if (s.empty()) return def;
    std::vector<double> out;
    for (const auto& part : split(s, ','))
      if (!trim(part).empty()) out.push_back(parse_double(key, trim(part)));
    return out;
  }

  /// Rejects the configuration if the section holds keys nobody consumed.
  void finish() const {
    if (!kv_) return;
    for (const auto& [k, v] : *kv_)
      if (!consumed_.count(k))
        fail(errc::config_invalid, "unknown key '" + k + "' in [" + name_ + "]");
  }

 private:
  double parse_double(const std::string& key, const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (...) {
      fail(errc::config_invalid, "key '" + key + "' is not a number");
    }
  }

  const std::map<std::string, std::string>* kv_ = nullptr;
  std::set<std::string> consumed_;
  std::string name_;
};

/// CSV rows of real numbers, one vector per row. A header row of
/// non-numeric cells is skipped.
inline std::vector<Vec> read_vectors_csv(std::istream& in) {
  std::vector<Vec> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    Vec v;
    bool numeric = true;
    for (const auto& cell : split(line, ',')) {
      try {
        v.c.emplace_back(std::stod(trim(cell)), 0.0);
      } catch (...) {
        numeric = false;
        break;
      }
    }
    if (numeric && v.dim() > 0) out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<Vec> read_vectors_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::config_invalid, "cannot open CSV file " + path);
  return read_vectors_csv(in);
}

inline NormFamily parse_norm_kind(const std::string& s) {
  if (s == "ell1") return NormFamily::ell1;
  if (s == "ell2") return NormFamily::ell2;
  if (s == "ellinf") return NormFamily::ellinf;
  if (s.rfind("weighted", 0) == 0) return NormFamily::weighted;
  fail(errc::config_invalid, "unknown norm kind '" + s + "'");
}

/// [section]: dimension, field = real|complex, norm = ell1|ell2|ellinf or
/// weighted:w1,w2,...
inline FiniteSpace load_finite_space(const Config& cfg, const std::string& section) {
  SectionReader r(cfg, section);
  const int dim = r.get_int("dimension", 1);
  const std::string field = r.get_string("field", "real");
  const std::string norm = r.get_string("norm", "ell2");
  r.finish();
  if (dim <= 0) fail(errc::config_invalid, "dimension must be positive");
  ScalarField sf;
  if (field == "real")
    sf = ScalarField::real;
  else if (field == "complex")
    sf = ScalarField::cplx;
  else
    fail(errc::config_invalid, "field must be real or complex");
  std::vector<double> weights;
  NormFamily kind = parse_norm_kind(norm);
  if (kind == NormFamily::weighted) {
    const auto colon = norm.find(':');
    if (colon == std::string::npos) fail(errc::config_invalid, "weighted norm needs weights");
    for (const auto& w : split(norm.substr(colon + 1), ','))
      weights.push_back(std::stod(trim(w)));
  }
  return make_space(static_cast<std::size_t>(dim), kind, sf, std::move(weights));
}

/// [section]: a, b, N, truncation, omega_lo, omega_hi, density, variant =
/// cinf|domega.
inline FrechetMetricParams load_frechet_params(const Config& cfg, const std::string& section) {
  SectionReader r(cfg, section);
  const double a = r.get_double("a", 2.0);
  const double b = r.get_double("b", 1.0);
  const int N = r.get_int("N", 2);
  const int trunc = r.get_int("truncation", -1);
  const double lo = r.get_double("omega_lo", -4.0);
  const double hi = r.get_double("omega_hi", 4.0);
  const double density = r.get_double("density", 32.0);
  const std::string variant = r.get_string("variant", "cinf");
  r.finish();
  if (variant != "cinf" && variant != "domega")
    fail(errc::config_invalid, "variant must be cinf or domega");
  return make_frechet_params(a, b, N, box1d(lo, hi), trunc, density, variant == "domega");
}

struct RunConfig {
  std::uint64_t seed = 42;
  std::string out_dir;
  Tolerances tol;
};

inline RunConfig load_run_config(const Config& cfg) {
  SectionReader r(cfg, "run");
  RunConfig rc;
  rc.seed = r.get_u64("seed", 42);
  rc.out_dir = r.get_string("out", "");
  rc.tol.exact = r.get_double("tol_exact", 1e-12);
  rc.tol.quad = r.get_double("tol_quad", 1e-6);
  r.finish();
  if (!(rc.tol.exact > 0.0) || !(rc.tol.quad > 0.0))
    fail(errc::config_invalid, "tolerances must be positive");
  return rc;
}

}  // namespace opnorm
