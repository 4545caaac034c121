#include "vgp/run_config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vgp/errors.hpp"

namespace vgp {
namespace {

constexpr std::array<const char*, 40> kKnownKeys = {
    "alpha",          "cap",            "cluster_count",  "cluster_fraction",
    "cluster_radius", "delta",          "detrend",        "folds",
    "latent",         "m_pred",         "m_seq",          "max_dist",
    "max_iter",       "max_pairs",      "mean_kind",      "method",
    "methods",        "n",              "n_bins",         "n_blocks",
    "n_reps",         "nugget",         "out",            "out_test",
    "out_train",      "pattern",        "range",          "report",
    "resample",       "seed",           "sigma2",         "smoothness",
    "split",          "stripe_count",   "stripe_width",   "subregion_fraction",
    "subsample_size", "timing",         "weight_radius",  "workers",
};

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* wanted) {
  throw InputError("config key '" + key + "': cannot read '" + value + "' as " + wanted);
}

}  // namespace

bool RunConfig::known_key(const std::string& key) {
  return std::find_if(kKnownKeys.begin(), kKnownKeys.end(),
                      [&](const char* k) { return key == k; }) != kKnownKeys.end();
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(origin + " line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InputError(origin + " line " + std::to_string(lineno) + ": empty key");
    if (!known_key(key))
      throw InputError(origin + " line " + std::to_string(lineno) + ": unknown key '" + key +
                       "'");
    config.values_[key] = value;
  }
  return config;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!known_key(key)) throw InputError("unknown config key '" + key + "'");
  values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end != it->second.c_str() + it->second.size() || it->second.empty() || errno == ERANGE ||
      !std::isfinite(v))
    bad_value(key, it->second, "a number");
  return v;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (end != it->second.c_str() + it->second.size() || it->second.empty() || errno == ERANGE)
    bad_value(key, it->second, "an integer");
  return static_cast<int>(v);
}

std::uint64_t RunConfig::get_uint64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (end != it->second.c_str() + it->second.size() || it->second.empty() || errno == ERANGE ||
      it->second[0] == '-')
    bad_value(key, it->second, "a nonnegative integer");
  return v;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  bad_value(key, it->second, "a boolean");
}

std::vector<int> RunConfig::get_int_list(const std::string& key,
                                         std::vector<int> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<int> out;
  std::istringstream in(it->second);
  std::string field;
  while (std::getline(in, field, ',')) {
    field = trim(field);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(field.c_str(), &end, 10);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
      bad_value(key, it->second, "a comma-separated integer list");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) bad_value(key, it->second, "a comma-separated integer list");
  return out;
}

std::uint64_t RunConfig::content_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  };
  for (const auto& [key, value] : values_) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

}  // namespace vgp
