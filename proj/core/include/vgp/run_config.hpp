#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vgp {

// Flat `key = value` run configuration.  `#` starts a comment, blank lines
// are skipped, keys outside the known set are rejected with their line
// number.  Command-line flags overlay parsed files through `set`.
class RunConfig {
 public:
  RunConfig() = default;

  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text, const std::string& origin);

  // overlay; the key must still be a known one
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // comma-separated integer list
  std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;

  // FNV-1a over the canonical "key=value\n" lines in key order; stable
  // across reorderings and comments of the source file
  std::uint64_t content_hash() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

  static bool known_key(const std::string& key);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace vgp
