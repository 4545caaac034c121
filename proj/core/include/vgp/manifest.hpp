#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vgp {

// Reproducibility sidecar written next to every output file: flat
// `key = value` lines recording the tool version, the effective
// configuration hash, seeds, and input digests.  Deliberately free of
// timestamps and host details so identical runs produce identical bytes.
class Manifest {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, double value);

  // writes `<output_path>.manifest`
  void write_for(const std::string& output_path) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a digest of a file's bytes
std::uint64_t file_digest(const std::string& path);

}  // namespace vgp
