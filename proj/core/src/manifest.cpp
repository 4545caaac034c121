#include "vgp/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "vgp/errors.hpp"

namespace vgp {

void Manifest::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::add(const std::string& key, std::uint64_t value) {
  entries_.emplace_back(key, std::to_string(value));
}

void Manifest::add(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  entries_.emplace_back(key, std::string(buf));
}

void Manifest::write_for(const std::string& output_path) const {
  const std::string path = output_path + ".manifest";
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  for (const auto& [key, value] : entries_) out << key << " = " << value << '\n';
}

std::uint64_t file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::uint64_t h = 1469598103934665603ull;
  char buf[16384];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace vgp
