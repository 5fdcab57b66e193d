#pragma once

// Content-addressed on-disk store for differential matrices.

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "affsp/linalg.hpp"

namespace affsp {

std::string sha256_hex(std::string_view data);
/// SHA-256 of the compact JSON dump.
std::string fingerprint(const nlohmann::json& description);

struct CacheKey {
  std::string algebra;  // fingerprint of the structure constants
  std::string kind;     // complex kind
  std::string module;   // fingerprint of the coefficient module, or "-"
  unsigned degree = 0;

  std::string str() const;
  /// File name inside the cache directory: sha256(str()) + ".mat".
  std::string file_name() const;
};

/// Files are written to a temporary name and renamed into place, so readers
/// never observe partial matrices.
class DifferentialCache {
 public:
  explicit DifferentialCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<SparseMatrix> load(const CacheKey& key) const;
  void store(const CacheKey& key, const SparseMatrix& m) const;

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  std::filesystem::path dir_;
  mutable std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace affsp
