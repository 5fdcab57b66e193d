#include "affsp/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "affsp/errors.hpp"

namespace affsp {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string fingerprint(const nlohmann::json& description) { return sha256_hex(description.dump()); }

std::string CacheKey::str() const {
  return "algebra=" + algebra + ";kind=" + kind + ";module=" + module + ";degree=" + std::to_string(degree);
}

std::string CacheKey::file_name() const { return sha256_hex(str()) + ".mat"; }

DifferentialCache::DifferentialCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw FormatError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::optional<SparseMatrix> DifferentialCache::load(const CacheKey& key) const {
  std::ifstream in(dir_ / key.file_name());
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    SparseMatrix m = read_matrix(in);
    ++hits_;
    return m;
  } catch (const FormatError&) {
    ++misses_;
    return std::nullopt;
  }
}

void DifferentialCache::store(const CacheKey& key, const SparseMatrix& m) const {
  static std::atomic<unsigned long> counter{0};
  auto target = dir_ / key.file_name();
  std::ostringstream tmp_name;
  tmp_name << key.file_name() << ".tmp." << ::getpid() << '.'
           << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
  auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) throw FormatError("cannot write cache file " + tmp.string());
    write_matrix(out, m);
    if (!out) throw FormatError("cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw FormatError("cannot publish cache file " + target.string());
  }
}

}  // namespace affsp
