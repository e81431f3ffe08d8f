// On-disk cache for lists of representation matrices.
//
// One file per (partition, prime, tag).  Layout, all little-endian uint32:
//   n, k, parts[k], p, count, d, then count row-major d x d matrices.
// A file whose header does not match the request is treated as a miss.

#ifndef TCID_REP_CACHE_HPP
#define TCID_REP_CACHE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "tcid/modlinalg.hpp"
#include "tcid/permgroup.hpp"

namespace tcid {

class RepCache {
public:
  /// An empty directory disables the cache.
  RepCache() = default;
  explicit RepCache(std::filesystem::path dir);

  bool enabled() const noexcept { return !dir_.empty(); }
  std::filesystem::path path_for(const Partition& lambda, std::uint32_t p, std::string_view tag) const;

  std::optional<std::vector<ModMatrix>> load(const Partition& lambda, std::uint32_t p,
                                             std::string_view tag, std::size_t count,
                                             std::size_t dim) const;
  /// Writes atomically (temporary file then rename).  Errors are ignored:
  /// a cache that cannot be written only costs time.
  void store(const Partition& lambda, std::uint32_t p, std::string_view tag,
             const std::vector<ModMatrix>& mats) const;

private:
  std::filesystem::path dir_;
};

/// FNV-1a over (parts, p, tag).
std::uint64_t cache_key(const Partition& lambda, std::uint32_t p, std::string_view tag);

}  // namespace tcid

#endif  // TCID_REP_CACHE_HPP
