#include "tcid/rep_cache.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace tcid {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

bool get_u32(std::istream& in, std::uint32_t& v) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) return false;
  v = b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

void fnv(std::uint64_t& h, std::uint64_t byte) {
  h ^= byte & 0xff;
  h *= 0x100000001b3ULL;
}

}  // namespace

std::uint64_t cache_key(const Partition& lambda, std::uint32_t p, std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int part : lambda.parts()) fnv(h, static_cast<std::uint64_t>(part));
  fnv(h, 0xff);
  for (int s = 0; s < 32; s += 8) fnv(h, p >> s);
  for (char c : tag) fnv(h, static_cast<unsigned char>(c));
  return h;
}

RepCache::RepCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path RepCache::path_for(const Partition& lambda, std::uint32_t p,
                                         std::string_view tag) const {
  char name[40];
  std::snprintf(name, sizeof name, "rep-%016llx.bin",
                static_cast<unsigned long long>(cache_key(lambda, p, tag)));
  return dir_ / name;
}

std::optional<std::vector<ModMatrix>> RepCache::load(const Partition& lambda, std::uint32_t p,
                                                     std::string_view tag, std::size_t count,
                                                     std::size_t dim) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(lambda, p, tag), std::ios::binary);
  if (!in) return std::nullopt;
  std::uint32_t v = 0;
  if (!get_u32(in, v) || v != static_cast<std::uint32_t>(lambda.size())) return std::nullopt;
  if (!get_u32(in, v) || v != lambda.parts().size()) return std::nullopt;
  for (int part : lambda.parts())
    if (!get_u32(in, v) || v != static_cast<std::uint32_t>(part)) return std::nullopt;
  if (!get_u32(in, v) || v != p) return std::nullopt;
  if (!get_u32(in, v) || v != count) return std::nullopt;
  if (!get_u32(in, v) || v != dim) return std::nullopt;
  std::vector<ModMatrix> mats;
  mats.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    ModMatrix a(dim, dim, p);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        if (!get_u32(in, v) || v >= p) return std::nullopt;
        a(r, c) = v;
      }
    mats.push_back(std::move(a));
  }
  return mats;
}

void RepCache::store(const Partition& lambda, std::uint32_t p, std::string_view tag,
                     const std::vector<ModMatrix>& mats) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto target = path_for(lambda, p, tag);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    const std::size_t dim = mats.empty() ? 0 : mats.front().rows();
    put_u32(out, static_cast<std::uint32_t>(lambda.size()));
    put_u32(out, static_cast<std::uint32_t>(lambda.parts().size()));
    for (int part : lambda.parts()) put_u32(out, static_cast<std::uint32_t>(part));
    put_u32(out, p);
    put_u32(out, static_cast<std::uint32_t>(mats.size()));
    put_u32(out, static_cast<std::uint32_t>(dim));
    for (const auto& m : mats)
      for (auto x : m.data()) put_u32(out, x);
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace tcid
