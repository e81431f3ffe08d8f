#include "tcid/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcid {

Permutation::Permutation(std::span<const int> images) {
  if (images.size() > static_cast<std::size_t>(kMaxDegree))
    throw std::invalid_argument("permutation degree exceeds " + std::to_string(kMaxDegree));
  n_ = static_cast<std::uint8_t>(images.size());
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
    img_[i] = static_cast<std::uint8_t>(v);
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(v);
}

Permutation Permutation::transposition(int n, int i, int j) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::swap(v.at(static_cast<std::size_t>(i)), v.at(static_cast<std::size_t>(j)));
  return Permutation(v);
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> v(images.begin(), images.end());
  for (auto& x : v) --x;
  return Permutation(v);
}

std::vector<int> Permutation::images() const {
  return {img_.begin(), img_.begin() + n_};
}

int Permutation::sign() const noexcept {
  std::array<bool, kMaxDegree> seen{};
  int parity = 0;
  for (int i = 0; i < n_; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = img_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    parity += len - 1;
  }
  return parity % 2 == 0 ? 1 : -1;
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < n_; ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.n_ = n_;
  for (int i = 0; i < n_; ++i) r.img_[img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return r;
}

std::string Permutation::to_string() const {
  std::string s;
  for (int i = 0; i < n_; ++i) {
    if (i) s += ' ';
    s += std::to_string(img_[static_cast<std::size_t>(i)] + 1);
  }
  return s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("permutation product: degree mismatch");
  Permutation r;
  r.n_ = a.n_;
  for (std::size_t i = 0; i < a.n_; ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

std::size_t Permutation::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < n_; ++i) {
    h ^= img_[static_cast<std::size_t>(i)];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ n_);
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  if (n_ > kMaxDegree) throw std::invalid_argument("partition too large");
}

Partition Partition::parse(std::string_view text) {
  std::string s(text);
  for (auto& ch : s)
    if (ch == ',' || ch == '(' || ch == ')') ch = ' ';
  std::istringstream in(s);
  std::vector<int> parts;
  std::string tok;
  while (in >> tok) {
    auto caret = tok.find('^');
    try {
      if (caret == std::string::npos) {
        parts.push_back(std::stoi(tok));
      } else {
        int part = std::stoi(tok.substr(0, caret));
        int mult = std::stoi(tok.substr(caret + 1));
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        parts.insert(parts.end(), static_cast<std::size_t>(mult), part);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse partition '" + std::string(text) + "'");
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty partition");
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  for (int j = 0; j < (parts_.empty() ? 0 : parts_[0]); ++j) {
    int len = 0;
    for (int p : parts_)
      if (p > j) ++len;
    c.push_back(len);
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size();) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    if (!s.empty()) s += ' ';
    s += std::to_string(parts_[i]);
    if (j - i > 1) s += '^' + std::to_string(j - i);
    i = j;
  }
  return s;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("partitions_of: n out of range");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

std::uint64_t dimension(const Partition& lambda) {
  const auto conj = lambda.conjugate();
  std::uint64_t num = 1;
  for (int i = 2; i <= lambda.size(); ++i) num *= static_cast<std::uint64_t>(i);
  std::uint64_t hooks = 1;
  for (int r = 0; r < lambda.length(); ++r)
    for (int c = 0; c < lambda.parts()[static_cast<std::size_t>(r)]; ++c)
      hooks *= static_cast<std::uint64_t>((lambda.parts()[static_cast<std::size_t>(r)] - c - 1) +
                                          (conj.parts()[static_cast<std::size_t>(c)] - r - 1) + 1);
  return num / hooks;
}

// ---------------------------------------------------------------------------

StandardTableau::StandardTableau(Partition shape, std::vector<int> flat_entries)
    : shape_(std::move(shape)), flat_(std::move(flat_entries)) {
  const int n = shape_.size();
  if (static_cast<int>(flat_.size()) != n) throw std::invalid_argument("tableau size mismatch");
  int off = 0;
  for (int part : shape_.parts()) {
    row_offset_.push_back(off);
    off += part;
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  columns_.resize(static_cast<std::size_t>(shape_.parts().front()));
  for (int r = 0; r < shape_.length(); ++r) {
    for (int c = 0; c < shape_.parts()[static_cast<std::size_t>(r)]; ++c) {
      int v = entry(r, c);
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("tableau entries must be 0..n-1 once each");
      seen[static_cast<std::size_t>(v)] = true;
      if (c > 0 && entry(r, c - 1) > v) throw std::invalid_argument("tableau rows must increase");
      if (r > 0 && entry(r - 1, c) > v) throw std::invalid_argument("tableau columns must increase");
      row_of_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(r);
      col_of_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
      columns_[static_cast<std::size_t>(c)].push_back(v);
    }
  }
}

int StandardTableau::entry(int row, int col) const {
  return flat_[static_cast<std::size_t>(row_offset_[static_cast<std::size_t>(row)] + col)];
}

std::string StandardTableau::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < flat_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(flat_[i] + 1);
  }
  return s;
}

namespace {

void tableaux_rec(const Partition& shape, const std::vector<int>& offsets, int next,
                  std::vector<int>& row_len, std::vector<int>& flat,
                  std::vector<std::vector<int>>& out) {
  if (next == shape.size()) {
    out.push_back(flat);
    return;
  }
  for (int r = 0; r < shape.length(); ++r) {
    auto ru = static_cast<std::size_t>(r);
    if (row_len[ru] == shape.parts()[ru]) continue;
    if (r > 0 && row_len[ru - 1] <= row_len[ru]) continue;
    flat[static_cast<std::size_t>(offsets[ru] + row_len[ru])] = next;
    ++row_len[ru];
    tableaux_rec(shape, offsets, next + 1, row_len, flat, out);
    --row_len[ru];
  }
}

}  // namespace

std::vector<StandardTableau> standard_tableaux(const Partition& lambda) {
  std::vector<int> offsets;
  int off = 0;
  for (int part : lambda.parts()) {
    offsets.push_back(off);
    off += part;
  }
  std::vector<int> row_len(static_cast<std::size_t>(lambda.length()), 0);
  std::vector<int> flat(static_cast<std::size_t>(lambda.size()), -1);
  std::vector<std::vector<int>> flats;
  tableaux_rec(lambda, offsets, 0, row_len, flat, flats);
  std::sort(flats.begin(), flats.end());
  std::vector<StandardTableau> out;
  out.reserve(flats.size());
  for (auto& f : flats) out.emplace_back(lambda, std::move(f));
  return out;
}

}  // namespace tcid
