// Combinatorics of the symmetric group: permutations, partitions, standard
// tableaux, Clifton's matrices and the natural representation.
//
// Conventions used throughout the library:
//  * points are 0-based internally (0..n-1) and printed 1-based;
//  * (p * q)(i) = p(q(i)), so q acts first;
//  * a permutation s acts on a tableau by relabelling every entry x as s(x).

#ifndef TCID_PERMGROUP_HPP
#define TCID_PERMGROUP_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcid {

inline constexpr int kMaxDegree = 16;

class Permutation {
public:
  Permutation() = default;
  /// 0-based images; throws std::invalid_argument unless a bijection.
  explicit Permutation(std::span<const int> images);
  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);
  static Permutation from_one_based(std::span<const int> images);

  int degree() const noexcept { return n_; }
  int operator[](int i) const noexcept { return img_[static_cast<std::size_t>(i)]; }
  std::vector<int> images() const;

  int sign() const noexcept;
  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// One-line notation, 1-based, e.g. "2 1 3".
  std::string to_string() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::size_t hash() const noexcept;

private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxDegree> img_{};
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

/// All permutations of {0..n-1} in lexicographic order of their images.
std::vector<Permutation> all_permutations(int n);

class Partition {
public:
  /// Parts must be positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);
  /// Accepts "2,2,2,2,2,1", "2 2 2 2 2 1" or exponent form "2^5 1".
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const noexcept { return n_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  Partition conjugate() const;
  /// Exponent form, e.g. "2^5 1" or "11".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
std::vector<Partition> partitions_of(int n);

/// Number of standard tableaux of shape lambda (hook length formula).
std::uint64_t dimension(const Partition& lambda);

class StandardTableau {
public:
  StandardTableau(Partition shape, std::vector<int> flat_entries);

  const Partition& shape() const noexcept { return shape_; }
  /// Entries row by row, 0-based values.
  const std::vector<int>& flat() const noexcept { return flat_; }
  int entry(int row, int col) const;
  int row_of(int value) const noexcept { return row_of_[static_cast<std::size_t>(value)]; }
  int col_of(int value) const noexcept { return col_of_[static_cast<std::size_t>(value)]; }
  /// Entries of each column, top to bottom.
  const std::vector<std::vector<int>>& columns() const noexcept { return columns_; }
  /// 1-based flattened form, e.g. "1 5 2 6 3 8 4 9 7 11 10".
  std::string to_string() const;

private:
  Partition shape_;
  std::vector<int> flat_;
  std::vector<int> row_offset_;
  std::array<std::uint8_t, kMaxDegree> row_of_{};
  std::array<std::uint8_t, kMaxDegree> col_of_{};
  std::vector<std::vector<int>> columns_;
};

/// All standard tableaux of shape lambda, ascending in flattened order.
std::vector<StandardTableau> standard_tableaux(const Partition& lambda);

}  // namespace tcid

#endif  // TCID_PERMGROUP_HPP
