// Dense linear algebra over the prime field Z/p.
//
// Residues are stored in 32-bit words.  Products are formed in double
// precision, which is exact as long as p < 2^26 (products stay below 2^52);
// PrimeField enforces that bound.

#ifndef TCID_MODLINALG_HPP
#define TCID_MODLINALG_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace tcid {

/// Largest prime below 2^20.
inline constexpr std::uint32_t kDefaultPrime = 1048573;

bool is_prime(std::uint64_t n);

class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  std::uint32_t reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Multiplicative inverse; throws std::domain_error on zero.
  std::uint32_t inv(std::uint32_t a) const;

  /// y <- y + a*x, elementwise.
  void axpy(std::span<std::uint32_t> y, std::uint32_t a,
            std::span<const std::uint32_t> x) const noexcept;
  /// x <- a*x, elementwise.
  void scale(std::span<std::uint32_t> x, std::uint32_t a) const noexcept;

  /// Reduces an exact double (|t| < 2^52) to [0, p).
  std::uint32_t reduce_double(double t) const noexcept;
  double inverse_modulus() const noexcept { return pinv_; }

private:
  std::uint32_t p_;
  double pinv_;
};

class ModMatrix {
public:
  ModMatrix() : ModMatrix(0, 0, kDefaultPrime) {}
  ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static ModMatrix identity(std::size_t n, std::uint32_t p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  const PrimeField& field() const noexcept { return field_; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  std::uint32_t operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::span<std::uint32_t> row(std::size_t r) noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::uint32_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::uint32_t> data() const noexcept { return data_; }

  /// Stores an arbitrary integer after reduction mod p.
  void set(std::size_t r, std::size_t c, std::int64_t value) noexcept {
    (*this)(r, c) = field_.reduce(value);
  }

  bool is_zero() const noexcept;
  void swap_rows(std::size_t a, std::size_t b) noexcept;
  /// Keeps the first n rows (n <= rows()).
  void truncate_rows(std::size_t n);
  void append_rows(const ModMatrix& other);
  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const ModMatrix& block);
  ModMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend ModMatrix operator+(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) noexcept;

private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint32_t> data_;
};

/// Sorted column indices holding the leading 1 of some row of an rcf matrix.
using LeadingSet = std::vector<std::size_t>;

/// Brings m into row canonical form in place and returns the rank.  Rows
/// below the rank are zero.  Pivots are chosen left-to-right by column,
/// top-to-bottom by row.
std::size_t rcf_in_place(ModMatrix& m);

struct RcfResult {
  ModMatrix matrix;  // rank x cols, zero rows removed
  std::size_t rank = 0;
};
RcfResult rcf(ModMatrix m);

bool is_rcf(const ModMatrix& m);

/// Throws std::invalid_argument if m is not in row canonical form.
LeadingSet leading_columns(const ModMatrix& m);

/// One vector per non-pivot column (in column order): free variable set to 1,
/// the other free variables 0, pivots solved.  M v = 0 for each v.
std::vector<std::vector<std::uint32_t>> nullspace_canonical_basis(const ModMatrix& m);

/// Residues mapped into (-p/2, p/2], then divided by the gcd of the entries.
/// The zero vector is returned unchanged.
std::vector<std::int64_t> symmetric_lift(std::span<const std::uint32_t> v, std::uint32_t p);

/// Finds the smallest scalar s > 0 such that s*v has a symmetric lift with all
/// entries of absolute value at most `bound`, and returns that lift divided by
/// its gcd.  This recovers a coprime integer vector from a projective residue
/// vector with denominators.  Returns an empty vector if no scalar <= bound
/// works.
std::vector<std::int64_t> lift_primitive(std::span<const std::uint32_t> v, std::uint32_t p,
                                         std::int64_t bound);

/// Both arguments must be in rcf with zero rows removed.
bool row_space_equal(const ModMatrix& a, const ModMatrix& b);

/// Rank of the row space spanned by the rows of m (m is copied).
std::size_t rank_of(ModMatrix m);

/// Text dump: "rows cols p" on the first line, then one row per line.
void write_matrix_dump(std::ostream& out, const ModMatrix& m);
ModMatrix read_matrix_dump(std::istream& in);

}  // namespace tcid

#endif  // TCID_MODLINALG_HPP
