// Clifton's matrices and the natural representation of S_n.
//
// For standard tableaux T_1 < ... < T_d of shape lambda, entry (i, j) of
// A_pi is zero when two numbers share a row of pi T_j and a column of T_i;
// otherwise it is the sign of the unique column permutation q of T_i with
// {q T_i} = {pi T_j}.  The natural representation is R_pi = A_id^{-1} A_pi,
// a homomorphism: R_{pi rho} = R_pi R_rho.

#ifndef TCID_NATURAL_REP_HPP
#define TCID_NATURAL_REP_HPP

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tcid/modlinalg.hpp"
#include "tcid/permgroup.hpp"

namespace tcid {

using Rational = boost::rational<std::int64_t>;

template <class T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<std::int64_t>;
using RationalMatrix = DenseMatrix<Rational>;

/// Exact inverse over Q; throws std::domain_error if singular.
RationalMatrix invert(const RationalMatrix& m);
/// Entries reduced mod p; throws std::domain_error if a denominator is divisible by p.
ModMatrix reduce_mod(const RationalMatrix& m, std::uint32_t p);
std::uint32_t reduce_mod(const Rational& q, const PrimeField& f);

class NaturalRepresentation {
public:
  /// Throws std::invalid_argument unless p is prime and p > n.
  NaturalRepresentation(const Partition& lambda, std::uint32_t p);

  const Partition& shape() const noexcept { return shape_; }
  int degree() const noexcept { return shape_.size(); }
  std::size_t dim() const noexcept { return tableaux_.size(); }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<StandardTableau>& tableaux() const noexcept { return tableaux_; }

  IntMatrix clifton(const Permutation& pi) const;
  /// acc += coeff * A_pi.
  void accumulate_clifton(const Permutation& pi, std::int64_t coeff, IntMatrix& acc) const;
  /// Exact (A_id)^{-1}.
  const RationalMatrix& clifton_identity_inverse() const noexcept { return ainv_; }

  /// (A_id)^{-1} S mod p for an integer combination S of Clifton matrices.
  ModMatrix from_clifton(const IntMatrix& clifton_sum) const;
  /// R_pi mod p.
  ModMatrix matrix(const Permutation& pi) const;
  /// sum_k c_k R_{pi_k} mod p.  Terms are split across threads; the integer
  /// accumulation is exact, so the result does not depend on `threads`.
  ModMatrix matrix_of_sum(std::span<const std::pair<std::int64_t, Permutation>> terms,
                          unsigned threads = 1) const;

private:
  Partition shape_;
  PrimeField field_;
  std::vector<StandardTableau> tableaux_;
  std::vector<int> col_lengths_;
  std::vector<std::uint8_t> col_entries_;  // dim x n, each tableau column-major
  std::vector<std::uint8_t> rows_;         // dim x n, row of each value
  RationalMatrix ainv_;
  ModMatrix ainv_mod_;
};

IntMatrix clifton_matrix(const Partition& lambda, const Permutation& pi);
ModMatrix natural_rep(const Partition& lambda, const Permutation& pi, std::uint32_t p);

}  // namespace tcid

#endif  // TCID_NATURAL_REP_HPP
