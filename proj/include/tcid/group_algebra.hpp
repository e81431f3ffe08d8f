// The rational group algebra QS_n and the matrix units of its Wedderburn
// components.
//
// For standard tableaux T_1 < ... < T_d of shape lambda:
//   D_ii = (d/n!) sum_{s in R_i} sum_{t in C_i} sign(t) s t,
//   D_ij = D_ii s_ij^{-1}          (s_ij T_i = T_j),
//   E_ij = sum_k a_jk D_ik         ((a_jk) = A_id^{-1}).
// R_i, C_i are the row and column groups of T_i.  The elements get large
// quickly (|R_i||C_i| terms), so besides the expanded forms there are
// factored representations that never materialise them.

#ifndef TCID_GROUP_ALGEBRA_HPP
#define TCID_GROUP_ALGEBRA_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcid/modlinalg.hpp"
#include "tcid/natural_rep.hpp"
#include "tcid/permgroup.hpp"

namespace tcid {

class GroupAlgebraElement {
public:
  using TermMap = std::unordered_map<Permutation, Rational, PermutationHash>;

  explicit GroupAlgebraElement(int n = 0) : n_(n) {}
  static GroupAlgebraElement identity(int n);
  static GroupAlgebraElement of(const Permutation& p, Rational c = 1);

  int degree() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty() || scalar_.numerator() == 0; }

  /// Global factor multiplying every stored coefficient.
  const Rational& scalar() const noexcept { return scalar_; }
  void set_scalar(Rational s) { scalar_ = s; }

  /// Adds c (before the global scalar) to the coefficient of p.
  void add(const Permutation& p, const Rational& c);
  /// Coefficient including the global scalar.
  Rational coefficient(const Permutation& p) const;
  const TermMap& terms() const noexcept { return terms_; }
  /// Terms with the scalar folded in, sorted by permutation.
  std::vector<std::pair<Permutation, Rational>> sorted_terms() const;

  GroupAlgebraElement right_multiplied(const Permutation& p) const;
  GroupAlgebraElement left_multiplied(const Permutation& p) const;

  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const Rational& c, const GroupAlgebraElement& a);
  /// Compares the scalar-folded coefficients.
  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

private:
  int n_;
  Rational scalar_{1};
  TermMap terms_;
};

/// sum c_p R_p mod p.  Throws std::domain_error if a denominator vanishes mod p.
ModMatrix rep_of_element(const NaturalRepresentation& rep, const GroupAlgebraElement& f,
                         unsigned threads = 1);

/// The permutation s with s T_from = T_to (entries relabelled cell by cell).
Permutation tableau_transition(const StandardTableau& from, const StandardTableau& to);

GroupAlgebraElement row_symmetrizer(const StandardTableau& t);
GroupAlgebraElement column_antisymmetrizer(const StandardTableau& t);

/// D_ij with 0-based tableau indices; scalar d/n! kept as the global scalar.
GroupAlgebraElement d_element(const NaturalRepresentation& rep, std::size_t i, std::size_t j);
/// E_ij with 0-based tableau indices, fully expanded.
GroupAlgebraElement matrix_unit_element(const NaturalRepresentation& rep, std::size_t i,
                                        std::size_t j);

/// Representation of D_ii computed from its factorisation into row symmetrizers
/// and per-column antisymmetrizers (cost is the sum, not the product, of the
/// group orders).
ModMatrix d_diagonal_rep(const NaturalRepresentation& rep, std::size_t i);
/// R(D_ij) = R(D_ii) R(s_ij^{-1}).
ModMatrix d_element_rep(const NaturalRepresentation& rep, std::size_t i, std::size_t j);
/// R(E_ij) via the same factorisation.
ModMatrix matrix_unit_rep(const NaturalRepresentation& rep, std::size_t i, std::size_t j);

/// Row j (0-based) of A_id^{-1} as (k, a_jk) pairs with a_jk != 0.
std::vector<std::pair<std::size_t, Rational>> matrix_unit_support(const NaturalRepresentation& rep,
                                                                  std::size_t j);

std::string to_string(const Rational& q);

}  // namespace tcid

#endif  // TCID_GROUP_ALGEBRA_HPP
