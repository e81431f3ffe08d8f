// The degree-7 identity I(a,...,g) and its consequences in degrees 9 and 11.
//
//   I = sum_{s in S_6} sign(s) ( [[[b,c,d],a,e],f,g] + [[a,b,c],[d,e,f],g] )^s
//
// with s permuting b..g.  A lifting is I applied to arguments that may be
// brackets, placed inside a context such as [*,h,i]; evaluating it grafts the
// trees literally and normalizes every term.

#ifndef TCID_LIFTGEN_HPP
#define TCID_LIFTGEN_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tcid/group_algebra.hpp"
#include "tcid/ternary.hpp"

namespace tcid {

class TernaryPolynomial {
public:
  using TermMap = std::map<Monomial, Rational>;

  /// Adds c times a signed monomial; zero monomials are ignored.
  void add(const SignedMonomial& m, const Rational& c);
  /// Normalizes t first.
  void add(const Term& t, const Rational& c);

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  /// Divides by the gcd of the numerators (coefficients must be integral);
  /// the first coefficient becomes positive.
  void make_primitive();
  /// Sorted indices of the association types used.
  std::vector<int> types_used() const;

  /// Expansion collected over Z; empty iff the polynomial is an identity.
  std::map<Word, Rational> expansion() const;
  bool expands_to_zero() const { return expansion().empty(); }

  /// Applies a letter map to every term and renormalizes.
  TernaryPolynomial relabelled(const std::function<Letter(Letter)>& f) const;

  /// One "coefficient<TAB>monomial" line per term.
  void write(std::ostream& out) const;

  friend bool operator==(const TernaryPolynomial&, const TernaryPolynomial&) = default;

private:
  TermMap terms_;
};

/// Letter used as the hole in a lifting context.
inline constexpr Letter kHole = 255;

struct Lifting {
  std::array<Term, 7> args;
  Term context = Term::leaf(kHole);

  /// Replaces letter x (in the arguments or the context) by [x,y,z].
  Lifting substituted(Letter x, Letter y, Letter z) const;
  /// Wraps the context: C -> [C,y,z].
  Lifting embedded(Letter y, Letter z) const;
  /// E.g. "[I([a,h,i],b,c,d,e,f,g),j,k]".
  std::string to_string() const;
  int degree() const;
};

/// I with arbitrary arguments, before collection into canonical form.
std::vector<std::pair<int, Term>> identity_I_raw(const std::array<Term, 7>& args);
/// Evaluates a lifting: every raw term of I grafted into the context and normalized.
TernaryPolynomial evaluate(const Lifting& l, const std::function<Letter(Letter)>& relabel = {});

/// I(a,...,g) collected: 120 terms, made primitive.
TernaryPolynomial identity_I();

/// I([a,h,i],b,...), I(a,[b,h,i],...), [I(a,...,g),h,i].
std::vector<Lifting> liftings_degree9();
/// The eight degree-11 liftings, composed from the degree-9 ones.
std::vector<Lifting> liftings_degree11();
/// The liftings used for a degree: none for 5 and 7, three for 9, eight for 11.
std::vector<Lifting> liftings_for_degree(int degree);

/// Variable assignment q_1..q_n to the lifting letters a, b, ...: strictly
/// increasing chains of letter positions plus strict block comparisons.
struct SubstitutionRule {
  std::vector<std::vector<int>> chains;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
  bool accepts(const Word& q) const;
};
/// The rules for the eight degree-11 liftings and multidegree a^2b^2c^2d^2e^2f.
std::vector<SubstitutionRule> multidegree_rules();

struct SubstitutedLifting {
  int family;  // 0-based
  Word q;      // q[x] replaces letter x
  TernaryPolynomial poly;
};
/// All rule-respecting substitutions, ordered by (family, q lexicographically).
std::vector<SubstitutedLifting> multidegree_substitutions(const Multidegree& delta);

/// Per-type group algebra elements of a multilinear polynomial: a monomial
/// with word w becomes the permutation k -> w_k.
std::vector<GroupAlgebraElement> to_group_algebra(const TernaryPolynomial& p, int degree);

}  // namespace tcid

#endif  // TCID_LIFTGEN_HPP
