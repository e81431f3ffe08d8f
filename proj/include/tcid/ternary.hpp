// The free alternating ternary algebra.
//
// Association types are ternary trees taken up to reordering of children.
// Every tree is stored in canonical form: children of each bracket sorted by
// degree descending, then by type index ascending.  Types of one degree are
// listed by their children's degree vector (descending), then by children's
// indices (ascending); in degree 11 this gives exactly
//   1 [[[[[a,b,c],d,e],f,g],h,i],j,k]   5 [[[[a,b,c],d,e],f,g],[h,i,j],k]
//   2 [[[[a,b,c],[d,e,f],g],h,i],j,k]   6 [[[a,b,c],[d,e,f],g],[h,i,j],k]
//   3 [[[[a,b,c],d,e],[f,g,h],i],j,k]   7 [[[a,b,c],d,e],[[f,g,h],i,j],k]
//   4 [[[a,b,c],[d,e,f],[g,h,i]],j,k]   8 [[[a,b,c],d,e],[f,g,h],[i,j,k]]
//
// A monomial is a type plus the word of letters read off its leaves.  It is
// canonical when, in every bracket, consecutive children of the same shape
// have strictly increasing leaf words; any other monomial is +-1 times a
// canonical one or zero.  Type indices are 0-based in code.

#ifndef TCID_TERNARY_HPP
#define TCID_TERNARY_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tcid/permgroup.hpp"

namespace tcid {

using Letter = std::uint8_t;  // 0 = 'a', 1 = 'b', ...
using Word = std::vector<Letter>;

std::string word_to_string(const Word& w);
Word word_from_string(std::string_view s);

/// One child of a bracket: a contiguous run of leaves with a given shape.
struct Slice {
  int start;   // first leaf position
  int degree;  // leaf count
  int shape;   // type index within its degree (0 for a leaf)
};

struct Bracket {
  std::array<Slice, 3> child;
};

/// Same-shape neighbours inside one bracket: leaves [a, a+len) must be
/// lexicographically smaller than [b, b+len).
struct OrderConstraint {
  int a;
  int b;
  int len;
};

struct ExpansionTerm {
  int sign;
  Permutation tau;  // output position k carries the letter at leaf tau(k)
};

class AssocType {
public:
  int degree() const noexcept { return degree_; }
  int index() const noexcept { return index_; }
  /// Brackets in pre-order.
  const std::vector<Bracket>& brackets() const noexcept { return brackets_; }
  const std::vector<OrderConstraint>& constraints() const noexcept { return constraints_; }
  /// The type printed with the identity word, e.g. "[[a,b,c],d,e]".
  std::string to_string() const;
  /// Prints a word placed on this type's leaves.
  std::string format(const Word& w) const;

  /// Signed leaf orders of the expansion, 6^(#brackets) terms, each bracket
  /// expanded as abc - acb - bac + bca + cab - cba.
  const std::vector<ExpansionTerm>& expansion() const noexcept { return expansion_; }
  /// Size of the group of child reorderings that preserve the shape.
  std::uint64_t automorphisms() const noexcept { return aut_; }

private:
  friend class TypeTable;
  int degree_ = 1;
  int index_ = 0;
  std::array<std::pair<int, int>, 3> children_{};  // (degree, index); unused for leaves
  std::vector<Bracket> brackets_;
  std::vector<OrderConstraint> constraints_;
  std::vector<ExpansionTerm> expansion_;
  std::uint64_t aut_ = 1;
};

/// All types of the given odd degree (3 <= degree <= 15) in canonical order.
/// Throws std::invalid_argument for even or out-of-range degrees.
const std::vector<AssocType>& association_types(int degree);
const AssocType& assoc_type(int degree, int index);

struct Monomial {
  int type = 0;
  Word word;
  int degree() const noexcept { return static_cast<int>(word.size()); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct SignedMonomial {
  int sign = 0;  // 0 means the monomial vanishes
  Monomial monomial;
};

/// An arbitrary bracketing of letters: a leaf or a triple of subterms.
struct Term {
  Letter letter = 0;
  std::vector<Term> kids;  // empty or exactly three

  static Term leaf(Letter x) { return Term{x, {}}; }
  static Term bracket(Term x, Term y, Term z);
  bool is_leaf() const noexcept { return kids.empty(); }
  int degree() const noexcept;
};

/// Parses "[[a,b,c],d,e]"; throws std::invalid_argument on bad syntax.
Term parse_term(std::string_view text);
std::string to_string(const Term& t);
std::string to_string(const Monomial& m);
Term to_term(const Monomial& m);

/// Sorts the arguments of every bracket; the sign is the parity of all the
/// sorts.  Zero when some bracket has two equal arguments.
SignedMonomial normalize(const Term& t);
SignedMonomial normalize(const Monomial& m);
bool is_canonical(const Monomial& m);

/// Position permutation pi for each two-term symmetry iota + pi = 0.
struct SymmetryGenerator {
  int type;
  Permutation pi;
};
std::vector<SymmetryGenerator> symmetry_generators(int degree);

/// Number of canonical multilinear monomials of a type: n!/automorphisms.
std::uint64_t count_multilinear(const AssocType& t);

/// Signed words of the expansion, uncollected, in pattern order.
std::vector<std::pair<int, Word>> expand(const Monomial& m);

/// Letter multiplicities, e.g. {2,2,2,2,2,1} for a^2b^2c^2d^2e^2f.
using Multidegree = std::vector<int>;

/// Canonical words of one type with the given multidegree, ascending.
std::vector<Word> canonical_words(const AssocType& t, const Multidegree& delta);
/// Per-type canonical words for every type of degree |delta|.
std::vector<std::vector<Word>> enumerate_nonassoc_multidegree(const Multidegree& delta);

/// Lexicographic ranking of the permutations of a multiset.
class WordRanker {
public:
  explicit WordRanker(Multidegree delta);
  std::uint64_t count() const noexcept { return count_; }
  int length() const noexcept { return length_; }
  /// 0-based rank; throws std::invalid_argument on a wrong multidegree.
  std::uint64_t rank0(const Word& w) const;
  /// Unchecked variant for hot loops (w must have the right multidegree).
  std::uint64_t rank0_unchecked(const Letter* w) const noexcept;
  Word unrank0(std::uint64_t r) const;

private:
  Multidegree delta_;
  int length_ = 0;
  std::uint64_t count_ = 0;
};

/// 1-based index, as in "the lexicographical index of the associative monomial".
std::uint64_t rank_word(const Word& w, const Multidegree& delta);
Word unrank_word(std::uint64_t index, const Multidegree& delta);

}  // namespace tcid

#endif  // TCID_TERNARY_HPP
