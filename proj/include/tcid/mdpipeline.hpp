// Identities of one multidegree, computed without representation theory.
//
// Columns are the canonical nonassociative monomials of multidegree delta
// (type by type, words ascending); rows are the associative words, indexed
// lexicographically.  The kernel of the expansion map is found by streaming
// row chunks through an incremental reduction; the consequences of I are
// then quotiented out and the leftover kernel vector is the new identity.

#ifndef TCID_MDPIPELINE_HPP
#define TCID_MDPIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcid/incremental_rcf.hpp"
#include "tcid/liftgen.hpp"
#include "tcid/modlinalg.hpp"
#include "tcid/ternary.hpp"

namespace tcid {

/// The multidegree of the main run: a^2 b^2 c^2 d^2 e^2 f.
inline const Multidegree kTargetMultidegree{2, 2, 2, 2, 2, 1};

/// Expansions of all canonical monomials as signed 1-based word indices.
class ExpansionStore final : public ColumnChunkSource {
public:
  explicit ExpansionStore(const Multidegree& delta, unsigned threads = 1);

  const Multidegree& multidegree() const noexcept { return delta_; }
  const WordRanker& ranker() const noexcept { return ranker_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  std::optional<std::size_t> column_of(const Monomial& m) const;
  /// Column j as +-k entries, sorted by k.
  std::span<const std::int32_t> column(std::size_t j) const;
  std::size_t terms_per_column() const noexcept { return width_; }

  std::size_t columns() const override { return monomials_.size(); }
  std::uint64_t total_rows() const override { return ranker_.count(); }
  void column_entries(std::size_t col, std::uint64_t first_row, std::uint64_t row_count,
                      std::vector<Entry>& out) const override;

private:
  struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
  };
  Multidegree delta_;
  WordRanker ranker_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::size_t width_ = 0;
  std::vector<std::int32_t> data_;
};

/// Raised when a stage invariant fails; carries the stage name.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

struct KernelBasis {
  std::size_t rank = 0;                               // of the expansion map
  std::vector<std::size_t> free_columns;              // one per basis vector
  std::vector<std::vector<std::uint32_t>> residues;   // canonical basis mod p
  std::vector<std::vector<std::int64_t>> integers;    // coprime integer forms
};

using Progress = std::function<void(const std::string&)>;

/// Streams the rows in chunks of `chunk_rows` (16200 by default).
KernelBasis kernel_of_expansion(const ExpansionStore& store, std::uint32_t p,
                                std::uint64_t chunk_rows = 16200, unsigned threads = 1,
                                const Progress& progress = {});

/// The sparse coefficient vector of a polynomial in the store's columns.
std::vector<std::pair<std::size_t, std::int64_t>> coefficient_vector(const ExpansionStore& store,
                                                                     const TernaryPolynomial& poly);

struct ConsequenceSpace {
  ModMatrix rows;               // one row per substitution, (675 + 1) x columns for a^2b^2c^2d^2e^2f
  std::size_t filled = 0;       // substitutions
  std::size_t rank = 0;
  std::vector<std::size_t> per_family;
};
ConsequenceSpace consequence_space(const ExpansionStore& store, std::uint32_t p);

/// sum_k v_k * E(column k) mod p is zero.
bool annihilated_mod_p(const ExpansionStore& store, std::span<const std::uint32_t> v, std::uint32_t p);

struct KernelStats {
  std::size_t min_nonzero = 0, max_nonzero = 0;
  std::size_t min_distinct = 0, max_distinct = 0;
  std::uint64_t min_square = 0, max_square = 0;
};
KernelStats kernel_statistics(const KernelBasis& k);
std::uint64_t square_length(std::span<const std::int64_t> v);

struct NewVector {
  std::size_t sorted_position = 0;    // 1-based
  std::size_t original_position = 0;  // 1-based
  std::vector<std::int64_t> vector;
};
/// Sorts the kernel by (square length, original index) and returns the first
/// vector outside the span of the consequences.
NewVector find_new_vector(const KernelBasis& kernel, const ConsequenceSpace& cons);

struct IdentityTerm {
  std::int64_t coefficient;
  Monomial monomial;
};
std::vector<IdentityTerm> identity_terms(const ExpansionStore& store, std::span<const std::int64_t> v);

/// Exact accumulation of all expansions into one slot per associative word.
bool verify_expansion_zero(const ExpansionStore& store, std::span<const std::int64_t> v);
bool verify_expansion_zero(std::span<const IdentityTerm> terms, const Multidegree& delta);

struct Linearized {
  std::size_t raw_terms = 0;
  TernaryPolynomial poly;
};
/// Replaces each repeated letter pair (x, x) by (x, y) + (y, x) with y the
/// next fresh letter: a->g, b->h, c->i, d->j, e->k for a^2b^2c^2d^2e^2f.
Linearized linearize(std::span<const IdentityTerm> terms, const Multidegree& delta);

struct Rank1021Check {
  std::size_t rank_without = 0;  // sym + liftings
  std::size_t rank_with = 0;     // plus the linearized identity
  bool allmat_match = false;
};
Rank1021Check verify_rank_1021(const TernaryPolynomial& linearized, std::uint32_t p,
                               unsigned threads = 1, const Progress& progress = {});

/// "coefficient<TAB>type<TAB>word" lines after a '#' header.
void write_identity_artifact(std::ostream& out, std::span<const IdentityTerm> terms,
                             const Multidegree& delta, std::uint32_t p);
std::vector<IdentityTerm> read_identity_artifact(std::istream& in);

struct MultidegreeOptions {
  std::uint32_t prime = kDefaultPrime;
  unsigned threads = 1;
  std::uint64_t chunk_rows = 16200;
  bool final_rank_check = true;
  Progress progress;
};

struct MultidegreeResult {
  std::size_t columns = 0;
  std::uint64_t words = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::size_t consequences = 0;
  std::size_t consequence_rank = 0;
  KernelStats stats;
  NewVector winner;
  std::vector<IdentityTerm> identity;
  std::set<std::int64_t> coefficients;
  std::vector<int> types;  // 1-based
  bool expansion_zero = false;
  std::size_t linearized_terms = 0;
  std::optional<Rank1021Check> final_check;
};

/// The whole computation; throws StageError on a failed invariant.
MultidegreeResult run_multidegree(const MultidegreeOptions& opt);

}  // namespace tcid

#endif  // TCID_MDPIPELINE_HPP
