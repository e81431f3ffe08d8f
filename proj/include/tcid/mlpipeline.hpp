// Multilinear identities one irreducible representation at a time.
//
// A multilinear polynomial of degree n is a list of group algebra elements,
// one per association type; in the representation for lambda it becomes a
// row of d x d blocks.  Identities form a left ideal, so their images form
// row spaces, compared through row canonical forms:
//   sym    = symmetries of the types (blocks I + R_pi),
//   symlif = sym plus the liftings of I (oldmat = its nonzero rcf rows),
//   allmat = all identities, from the kernel of the expansion map.

#ifndef TCID_MLPIPELINE_HPP
#define TCID_MLPIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tcid/group_algebra.hpp"
#include "tcid/modlinalg.hpp"
#include "tcid/natural_rep.hpp"
#include "tcid/permgroup.hpp"
#include "tcid/rep_cache.hpp"
#include "tcid/ternary.hpp"

namespace tcid {

/// Everything in the computation that does not depend on lambda.
struct PipelineInputs {
  int degree = 0;
  std::size_t types = 0;
  std::vector<SymmetryGenerator> symmetries;
  /// Per lifting family, per type.
  std::vector<std::vector<GroupAlgebraElement>> liftings;
  /// Per type: the signed permutations of its expansion.
  std::vector<std::vector<std::pair<std::int64_t, Permutation>>> expansions;

  /// Built once per degree (5, 7, 9 or 11) and shared.
  static const PipelineInputs& for_degree(int degree);
};

struct PipelineOptions {
  unsigned threads = 1;
  RepCache cache;
  /// Called with short progress messages; may be empty.
  std::function<void(const std::string&)> log;
};

/// (#symmetries * d) x (types * d).
ModMatrix sym_matrix(const NaturalRepresentation& rep, const PipelineInputs& in);
/// sym_matrix with one block row per lifting family appended.
ModMatrix symlif_matrix(const NaturalRepresentation& rep, const PipelineInputs& in,
                        const PipelineOptions& opt = {});

/// Representation matrices of the expansions of the types (cached).
std::vector<ModMatrix> expansion_reps(const NaturalRepresentation& rep, const PipelineInputs& in,
                                      const PipelineOptions& opt = {});
/// Representation matrices of the lifting families, family-major (cached).
std::vector<ModMatrix> lifting_reps(const NaturalRepresentation& rep, const PipelineInputs& in,
                                    const PipelineOptions& opt = {});

struct AllMatrix {
  ModMatrix allmat;            // a x (types * d), rcf
  std::size_t full_rank = 0;   // rank of the types*d x (types+1)*d matrix
};
/// Builds the expansion matrix, reduces it, keeps the rows whose leading 1
/// lies past the associative block and drops that block.
AllMatrix all_matrix(const NaturalRepresentation& rep, const PipelineInputs& in,
                     const PipelineOptions& opt = {});

struct PartitionReport {
  Partition lambda{std::vector<int>{1}};
  std::size_t number = 0;  // 1-based position in partitions_of(n)
  std::size_t dim = 0;
  std::size_t sym = 0;
  std::size_t symlif = 0;
  std::size_t all = 0;
  std::size_t new_count() const noexcept { return all - symlif; }
  /// Only meaningful when new_count() == 0.
  bool row_space_match = false;
  /// a >= sl >= s and the expansion matrix had full rank.
  bool invariants_ok = false;
};

struct PartitionComputation {
  PartitionReport report;
  ModMatrix oldmat;
  ModMatrix allmat;
};

PartitionComputation compute_partition(const Partition& lambda, std::uint32_t p,
                                       const PipelineOptions& opt = {});
inline PartitionReport partition_report(const Partition& lambda, std::uint32_t p,
                                        const PipelineOptions& opt = {}) {
  return compute_partition(lambda, p, opt).report;
}

/// Partitions of n with dimension <= max_dim, ascending dimension, ties in
/// partition order.
std::vector<Partition> partitions_by_dimension(int n, std::size_t max_dim);

// ---------------------------------------------------------------------------
// The new identity.

struct IdentityEntry {
  std::size_t column;  // 1-based column of allmat
  int type;            // 1-based association type
  std::size_t tableau; // 1-based tableau index
  std::int64_t coefficient;
};

struct IdentityReport {
  Partition lambda{std::vector<int>{1}};
  std::size_t dim = 0;
  std::size_t leading_column = 0;  // 1-based
  std::size_t row_index = 0;       // 1-based row of allmat
  std::vector<std::int64_t> row;   // coprime integers, types * d entries
  std::vector<IdentityEntry> entries;
};

/// One report per leading column of allmat missing from oldmat.  Throws
/// std::runtime_error("no new identity") when there is none.
std::vector<IdentityReport> extract_new_identities(const PartitionComputation& pc);

struct MatrixUnitSummand {
  std::int64_t coefficient;
  int type;                 // 1-based
  std::size_t j;            // 1-based: the summand is c [E_{1j}]_t
  /// E_{1j} = sum a_jk D_{1k}; (k 1-based, a_jk).
  std::vector<std::pair<std::size_t, Rational>> d_terms;
};

struct GroupAlgebraIdentity {
  std::vector<MatrixUnitSummand> summands;
  /// "72 [D_{1,119}]_2 - 36 [D_{1,121}]_2 ..."
  std::string to_string() const;
};

GroupAlgebraIdentity emit_group_algebra_identity(const IdentityReport& report,
                                                 const NaturalRepresentation& rep);

/// Representation of sum c [E_{1j}]_t as a d x (types * d) matrix, built from
/// the factored matrix units.
ModMatrix identity_representation(const GroupAlgebraIdentity& id, const NaturalRepresentation& rep,
                                  std::size_t types);

/// Rank of [a; b] mod p.
std::size_t stacked_rank(const ModMatrix& a, const ModMatrix& b);
/// True when every row of b lies in the row space of the rcf matrix a.
bool rows_in_space(const ModMatrix& a_rcf, const ModMatrix& b);

}  // namespace tcid

#endif  // TCID_MLPIPELINE_HPP
