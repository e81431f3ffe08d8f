// Streaming row reduction of very tall matrices over Z/p.
//
// IncrementalRcf keeps the row canonical form of every row added so far.  The
// basis rows are stored only on the currently free (non-pivot) columns: in an
// rcf every pivot column is a unit vector, so nothing is lost and both memory
// and the cost of reducing an incoming sparse row scale with the number of
// free columns.  Rows are accepted one at a time; non-redundant rows are
// buffered and folded into the basis in batches with a blocked update.

#ifndef TCID_INCREMENTAL_RCF_HPP
#define TCID_INCREMENTAL_RCF_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tcid/modlinalg.hpp"

namespace tcid {

struct SparseEntry {
  std::uint32_t col;
  std::int64_t value;
};

class IncrementalRcf {
public:
  IncrementalRcf(std::size_t cols, std::uint32_t p, std::size_t batch_rows = 512,
                 unsigned threads = 1);

  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  /// Rank of all rows folded in so far (pending rows are not counted).
  std::size_t rank() const noexcept { return pivot_of_row_.size(); }
  std::size_t pending_rows() const noexcept { return pending_count_; }

  /// Entries may repeat a column; repeated values are summed.
  void add_sparse_row(std::span<const SparseEntry> row);
  void add_dense_row(std::span<const std::uint32_t> row);
  /// Folds buffered rows into the basis.
  void flush();

  LeadingSet pivot_columns() const;
  std::vector<std::size_t> free_columns() const;
  /// The rcf as a rank x cols matrix.  Requires no pending rows.
  ModMatrix to_matrix() const;
  /// Canonical nullspace basis, one vector per free column in column order.
  std::vector<std::vector<std::uint32_t>> kernel_basis() const;
  /// True iff v lies in the row space.  Requires no pending rows.
  bool in_row_space(std::span<const std::uint32_t> v) const;

private:
  void reduce_into(std::span<const std::uint32_t> residues_by_col,
                   std::span<const std::uint32_t> cols, std::vector<double>& acc) const;
  void push_pending(const std::vector<double>& acc);
  void check_no_pending() const;

  PrimeField field_;
  std::size_t cols_;
  std::size_t batch_rows_;
  unsigned threads_;

  std::vector<std::uint32_t> active_;       // free columns, ascending
  std::vector<std::int32_t> active_pos_;    // column -> index in active_, or -1
  std::vector<std::uint32_t> pivot_of_row_; // basis row -> pivot column
  std::vector<std::int32_t> row_of_pivot_;  // column -> basis row, or -1
  std::vector<std::uint32_t> data_;         // rank x active_.size()

  std::vector<std::uint32_t> pending_;      // pending_count_ x active_.size()
  std::size_t pending_count_ = 0;
  std::vector<double> scratch_;
};

/// Source of a tall matrix delivered column by column, restricted to a range
/// of rows.  Used to stream matrices that are never materialised whole.
class ColumnChunkSource {
public:
  struct Entry {
    std::uint64_t row;  // 0-based global row index
    std::int64_t value;
  };
  virtual ~ColumnChunkSource() = default;
  virtual std::size_t columns() const = 0;
  virtual std::uint64_t total_rows() const = 0;
  /// Appends to `out` every entry of column `col` whose row lies in
  /// [first_row, first_row + row_count).  Entries may repeat a row.
  virtual void column_entries(std::size_t col, std::uint64_t first_row, std::uint64_t row_count,
                              std::vector<Entry>& out) const = 0;
};

/// Adapter exposing a dense matrix as a ColumnChunkSource.
class DenseChunkSource final : public ColumnChunkSource {
public:
  explicit DenseChunkSource(const ModMatrix& m) : m_(m) {}
  std::size_t columns() const override { return m_.cols(); }
  std::uint64_t total_rows() const override { return m_.rows(); }
  void column_entries(std::size_t col, std::uint64_t first_row, std::uint64_t row_count,
                      std::vector<Entry>& out) const override;

private:
  const ModMatrix& m_;
};

using ChunkProgress = std::function<void(std::size_t chunk, std::size_t chunks, std::size_t rank)>;

/// Row reduction of the whole source, `chunk_size` rows at a time.  After each
/// chunk the buffered lower block is empty.
IncrementalRcf chunked_reduce(const ColumnChunkSource& source, std::uint64_t chunk_size,
                              std::uint32_t p, const ChunkProgress& progress = {},
                              unsigned threads = 1);

}  // namespace tcid

#endif  // TCID_INCREMENTAL_RCF_HPP
