#include "tcid/incremental_rcf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcid/parallel.hpp"

namespace tcid {

namespace {

// With p < 2^21 each product is below 2^42, so 1024 of them stay below the
// 2^53 limit of exactly representable doubles.
constexpr std::size_t kMaxDelayedTerms = 1024;
constexpr std::size_t kTileCols = 256;

void reduce_all(const PrimeField& f, std::vector<double>& acc) {
  for (auto& v : acc) v = f.reduce_double(v);
}

}  // namespace

IncrementalRcf::IncrementalRcf(std::size_t cols, std::uint32_t p, std::size_t batch_rows,
                               unsigned threads)
    : field_(p), cols_(cols), batch_rows_(std::clamp<std::size_t>(batch_rows, 1, kMaxDelayedTerms)),
      threads_(std::max(1u, threads)), active_(cols), active_pos_(cols),
      row_of_pivot_(cols, -1) {
  if (static_cast<std::uint64_t>(p) >= (1ull << 21))
    throw std::invalid_argument("IncrementalRcf: delayed reduction requires p < 2^21");
  for (std::size_t c = 0; c < cols; ++c) {
    active_[c] = static_cast<std::uint32_t>(c);
    active_pos_[c] = static_cast<std::int32_t>(c);
  }
}

void IncrementalRcf::add_sparse_row(std::span<const SparseEntry> row) {
  const std::size_t width = active_.size();
  std::vector<SparseEntry> sorted(row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });

  scratch_.assign(width, 0.0);
  std::size_t delayed = 0;
  for (std::size_t k = 0; k < sorted.size();) {
    const std::uint32_t col = sorted[k].col;
    if (col >= cols_) throw std::out_of_range("IncrementalRcf: column index out of range");
    std::int64_t sum = 0;
    for (; k < sorted.size() && sorted[k].col == col; ++k) sum += sorted[k].value;
    const std::uint32_t r = field_.reduce(sum);
    if (r == 0) continue;
    const std::int32_t br = row_of_pivot_[col];
    if (br < 0) {
      scratch_[active_pos_[col]] += r;
      continue;
    }
    const double a = field_.neg(r);
    const std::uint32_t* __restrict u = data_.data() + static_cast<std::size_t>(br) * width;
    double* __restrict acc = scratch_.data();
    for (std::size_t j = 0; j < width; ++j) acc[j] += a * static_cast<double>(u[j]);
    if (++delayed == kMaxDelayedTerms) {
      reduce_all(field_, scratch_);
      delayed = 0;
    }
  }
  push_pending(scratch_);
}

void IncrementalRcf::add_dense_row(std::span<const std::uint32_t> row) {
  if (row.size() != cols_) throw std::invalid_argument("IncrementalRcf: dense row has wrong length");
  std::vector<SparseEntry> entries;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] != 0) entries.push_back({static_cast<std::uint32_t>(c), row[c]});
  add_sparse_row(entries);
}

void IncrementalRcf::push_pending(const std::vector<double>& acc) {
  const std::size_t width = active_.size();
  bool nonzero = false;
  const std::size_t base = pending_.size();
  pending_.resize(base + width);
  for (std::size_t j = 0; j < width; ++j) {
    std::uint32_t v = field_.reduce_double(acc[j]);
    pending_[base + j] = v;
    nonzero |= v != 0;
  }
  if (!nonzero) {
    pending_.resize(base);
    return;
  }
  if (++pending_count_ == batch_rows_) flush();
}

void IncrementalRcf::flush() {
  if (pending_count_ == 0) return;
  const std::size_t width = active_.size();
  ModMatrix batch(pending_count_, width, field_.modulus());
  std::copy(pending_.begin(), pending_.end(), batch.row(0).data());
  pending_.clear();
  pending_count_ = 0;

  const std::size_t new_rank = rcf_in_place(batch);
  if (new_rank == 0) return;
  batch.truncate_rows(new_rank);
  const LeadingSet qpos = leading_columns(batch);

  // Eliminate the new pivot columns from the existing basis rows:
  // U <- U - U[:, qpos] * batch, tiled over columns.
  const std::size_t old_rank = rank();
  if (old_rank > 0) {
    std::vector<std::uint32_t> coef(old_rank * new_rank);
    std::vector<char> touched(old_rank, 0);
    for (std::size_t i = 0; i < old_rank; ++i) {
      const std::uint32_t* u = data_.data() + i * width;
      for (std::size_t k = 0; k < new_rank; ++k) {
        coef[i * new_rank + k] = u[qpos[k]];
        touched[i] |= u[qpos[k]] != 0;
      }
    }
    std::vector<double> bd(new_rank * width);
    for (std::size_t k = 0; k < new_rank; ++k)
      for (std::size_t j = 0; j < width; ++j) bd[k * width + j] = batch(k, j);

    parallel_for(old_rank, threads_, [&](std::size_t begin, std::size_t end, unsigned) {
      std::vector<double> acc(kTileCols);
      for (std::size_t j0 = 0; j0 < width; j0 += kTileCols) {
        const std::size_t tw = std::min(kTileCols, width - j0);
        for (std::size_t i = begin; i < end; ++i) {
          if (!touched[i]) continue;
          std::fill_n(acc.begin(), tw, 0.0);
          double* __restrict a = acc.data();
          for (std::size_t k = 0; k < new_rank; ++k) {
            const double c = coef[i * new_rank + k];
            if (c == 0) continue;
            const double* __restrict b = bd.data() + k * width + j0;
            for (std::size_t j = 0; j < tw; ++j) a[j] += c * b[j];
          }
          std::uint32_t* u = data_.data() + i * width + j0;
          for (std::size_t j = 0; j < tw; ++j)
            u[j] = field_.reduce_double(static_cast<double>(u[j]) - a[j]);
        }
      }
    });
  }

  // Append the new rows, then drop the new pivot columns from every row.
  data_.insert(data_.end(), batch.data().begin(), batch.data().end());
  for (std::size_t k = 0; k < new_rank; ++k) {
    const std::uint32_t col = active_[qpos[k]];
    row_of_pivot_[col] = static_cast<std::int32_t>(pivot_of_row_.size());
    pivot_of_row_.push_back(col);
  }
  if (rank() > cols_) throw std::logic_error("IncrementalRcf: rank exceeds column count");

  std::vector<char> keep(width, 1);
  for (auto q : qpos) keep[q] = 0;
  const std::size_t new_width = width - new_rank;
  const std::size_t total_rows = rank();
  for (std::size_t i = 0; i < total_rows; ++i) {
    const std::uint32_t* src = data_.data() + i * width;
    std::uint32_t* dst = data_.data() + i * new_width;
    std::size_t w = 0;
    for (std::size_t j = 0; j < width; ++j)
      if (keep[j]) dst[w++] = src[j];
  }
  data_.resize(total_rows * new_width);
  data_.shrink_to_fit();

  std::vector<std::uint32_t> next_active;
  next_active.reserve(new_width);
  for (std::size_t j = 0; j < width; ++j) {
    if (keep[j]) {
      active_pos_[active_[j]] = static_cast<std::int32_t>(next_active.size());
      next_active.push_back(active_[j]);
    } else {
      active_pos_[active_[j]] = -1;
    }
  }
  active_ = std::move(next_active);
}

void IncrementalRcf::check_no_pending() const {
  if (pending_count_ != 0) throw std::logic_error("IncrementalRcf: flush() before reading");
}

LeadingSet IncrementalRcf::pivot_columns() const {
  LeadingSet out(pivot_of_row_.begin(), pivot_of_row_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> IncrementalRcf::free_columns() const {
  return {active_.begin(), active_.end()};
}

ModMatrix IncrementalRcf::to_matrix() const {
  check_no_pending();
  const std::size_t width = active_.size();
  std::vector<std::size_t> order(rank());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivot_of_row_[a] < pivot_of_row_[b]; });
  ModMatrix m(rank(), cols_, modulus());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t i = order[r];
    m(r, pivot_of_row_[i]) = 1;
    for (std::size_t j = 0; j < width; ++j) m(r, active_[j]) = data_[i * width + j];
  }
  return m;
}

std::vector<std::vector<std::uint32_t>> IncrementalRcf::kernel_basis() const {
  check_no_pending();
  const std::size_t width = active_.size();
  std::vector<std::vector<std::uint32_t>> basis;
  basis.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<std::uint32_t> v(cols_, 0);
    v[active_[j]] = 1;
    for (std::size_t i = 0; i < rank(); ++i) v[pivot_of_row_[i]] = field_.neg(data_[i * width + j]);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool IncrementalRcf::in_row_space(std::span<const std::uint32_t> v) const {
  check_no_pending();
  if (v.size() != cols_) throw std::invalid_argument("in_row_space: wrong length");
  const std::size_t width = active_.size();
  std::vector<double> acc(width, 0.0);
  std::size_t delayed = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::uint32_t r = v[c] % field_.modulus();
    if (r == 0) continue;
    const std::int32_t br = row_of_pivot_[c];
    if (br < 0) {
      acc[active_pos_[c]] += r;
      continue;
    }
    const double a = field_.neg(r);
    const std::uint32_t* u = data_.data() + static_cast<std::size_t>(br) * width;
    for (std::size_t j = 0; j < width; ++j) acc[j] += a * static_cast<double>(u[j]);
    if (++delayed == kMaxDelayedTerms) {
      reduce_all(field_, acc);
      delayed = 0;
    }
  }
  return std::all_of(acc.begin(), acc.end(),
                     [&](double x) { return field_.reduce_double(x) == 0; });
}

// ---------------------------------------------------------------------------

void DenseChunkSource::column_entries(std::size_t col, std::uint64_t first_row,
                                      std::uint64_t row_count, std::vector<Entry>& out) const {
  const std::uint64_t end = std::min<std::uint64_t>(m_.rows(), first_row + row_count);
  for (std::uint64_t r = first_row; r < end; ++r)
    if (std::uint32_t v = m_(r, col); v != 0) out.push_back({r, v});
}

IncrementalRcf chunked_reduce(const ColumnChunkSource& source, std::uint64_t chunk_size,
                              std::uint32_t p, const ChunkProgress& progress, unsigned threads) {
  if (chunk_size == 0) throw std::invalid_argument("chunked_reduce: chunk size must be positive");
  const std::size_t cols = source.columns();
  const std::uint64_t total = source.total_rows();
  const std::size_t chunks = static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
  IncrementalRcf upper(cols, p, 512, threads);

  std::vector<std::vector<SparseEntry>> lower;
  std::vector<ColumnChunkSource::Entry> buf;
  for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
    const std::uint64_t first = chunk * chunk_size;
    const std::uint64_t count = std::min<std::uint64_t>(chunk_size, total - first);
    lower.resize(count);
    for (auto& r : lower) r.clear();
    for (std::size_t j = 0; j < cols; ++j) {
      buf.clear();
      source.column_entries(j, first, count, buf);
      for (const auto& e : buf) {
        if (e.row < first || e.row >= first + count)
          throw std::out_of_range("chunked_reduce: source returned a row outside the chunk");
        lower[e.row - first].push_back({static_cast<std::uint32_t>(j), e.value});
      }
    }
    for (const auto& r : lower)
      if (!r.empty()) upper.add_sparse_row(r);
    upper.flush();
    if (progress) progress(chunk + 1, chunks, upper.rank());
  }
  return upper;
}

}  // namespace tcid
