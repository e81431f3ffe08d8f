#include "tcid/modlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace tcid {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), pinv_(1.0 / static_cast<double>(p)) {
  if (p < 3 || p >= (1u << 26) || !is_prime(p))
    throw std::invalid_argument("modulus must be an odd prime below 2^26, got " +
                                std::to_string(p));
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero mod p");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a % p_;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

std::uint32_t PrimeField::reduce_double(double t) const noexcept {
  const double pd = p_;
  double r = t - std::floor(t * pinv_) * pd;
  if (r < 0) r += pd;
  if (r >= pd) r -= pd;
  return static_cast<std::uint32_t>(r);
}

void PrimeField::axpy(std::span<std::uint32_t> y, std::uint32_t a,
                      std::span<const std::uint32_t> x) const noexcept {
  const double ad = a;
  const double pd = p_;
  const double pinv = pinv_;
  std::uint32_t* __restrict yp = y.data();
  const std::uint32_t* __restrict xp = x.data();
  const std::size_t n = y.size();
  for (std::size_t j = 0; j < n; ++j) {
    double t = static_cast<double>(yp[j]) + ad * static_cast<double>(xp[j]);
    double r = t - std::floor(t * pinv) * pd;
    r = r < 0 ? r + pd : r;
    r = r >= pd ? r - pd : r;
    yp[j] = static_cast<std::uint32_t>(r);
  }
}

void PrimeField::scale(std::span<std::uint32_t> x, std::uint32_t a) const noexcept {
  for (auto& v : x) v = mul(v, a);
}

// ---------------------------------------------------------------------------

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), field_(p), data_(rows * cols, 0) {}

ModMatrix ModMatrix::identity(std::size_t n, std::uint32_t p) {
  ModMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool ModMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

void ModMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                   data_.begin() + b * cols_);
}

void ModMatrix::truncate_rows(std::size_t n) {
  if (n > rows_) throw std::out_of_range("truncate_rows beyond row count");
  rows_ = n;
  data_.resize(rows_ * cols_);
}

void ModMatrix::append_rows(const ModMatrix& other) {
  if (other.cols_ != cols_ || other.modulus() != modulus())
    throw std::invalid_argument("append_rows: shape or modulus mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

void ModMatrix::set_block(std::size_t r0, std::size_t c0, const ModMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw std::out_of_range("set_block outside matrix");
  for (std::size_t i = 0; i < b.rows_; ++i)
    std::copy_n(b.data_.begin() + i * b.cols_, b.cols_, data_.begin() + (r0 + i) * cols_ + c0);
}

ModMatrix ModMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                           std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::out_of_range("block outside matrix");
  ModMatrix out(nrows, ncols, modulus());
  for (std::size_t i = 0; i < nrows; ++i)
    std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, ncols, out.data_.begin() + i * ncols);
  return out;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  if (a.cols_ != b.rows_ || a.modulus() != b.modulus())
    throw std::invalid_argument("matrix product: shape or modulus mismatch");
  ModMatrix c(a.rows_, b.cols_, a.modulus());
  const PrimeField& f = a.field_;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::uint32_t v = a(i, k);
      if (v != 0) f.axpy(crow, v, b.row(k));
    }
  }
  return c;
}

ModMatrix operator+(const ModMatrix& a, const ModMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.modulus() != b.modulus())
    throw std::invalid_argument("matrix sum: shape or modulus mismatch");
  ModMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.field_.add(c.data_[i], b.data_[i]);
  return c;
}

bool operator==(const ModMatrix& a, const ModMatrix& b) noexcept {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.modulus() == b.modulus() &&
         a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

std::size_t rcf_in_place(ModMatrix& m) {
  const PrimeField& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swap_rows(piv, rank);
    auto prow = m.row(rank).subspan(c);
    f.scale(prow, f.inv(prow[0]));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      std::uint32_t v = m(i, c);
      if (v != 0) f.axpy(m.row(i).subspan(c), f.neg(v), prow);
    }
    ++rank;
  }
  return rank;
}

RcfResult rcf(ModMatrix m) {
  std::size_t rank = rcf_in_place(m);
  m.truncate_rows(rank);
  return {std::move(m), rank};
}

bool is_rcf(const ModMatrix& m) {
  std::size_t last_lead = 0;
  bool seen_zero_row = false;
  std::vector<std::size_t> leads;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    auto it = std::find_if(r.begin(), r.end(), [](std::uint32_t v) { return v != 0; });
    if (it == r.end()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    std::size_t c = static_cast<std::size_t>(it - r.begin());
    if (*it != 1) return false;
    if (!leads.empty() && c <= last_lead) return false;
    last_lead = c;
    leads.push_back(c);
  }
  for (std::size_t k = 0; k < leads.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != k && m(i, leads[k]) != 0) return false;
  return true;
}

LeadingSet leading_columns(const ModMatrix& m) {
  if (!is_rcf(m)) throw std::invalid_argument("leading_columns: matrix is not in rcf");
  LeadingSet out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    auto it = std::find_if(r.begin(), r.end(), [](std::uint32_t v) { return v != 0; });
    if (it != r.end()) out.push_back(static_cast<std::size_t>(it - r.begin()));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> nullspace_canonical_basis(const ModMatrix& m) {
  ModMatrix r = m;
  std::size_t rank = rcf_in_place(r);
  r.truncate_rows(rank);
  LeadingSet lead = leading_columns(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : lead) is_pivot[c] = true;
  const PrimeField& f = r.field();
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t k = 0; k < rank; ++k) v[lead[k]] = f.neg(r(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

std::int64_t lift_one(std::uint32_t r, std::uint32_t p) {
  return r > p / 2 ? static_cast<std::int64_t>(r) - p : static_cast<std::int64_t>(r);
}

void divide_by_gcd(std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

}  // namespace

std::vector<std::int64_t> symmetric_lift(std::span<const std::uint32_t> v, std::uint32_t p) {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = lift_one(v[i] % p, p);
  divide_by_gcd(out);
  return out;
}

std::vector<std::int64_t> lift_primitive(std::span<const std::uint32_t> v, std::uint32_t p,
                                         std::int64_t bound) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] % p != 0) support.push_back(i);
  if (support.empty()) return std::vector<std::int64_t>(v.size(), 0);
  // Entries equal to +-1 accept every small scalar; test the others first.
  std::stable_partition(support.begin(), support.end(), [&](std::size_t i) {
    std::uint32_t r = v[i] % p;
    return r != 1 && r != p - 1;
  });
  const PrimeField f(p);
  for (std::int64_t s = 1; s <= bound; ++s) {
    const auto sr = static_cast<std::uint32_t>(s % p);
    bool ok = true;
    for (auto i : support) {
      std::int64_t x = lift_one(f.mul(v[i] % p, sr), p);
      if (x > bound || x < -bound) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::int64_t> out(v.size(), 0);
    for (auto i : support) out[i] = lift_one(f.mul(v[i] % p, sr), p);
    divide_by_gcd(out);
    return out;
  }
  return {};
}

bool row_space_equal(const ModMatrix& a, const ModMatrix& b) {
  return a.cols() == b.cols() && a == b;
}

std::size_t rank_of(ModMatrix m) { return rcf_in_place(m); }

void write_matrix_dump(std::ostream& out, const ModMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.modulus() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
    out << '\n';
  }
}

ModMatrix read_matrix_dump(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  std::uint32_t p = 0;
  if (!(in >> rows >> cols >> p)) throw std::runtime_error("matrix dump: bad header");
  ModMatrix m(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::uint64_t v = 0;
      if (!(in >> v)) throw std::runtime_error("matrix dump: truncated body");
      if (v >= p) throw std::runtime_error("matrix dump: entry not reduced");
      m(i, j) = static_cast<std::uint32_t>(v);
    }
  return m;
}

}  // namespace tcid
