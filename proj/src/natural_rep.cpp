#include "tcid/natural_rep.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "tcid/parallel.hpp"

namespace tcid {

RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("invert: matrix not square");
  RationalMatrix a = m;
  RationalMatrix inv(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).numerator() == 0) ++piv;
    if (piv == n) throw std::domain_error("invert: singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (a(c, j).numerator() != 0) a(c, j) *= s;
      if (inv(c, j).numerator() != 0) inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).numerator() == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (a(c, j).numerator() != 0) a(i, j) -= f * a(c, j);
        if (inv(c, j).numerator() != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::uint32_t reduce_mod(const Rational& q, const PrimeField& f) {
  const std::uint32_t den = f.reduce(q.denominator());
  if (den == 0) throw std::domain_error("denominator divisible by the modulus");
  return f.mul(f.reduce(q.numerator()), f.inv(den));
}

ModMatrix reduce_mod(const RationalMatrix& m, std::uint32_t p) {
  ModMatrix out(m.rows(), m.cols(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = reduce_mod(m(i, j), out.field());
  return out;
}

NaturalRepresentation::NaturalRepresentation(const Partition& lambda, std::uint32_t p)
    : shape_(lambda), field_(p), tableaux_(standard_tableaux(lambda)) {
  const int n = lambda.size();
  if (p <= static_cast<std::uint32_t>(n))
    throw std::invalid_argument("natural representation needs a prime p > n (got p=" +
                                std::to_string(p) + ", n=" + std::to_string(n) + ")");
  col_lengths_ = lambda.conjugate().parts();
  const std::size_t d = tableaux_.size();
  const auto nu = static_cast<std::size_t>(n);
  col_entries_.resize(d * nu);
  rows_.resize(d * nu);
  for (std::size_t t = 0; t < d; ++t) {
    std::size_t k = 0;
    for (const auto& col : tableaux_[t].columns())
      for (int v : col) col_entries_[t * nu + k++] = static_cast<std::uint8_t>(v);
    for (int v = 0; v < n; ++v)
      rows_[t * nu + static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(tableaux_[t].row_of(v));
  }
  IntMatrix a = clifton(Permutation::identity(n));
  RationalMatrix ar(d, d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) ar(i, j) = a(i, j);
  ainv_ = invert(ar);
  ainv_mod_ = reduce_mod(ainv_, p);
}

IntMatrix NaturalRepresentation::clifton(const Permutation& pi) const {
  IntMatrix a(dim(), dim(), 0);
  accumulate_clifton(pi, 1, a);
  return a;
}

void NaturalRepresentation::accumulate_clifton(const Permutation& pi, std::int64_t coeff,
                                               IntMatrix& acc) const {
  const int n = degree();
  if (pi.degree() != n) throw std::invalid_argument("clifton: permutation degree mismatch");
  const std::size_t d = dim();
  const auto nu = static_cast<std::size_t>(n);
  const Permutation inv = pi.inverse();
  std::array<std::uint8_t, kMaxDegree> target{};
  for (std::size_t j = 0; j < d; ++j) {
    // Row of each value x inside pi T_j: x sits where pi^{-1}(x) sits in T_j.
    const std::uint8_t* rj = rows_.data() + j * nu;
    for (int x = 0; x < n; ++x) target[static_cast<std::size_t>(x)] = rj[inv[x]];
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint8_t* ce = col_entries_.data() + i * nu;
      unsigned parity = 0;
      bool zero = false;
      std::size_t k = 0;
      for (int len : col_lengths_) {
        unsigned mask = 0;
        for (int e = 0; e < len; ++e, ++k) {
          const unsigned r = target[ce[k]];
          const unsigned bit = 1u << r;
          if (mask & bit) {
            zero = true;
            break;
          }
          parity += static_cast<unsigned>(std::popcount(mask >> r));
          mask |= bit;
        }
        if (zero) break;
      }
      if (!zero) acc(i, j) += (parity & 1u) ? -coeff : coeff;
    }
  }
}

ModMatrix NaturalRepresentation::from_clifton(const IntMatrix& s) const {
  ModMatrix sm(s.rows(), s.cols(), modulus());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) sm.set(i, j, s(i, j));
  return ainv_mod_ * sm;
}

ModMatrix NaturalRepresentation::matrix(const Permutation& pi) const {
  return from_clifton(clifton(pi));
}

ModMatrix NaturalRepresentation::matrix_of_sum(
    std::span<const std::pair<std::int64_t, Permutation>> terms, unsigned threads) const {
  threads = std::max(1u, threads);
  std::vector<IntMatrix> partial(threads, IntMatrix(dim(), dim(), 0));
  parallel_for(terms.size(), threads, [&](std::size_t b, std::size_t e, unsigned t) {
    for (std::size_t k = b; k < e; ++k)
      if (terms[k].first != 0) accumulate_clifton(terms[k].second, terms[k].first, partial[t]);
  });
  for (unsigned t = 1; t < threads; ++t)
    for (std::size_t k = 0; k < partial[0].data().size(); ++k)
      partial[0].data()[k] += partial[t].data()[k];
  return from_clifton(partial[0]);
}

IntMatrix clifton_matrix(const Partition& lambda, const Permutation& pi) {
  return NaturalRepresentation(lambda, kDefaultPrime).clifton(pi);
}

ModMatrix natural_rep(const Partition& lambda, const Permutation& pi, std::uint32_t p) {
  return NaturalRepresentation(lambda, p).matrix(pi);
}

}  // namespace tcid
