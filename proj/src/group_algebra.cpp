#include "tcid/group_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tcid {

GroupAlgebraElement GroupAlgebraElement::identity(int n) {
  return of(Permutation::identity(n));
}

GroupAlgebraElement GroupAlgebraElement::of(const Permutation& p, Rational c) {
  GroupAlgebraElement e(p.degree());
  e.add(p, c);
  return e;
}

void GroupAlgebraElement::add(const Permutation& p, const Rational& c) {
  if (p.degree() != n_) throw std::invalid_argument("group algebra: degree mismatch");
  if (c.numerator() == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

Rational GroupAlgebraElement::coefficient(const Permutation& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second * scalar_;
}

std::vector<std::pair<Permutation, Rational>> GroupAlgebraElement::sorted_terms() const {
  std::vector<std::pair<Permutation, Rational>> out;
  if (scalar_.numerator() == 0) return out;
  out.reserve(terms_.size());
  for (const auto& [p, c] : terms_) out.emplace_back(p, c * scalar_);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

GroupAlgebraElement GroupAlgebraElement::right_multiplied(const Permutation& p) const {
  GroupAlgebraElement r(n_);
  r.scalar_ = scalar_;
  r.terms_.reserve(terms_.size());
  for (const auto& [q, c] : terms_) r.terms_.emplace(q * p, c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::left_multiplied(const Permutation& p) const {
  GroupAlgebraElement r(n_);
  r.scalar_ = scalar_;
  r.terms_.reserve(terms_.size());
  for (const auto& [q, c] : terms_) r.terms_.emplace(p * q, c);
  return r;
}

namespace {

GroupAlgebraElement combine(const GroupAlgebraElement& a, const GroupAlgebraElement& b, int sign) {
  if (a.degree() != b.degree()) throw std::invalid_argument("group algebra: degree mismatch");
  GroupAlgebraElement r(a.degree());
  for (const auto& [p, c] : a.terms()) r.add(p, c * a.scalar());
  for (const auto& [p, c] : b.terms()) r.add(p, c * b.scalar() * sign);
  return r;
}

}  // namespace

GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return combine(a, b, 1);
}

GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return combine(a, b, -1);
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("group algebra: degree mismatch");
  GroupAlgebraElement r(a.n_);
  r.scalar_ = a.scalar_ * b.scalar_;
  for (const auto& [p, c] : a.terms_)
    for (const auto& [q, d] : b.terms_) r.add(p * q, c * d);
  return r;
}

GroupAlgebraElement operator*(const Rational& c, const GroupAlgebraElement& a) {
  GroupAlgebraElement r = a;
  r.scalar_ *= c;
  return r;
}

bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return a.n_ == b.n_ && a.sorted_terms() == b.sorted_terms();
}

ModMatrix rep_of_element(const NaturalRepresentation& rep, const GroupAlgebraElement& f,
                         unsigned threads) {
  const PrimeField& field = rep.field();
  if (f.is_zero()) return ModMatrix(rep.dim(), rep.dim(), rep.modulus());
  // Clear denominators so the Clifton sum stays integral.
  std::int64_t l = 1;
  for (const auto& [p, c] : f.terms()) l = std::lcm(l, c.denominator());
  std::vector<std::pair<std::int64_t, Permutation>> ints;
  ints.reserve(f.size());
  for (const auto& [p, c] : f.terms()) ints.emplace_back(c.numerator() * (l / c.denominator()), p);
  std::sort(ints.begin(), ints.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  ModMatrix m = rep.matrix_of_sum(ints, threads);
  const std::uint32_t s = reduce_mod(f.scalar() / l, field);
  for (std::size_t r = 0; r < m.rows(); ++r) field.scale(m.row(r), s);
  return m;
}

Permutation tableau_transition(const StandardTableau& from, const StandardTableau& to) {
  if (from.shape() != to.shape()) throw std::invalid_argument("tableau_transition: shapes differ");
  std::vector<int> img(from.flat().size());
  for (std::size_t k = 0; k < img.size(); ++k)
    img[static_cast<std::size_t>(from.flat()[k])] = to.flat()[k];
  return Permutation(img);
}

namespace {

// All permutations preserving each block setwise, with their signs.
std::vector<std::pair<Permutation, int>> block_group(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<std::pair<Permutation, int>> out{{Permutation::identity(n), 1}};
  for (const auto& blk : blocks) {
    if (blk.size() < 2) continue;
    std::vector<int> arr = blk;
    std::sort(arr.begin(), arr.end());
    std::vector<std::pair<Permutation, int>> local;
    do {
      std::vector<int> img(static_cast<std::size_t>(n));
      std::iota(img.begin(), img.end(), 0);
      for (std::size_t k = 0; k < blk.size(); ++k)
        img[static_cast<std::size_t>(blk[k])] = arr[k];
      Permutation p(img);
      local.emplace_back(p, p.sign());
    } while (std::next_permutation(arr.begin(), arr.end()));
    std::vector<std::pair<Permutation, int>> next;
    next.reserve(out.size() * local.size());
    for (const auto& [a, sa] : out)
      for (const auto& [b, sb] : local) next.emplace_back(a * b, sa * sb);
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<int>> rows_of(const StandardTableau& t) {
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < t.shape().length(); ++r) {
    std::vector<int> row;
    for (int c = 0; c < t.shape().parts()[static_cast<std::size_t>(r)]; ++c) row.push_back(t.entry(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational d_over_factorial(const NaturalRepresentation& rep) {
  std::int64_t f = 1;
  for (int k = 2; k <= rep.degree(); ++k) f *= k;
  return Rational(static_cast<std::int64_t>(rep.dim()), f);
}

}  // namespace

GroupAlgebraElement row_symmetrizer(const StandardTableau& t) {
  GroupAlgebraElement e(t.shape().size());
  for (const auto& [p, s] : block_group(t.shape().size(), rows_of(t))) e.add(p, 1);
  return e;
}

GroupAlgebraElement column_antisymmetrizer(const StandardTableau& t) {
  GroupAlgebraElement e(t.shape().size());
  for (const auto& [p, s] : block_group(t.shape().size(), t.columns())) e.add(p, s);
  return e;
}

GroupAlgebraElement d_element(const NaturalRepresentation& rep, std::size_t i, std::size_t j) {
  const auto& tab = rep.tableaux();
  GroupAlgebraElement d = row_symmetrizer(tab.at(i)) * column_antisymmetrizer(tab.at(i));
  d.set_scalar(d_over_factorial(rep));
  if (i == j) return d;
  return d.right_multiplied(tableau_transition(tab[i], tab.at(j)).inverse());
}

std::vector<std::pair<std::size_t, Rational>> matrix_unit_support(const NaturalRepresentation& rep,
                                                                  std::size_t j) {
  const auto& a = rep.clifton_identity_inverse();
  std::vector<std::pair<std::size_t, Rational>> out;
  for (std::size_t k = 0; k < rep.dim(); ++k)
    if (a(j, k).numerator() != 0) out.emplace_back(k, a(j, k));
  return out;
}

GroupAlgebraElement matrix_unit_element(const NaturalRepresentation& rep, std::size_t i,
                                        std::size_t j) {
  GroupAlgebraElement sum(rep.degree());
  for (const auto& [k, a] : matrix_unit_support(rep, j)) sum = sum + a * d_element(rep, i, k);
  return sum;
}

ModMatrix d_diagonal_rep(const NaturalRepresentation& rep, std::size_t i) {
  const auto& t = rep.tableaux().at(i);
  const int n = rep.degree();
  ModMatrix m = ModMatrix::identity(rep.dim(), rep.modulus());
  auto factor = [&](const std::vector<int>& blk, bool alternating) {
    GroupAlgebraElement e(n);
    for (const auto& [p, s] : block_group(n, {blk})) e.add(p, alternating ? s : 1);
    m = m * rep_of_element(rep, e);
  };
  for (const auto& row : rows_of(t))
    if (row.size() > 1) factor(row, false);
  for (const auto& col : t.columns())
    if (col.size() > 1) factor(col, true);
  const std::uint32_t s = reduce_mod(d_over_factorial(rep), rep.field());
  for (std::size_t r = 0; r < m.rows(); ++r) rep.field().scale(m.row(r), s);
  return m;
}

ModMatrix d_element_rep(const NaturalRepresentation& rep, std::size_t i, std::size_t j) {
  const auto& tab = rep.tableaux();
  return d_diagonal_rep(rep, i) * rep.matrix(tableau_transition(tab.at(i), tab.at(j)).inverse());
}

ModMatrix matrix_unit_rep(const NaturalRepresentation& rep, std::size_t i, std::size_t j) {
  const auto& tab = rep.tableaux();
  GroupAlgebraElement q(rep.degree());
  for (const auto& [k, a] : matrix_unit_support(rep, j))
    q.add(tableau_transition(tab.at(i), tab[k]).inverse(), a);
  return d_diagonal_rep(rep, i) * rep_of_element(rep, q);
}

std::string to_string(const Rational& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
  return s;
}

}  // namespace tcid
