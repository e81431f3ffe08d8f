#include "tcid/liftgen.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace tcid {

void TernaryPolynomial::add(const SignedMonomial& m, const Rational& c) {
  if (m.sign == 0 || c.numerator() == 0) return;
  auto [it, inserted] = terms_.try_emplace(m.monomial, c * m.sign);
  if (!inserted) {
    it->second += c * m.sign;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

void TernaryPolynomial::add(const Term& t, const Rational& c) { add(normalize(t), c); }

void TernaryPolynomial::make_primitive() {
  if (terms_.empty()) return;
  std::int64_t g = 0;
  for (const auto& [m, c] : terms_) {
    if (c.denominator() != 1) throw std::domain_error("make_primitive: non-integral coefficient");
    g = std::gcd(g, c.numerator());
  }
  if (terms_.begin()->second.numerator() < 0) g = -g;
  for (auto& [m, c] : terms_) c /= g;
}

std::vector<int> TernaryPolynomial::types_used() const {
  std::set<int> s;
  for (const auto& [m, c] : terms_) s.insert(m.type);
  return {s.begin(), s.end()};
}

std::map<Word, Rational> TernaryPolynomial::expansion() const {
  std::map<Word, Rational> acc;
  for (const auto& [m, c] : terms_)
    for (auto& [sign, w] : expand(m)) {
      auto [it, inserted] = acc.try_emplace(std::move(w), c * sign);
      if (!inserted) {
        it->second += c * sign;
        if (it->second.numerator() == 0) acc.erase(it);
      }
    }
  return acc;
}

TernaryPolynomial TernaryPolynomial::relabelled(const std::function<Letter(Letter)>& f) const {
  TernaryPolynomial r;
  for (const auto& [m, c] : terms_) {
    Monomial x = m;
    for (auto& l : x.word) l = f(l);
    r.add(normalize(x), c);
  }
  return r;
}

void TernaryPolynomial::write(std::ostream& out) const {
  for (const auto& [m, c] : terms_) out << to_string(c) << '\t' << to_string(m) << '\n';
}

// ---------------------------------------------------------------------------

namespace {

Term replace_leaf(const Term& t, Letter x, const Term& with) {
  if (t.is_leaf()) return t.letter == x ? with : t;
  return Term::bracket(replace_leaf(t.kids[0], x, with), replace_leaf(t.kids[1], x, with),
                       replace_leaf(t.kids[2], x, with));
}

void relabel_in_place(Term& t, const std::function<Letter(Letter)>& f) {
  if (t.is_leaf()) {
    if (t.letter != kHole) t.letter = f(t.letter);
    return;
  }
  for (auto& k : t.kids) relabel_in_place(k, f);
}

std::string print_with_hole(const Term& t, const std::string& hole) {
  if (t.is_leaf()) return t.letter == kHole ? hole : std::string(1, static_cast<char>('a' + t.letter));
  return "[" + print_with_hole(t.kids[0], hole) + "," + print_with_hole(t.kids[1], hole) + "," +
         print_with_hole(t.kids[2], hole) + "]";
}

std::array<Term, 7> plain_args() {
  std::array<Term, 7> a;
  for (int k = 0; k < 7; ++k) a[static_cast<std::size_t>(k)] = Term::leaf(static_cast<Letter>(k));
  return a;
}

Term br(Letter x, Letter y, Letter z) {
  return Term::bracket(Term::leaf(x), Term::leaf(y), Term::leaf(z));
}

}  // namespace

Lifting Lifting::substituted(Letter x, Letter y, Letter z) const {
  Lifting r;
  const Term with = br(x, y, z);
  for (std::size_t k = 0; k < 7; ++k) r.args[k] = replace_leaf(args[k], x, with);
  r.context = replace_leaf(context, x, with);
  return r;
}

Lifting Lifting::embedded(Letter y, Letter z) const {
  Lifting r = *this;
  r.context = Term::bracket(context, Term::leaf(y), Term::leaf(z));
  return r;
}

std::string Lifting::to_string() const {
  std::string inner = "I(";
  for (std::size_t k = 0; k < 7; ++k) {
    if (k) inner += ',';
    inner += tcid::to_string(args[k]);
  }
  inner += ')';
  return print_with_hole(context, inner);
}

int Lifting::degree() const {
  int d = context.degree() - 1;
  for (const auto& a : args) d += a.degree();
  return d;
}

std::vector<std::pair<int, Term>> identity_I_raw(const std::array<Term, 7>& args) {
  std::vector<std::pair<int, Term>> out;
  out.reserve(1440);
  const Term& a = args[0];
  for (const auto& s : all_permutations(6)) {
    auto x = [&](int k) -> const Term& { return args[static_cast<std::size_t>(1 + s[k])]; };
    const int sign = s.sign();
    out.emplace_back(sign, Term::bracket(Term::bracket(Term::bracket(x(0), x(1), x(2)), a, x(3)), x(4), x(5)));
    out.emplace_back(sign, Term::bracket(Term::bracket(a, x(0), x(1)), Term::bracket(x(2), x(3), x(4)), x(5)));
  }
  return out;
}

TernaryPolynomial evaluate(const Lifting& l, const std::function<Letter(Letter)>& relabel) {
  TernaryPolynomial p;
  for (auto& [sign, t] : identity_I_raw(l.args)) {
    Term full = replace_leaf(l.context, kHole, t);
    if (relabel) relabel_in_place(full, relabel);
    p.add(full, sign);
  }
  p.make_primitive();
  return p;
}

TernaryPolynomial identity_I() { return evaluate(Lifting{plain_args()}); }

namespace {

constexpr Letter A = 0, B = 1, C = 2, H = 7, I = 8, J = 9, K = 10;

}  // namespace

std::vector<Lifting> liftings_degree9() {
  const Lifting base{plain_args()};
  return {base.substituted(A, H, I), base.substituted(B, H, I), base.embedded(H, I)};
}

std::vector<Lifting> liftings_degree11() {
  const auto nine = liftings_degree9();
  return {
      nine[0].substituted(A, J, K),  // I([[a,j,k],h,i],b,...,g)
      nine[0].substituted(B, J, K),  // I([a,h,i],[b,j,k],c,...,g)
      nine[0].embedded(J, K),        // [I([a,h,i],b,...,g),j,k]
      nine[1].substituted(B, J, K),  // I(a,[[b,j,k],h,i],c,...,g)
      nine[1].substituted(C, J, K),  // I(a,[b,h,i],[c,j,k],d,...,g)
      nine[1].embedded(J, K),        // [I(a,[b,h,i],c,...,g),j,k]
      nine[2].substituted(H, J, K),  // [I(a,...,g),[h,j,k],i]
      nine[2].embedded(J, K),        // [[I(a,...,g),h,i],j,k]
  };
}

std::vector<Lifting> liftings_for_degree(int degree) {
  switch (degree) {
    case 3:
    case 5:
    case 7:
      return {};
    case 9:
      return liftings_degree9();
    case 11:
      return liftings_degree11();
    default:
      throw std::invalid_argument("liftings are tabulated for degrees 3..11 only");
  }
}

// ---------------------------------------------------------------------------

bool SubstitutionRule::accepts(const Word& q) const {
  for (const auto& ch : chains)
    for (std::size_t k = 0; k + 1 < ch.size(); ++k)
      if (!(q[static_cast<std::size_t>(ch[k])] < q[static_cast<std::size_t>(ch[k + 1])])) return false;
  for (const auto& [x, y] : blocks) {
    Word u, v;
    for (int i : x) u.push_back(q[static_cast<std::size_t>(i)]);
    for (int i : y) v.push_back(q[static_cast<std::size_t>(i)]);
    if (!(u < v)) return false;
  }
  return true;
}

std::vector<SubstitutionRule> multidegree_rules() {
  // Positions are letter indices a=0, ..., k=10.
  const std::vector<int> b_to_g{1, 2, 3, 4, 5, 6}, c_to_g{2, 3, 4, 5, 6}, d_to_g{3, 4, 5, 6};
  return {
      {{{0, 9, 10}, {7, 8}, b_to_g}, {}},
      {{{0, 7, 8}, {1, 9, 10}, c_to_g}, {}},
      {{{0, 7, 8}, b_to_g, {9, 10}}, {}},
      {{{1, 9, 10}, {7, 8}, c_to_g}, {}},
      {{{1, 7, 8}, {2, 9, 10}, d_to_g}, {{{1, 7, 8}, {2, 9, 10}}}},
      {{{1, 7, 8}, c_to_g, {9, 10}}, {}},
      {{b_to_g, {7, 9, 10}}, {}},
      {{b_to_g, {7, 8}, {9, 10}}, {}},
  };
}

std::vector<SubstitutedLifting> multidegree_substitutions(const Multidegree& delta) {
  const auto lifts = liftings_degree11();
  const auto rules = multidegree_rules();
  const WordRanker ranker(delta);
  if (ranker.length() != 11) throw std::invalid_argument("multidegree substitutions need degree 11");
  std::vector<Word> words;
  words.reserve(ranker.count());
  Word w;
  for (std::size_t c = 0; c < delta.size(); ++c) w.insert(w.end(), static_cast<std::size_t>(delta[c]), static_cast<Letter>(c));
  do {
    words.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));

  std::vector<SubstitutedLifting> out;
  for (std::size_t f = 0; f < lifts.size(); ++f)
    for (const auto& q : words) {
      if (!rules[f].accepts(q)) continue;
      TernaryPolynomial p = evaluate(lifts[f], [&q](Letter x) { return q[x]; });
      out.push_back({static_cast<int>(f), q, std::move(p)});
    }
  return out;
}

std::vector<GroupAlgebraElement> to_group_algebra(const TernaryPolynomial& p, int degree) {
  const auto ntypes = association_types(degree).size();
  std::vector<GroupAlgebraElement> out(ntypes, GroupAlgebraElement(degree));
  std::vector<int> img(static_cast<std::size_t>(degree));
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != degree) throw std::invalid_argument("to_group_algebra: degree mismatch");
    for (int k = 0; k < degree; ++k) img[static_cast<std::size_t>(k)] = m.word[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(m.type)].add(Permutation(img), c);
  }
  return out;
}

}  // namespace tcid
