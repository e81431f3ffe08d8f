#include "tcid/ternary.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tcid {

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s += static_cast<char>('a' + x);
  return s;
}

Word word_from_string(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char ch : s) {
    if (ch < 'a' || ch > 'z') throw std::invalid_argument("word letters must be a..z");
    w.push_back(static_cast<Letter>(ch - 'a'));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Type table

using ChildKey = std::array<std::pair<int, int>, 3>;

class TypeTable {
public:
  static TypeTable& instance() {
    static TypeTable t;
    return t;
  }

  const std::vector<AssocType>& types(int degree) {
    if (degree < 1 || degree >= kMaxDegree || degree % 2 == 0)
      throw std::invalid_argument("association types need an odd degree below " +
                                  std::to_string(kMaxDegree) + " (got " + std::to_string(degree) + ")");
    std::call_once(once_[static_cast<std::size_t>(degree)], [&] { build(degree); });
    return types_[static_cast<std::size_t>(degree)];
  }

  int lookup(int degree, const ChildKey& key) {
    types(degree);
    const auto& m = index_[static_cast<std::size_t>(degree)];
    auto it = m.find(key);
    if (it == m.end()) throw std::logic_error("unknown association type");
    return it->second;
  }

private:
  void build(int n) {
    auto& out = types_[static_cast<std::size_t>(n)];
    if (n == 1) {
      AssocType leaf;
      leaf.expansion_.push_back({1, Permutation::identity(1)});
      out.push_back(std::move(leaf));
      return;
    }
    std::vector<ChildKey> keys;
    for (int d1 = n - 2; d1 >= 1; d1 -= 2)
      for (int d2 = std::min(d1, n - d1 - 1); d2 >= 1; d2 -= 2) {
        const int d3 = n - d1 - d2;
        if (d3 < 1 || d3 > d2 || d3 % 2 == 0) continue;
        const auto c1 = types(d1).size(), c2 = types(d2).size(), c3 = types(d3).size();
        for (std::size_t i1 = 0; i1 < c1; ++i1)
          for (std::size_t i2 = 0; i2 < c2; ++i2)
            for (std::size_t i3 = 0; i3 < c3; ++i3) {
              if (d1 == d2 && i2 < i1) continue;
              if (d2 == d3 && i3 < i2) continue;
              keys.push_back({{{d1, static_cast<int>(i1)}, {d2, static_cast<int>(i2)},
                               {d3, static_cast<int>(i3)}}});
            }
      }
    std::sort(keys.begin(), keys.end(), [](const ChildKey& a, const ChildKey& b) {
      for (int k = 0; k < 3; ++k)
        if (a[k].first != b[k].first) return a[k].first > b[k].first;
      for (int k = 0; k < 3; ++k)
        if (a[k].second != b[k].second) return a[k].second < b[k].second;
      return false;
    });
    auto& index = index_[static_cast<std::size_t>(n)];
    for (const auto& key : keys) {
      index.emplace(key, static_cast<int>(out.size()));
      out.push_back(make(n, static_cast<int>(out.size()), key));
    }
  }

  AssocType make(int n, int idx, const ChildKey& key) {
    AssocType t;
    t.degree_ = n;
    t.index_ = idx;
    t.children_ = key;
    std::array<const AssocType*, 3> kid{};
    Bracket top{};
    int start = 0;
    for (int k = 0; k < 3; ++k) {
      kid[static_cast<std::size_t>(k)] = &types(key[k].first)[static_cast<std::size_t>(key[k].second)];
      top.child[static_cast<std::size_t>(k)] = {start, key[k].first, key[k].second};
      start += key[k].first;
    }
    t.brackets_.push_back(top);
    for (int k = 0; k < 2; ++k)
      if (key[k] == key[k + 1])
        t.constraints_.push_back({top.child[k].start, top.child[k + 1].start, key[k].first});
    for (int k = 0; k < 3; ++k) {
      const int off = top.child[static_cast<std::size_t>(k)].start;
      for (Bracket b : kid[static_cast<std::size_t>(k)]->brackets_) {
        for (auto& s : b.child) s.start += off;
        t.brackets_.push_back(b);
      }
      for (OrderConstraint c : kid[static_cast<std::size_t>(k)]->constraints_)
        t.constraints_.push_back({c.a + off, c.b + off, c.len});
    }

    std::uint64_t aut = 1;
    for (const auto* c : kid) aut *= c->aut_;
    int run = 1;
    for (int k = 1; k <= 3; ++k) {
      if (k < 3 && key[k] == key[k - 1]) {
        ++run;
        continue;
      }
      for (int f = 2; f <= run; ++f) aut *= static_cast<std::uint64_t>(f);
      run = 1;
    }
    t.aut_ = aut;

    // Expansion: children permuted as abc, acb, bac, bca, cab, cba.
    static constexpr int kOrder[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr int kSign[6] = {1, -1, -1, 1, 1, -1};
    std::size_t total = 6;
    for (const auto* c : kid) total *= c->expansion_.size();
    t.expansion_.reserve(total);
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int s = 0; s < 6; ++s) {
      const auto& o = kOrder[s];
      const auto& e0 = kid[static_cast<std::size_t>(o[0])]->expansion_;
      const auto& e1 = kid[static_cast<std::size_t>(o[1])]->expansion_;
      const auto& e2 = kid[static_cast<std::size_t>(o[2])]->expansion_;
      for (const auto& x : e0)
        for (const auto& y : e1)
          for (const auto& z : e2) {
            std::size_t pos = 0;
            const ExpansionTerm* parts[3] = {&x, &y, &z};
            for (int k = 0; k < 3; ++k) {
              const auto& sl = top.child[static_cast<std::size_t>(o[k])];
              for (int q = 0; q < sl.degree; ++q) seq[pos++] = sl.start + parts[k]->tau[q];
            }
            t.expansion_.push_back({kSign[s] * x.sign * y.sign * z.sign, Permutation(seq)});
          }
    }
    return t;
  }

  std::array<std::once_flag, kMaxDegree> once_;
  std::array<std::vector<AssocType>, kMaxDegree> types_;
  std::array<std::map<ChildKey, int>, kMaxDegree> index_;
};

const std::vector<AssocType>& association_types(int degree) {
  if (degree < 3) throw std::invalid_argument("association types need degree >= 3");
  return TypeTable::instance().types(degree);
}

const AssocType& assoc_type(int degree, int index) {
  const auto& all = TypeTable::instance().types(degree);
  if (index < 0 || static_cast<std::size_t>(index) >= all.size())
    throw std::out_of_range("association type index out of range");
  return all[static_cast<std::size_t>(index)];
}

namespace {

const AssocType& child_type(const Slice& s) { return TypeTable::instance().types(s.degree)[static_cast<std::size_t>(s.shape)]; }

Term build_term(const AssocType& t, const Letter* w) {
  if (t.degree() == 1) return Term::leaf(w[0]);
  const auto& top = t.brackets().front();
  Term r;
  for (const auto& s : top.child) r.kids.push_back(build_term(child_type(s), w + s.start));
  return r;
}

}  // namespace

std::string AssocType::to_string() const {
  Word w(static_cast<std::size_t>(degree_));
  std::iota(w.begin(), w.end(), Letter{0});
  return format(w);
}

std::string AssocType::format(const Word& w) const {
  if (static_cast<int>(w.size()) != degree_) throw std::invalid_argument("word length does not match type");
  return tcid::to_string(build_term(*this, w.data()));
}

// ---------------------------------------------------------------------------
// Terms

Term Term::bracket(Term x, Term y, Term z) {
  Term t;
  t.kids.reserve(3);
  t.kids.push_back(std::move(x));
  t.kids.push_back(std::move(y));
  t.kids.push_back(std::move(z));
  return t;
}

int Term::degree() const noexcept {
  if (is_leaf()) return 1;
  int d = 0;
  for (const auto& k : kids) d += k.degree();
  return d;
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad term '" + std::string(s) + "': " + what + " at offset " +
                                std::to_string(i));
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  Term term() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    if (s[i] >= 'a' && s[i] <= 'z') return Term::leaf(static_cast<Letter>(s[i++] - 'a'));
    expect('[');
    Term a = term();
    expect(',');
    Term b = term();
    expect(',');
    Term c = term();
    expect(']');
    return Term::bracket(std::move(a), std::move(b), std::move(c));
  }
};

void print(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += static_cast<char>('a' + t.letter);
    return;
  }
  out += '[';
  for (std::size_t k = 0; k < 3; ++k) {
    if (k) out += ',';
    print(t.kids[k], out);
  }
  out += ']';
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p{text};
  Term t = p.term();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  if (t.degree() >= kMaxDegree) throw std::invalid_argument("term degree too large");
  return t;
}

std::string to_string(const Term& t) {
  std::string s;
  print(t, s);
  return s;
}

std::string to_string(const Monomial& m) {
  return assoc_type(m.degree(), m.type).format(m.word);
}

Term to_term(const Monomial& m) {
  return build_term(assoc_type(m.degree(), m.type), m.word.data());
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

struct Canon {
  int degree;
  int shape;
  Word word;
};

// Negative when x must precede y.
int compare(const Canon& x, const Canon& y) {
  if (x.degree != y.degree) return x.degree > y.degree ? -1 : 1;
  if (x.shape != y.shape) return x.shape < y.shape ? -1 : 1;
  if (x.word != y.word) return x.word < y.word ? -1 : 1;
  return 0;
}

// Returns false when the term vanishes.
bool canon(const Term& t, Canon& out, int& sign) {
  if (t.is_leaf()) {
    out = {1, 0, {t.letter}};
    return true;
  }
  if (t.kids.size() != 3) throw std::invalid_argument("brackets take exactly three arguments");
  std::array<Canon, 3> c;
  for (std::size_t k = 0; k < 3; ++k)
    if (!canon(t.kids[k], c[k], sign)) return false;
  // Three-element bubble sort, tracking parity.
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t k = 0; k + 1 < 3; ++k) {
      int r = compare(c[k], c[k + 1]);
      if (r == 0) return false;
      if (r > 0) {
        std::swap(c[k], c[k + 1]);
        sign = -sign;
      }
    }
  ChildKey key{{{c[0].degree, c[0].shape}, {c[1].degree, c[1].shape}, {c[2].degree, c[2].shape}}};
  out.degree = c[0].degree + c[1].degree + c[2].degree;
  out.shape = TypeTable::instance().lookup(out.degree, key);
  out.word.clear();
  for (auto& x : c) out.word.insert(out.word.end(), x.word.begin(), x.word.end());
  return true;
}

}  // namespace

SignedMonomial normalize(const Term& t) {
  if (t.is_leaf()) throw std::invalid_argument("normalize: a single letter is not a ternary monomial");
  Canon c;
  int sign = 1;
  if (!canon(t, c, sign)) return {};
  return {sign, Monomial{c.shape, std::move(c.word)}};
}

SignedMonomial normalize(const Monomial& m) { return normalize(to_term(m)); }

namespace {

bool satisfies(const std::vector<OrderConstraint>& cs, const Letter* w) {
  for (const auto& c : cs)
    if (!std::lexicographical_compare(w + c.a, w + c.a + c.len, w + c.b, w + c.b + c.len)) return false;
  return true;
}

}  // namespace

bool is_canonical(const Monomial& m) {
  const auto& t = assoc_type(m.degree(), m.type);
  return satisfies(t.constraints(), m.word.data());
}

// ---------------------------------------------------------------------------
// Symmetries, counting, expansion

namespace {

void collect_symmetries(const AssocType& t, int offset, int n, std::vector<Permutation>& out) {
  if (t.degree() == 1) return;
  const auto& top = t.brackets().front();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& s = top.child[k];
    const bool repeat = k > 0 && top.child[k - 1].degree == s.degree && top.child[k - 1].shape == s.shape;
    if (!repeat) collect_symmetries(child_type(s), offset + s.start, n, out);
  }
  for (std::size_t k = 0; k + 1 < 3; ++k) {
    const auto& x = top.child[k];
    const auto& y = top.child[k + 1];
    if (x.degree != y.degree || x.shape != y.shape) continue;
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int q = 0; q < x.degree; ++q)
      std::swap(img[static_cast<std::size_t>(offset + x.start + q)],
                img[static_cast<std::size_t>(offset + y.start + q)]);
    out.emplace_back(img);
  }
}

}  // namespace

std::vector<SymmetryGenerator> symmetry_generators(int degree) {
  std::vector<SymmetryGenerator> out;
  for (const auto& t : association_types(degree)) {
    std::vector<Permutation> perms;
    collect_symmetries(t, 0, degree, perms);
    for (auto& p : perms) out.push_back({t.index(), p});
  }
  return out;
}

std::uint64_t count_multilinear(const AssocType& t) {
  std::uint64_t f = 1;
  for (int k = 2; k <= t.degree(); ++k) f *= static_cast<std::uint64_t>(k);
  return f / t.automorphisms();
}

std::vector<std::pair<int, Word>> expand(const Monomial& m) {
  const auto& t = assoc_type(m.degree(), m.type);
  std::vector<std::pair<int, Word>> out;
  out.reserve(t.expansion().size());
  const int n = m.degree();
  for (const auto& e : t.expansion()) {
    Word w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = m.word[static_cast<std::size_t>(e.tau[k])];
    out.emplace_back(e.sign, std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Enumerator {
  int n;
  std::vector<int> remaining;
  std::vector<std::vector<OrderConstraint>> due;  // constraints checkable once position k is set
  Word cur;
  std::vector<Word>* out;

  void run(int pos) {
    if (pos == n) {
      out->push_back(cur);
      return;
    }
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      if (remaining[c] == 0) continue;
      cur[static_cast<std::size_t>(pos)] = static_cast<Letter>(c);
      if (!satisfies(due[static_cast<std::size_t>(pos)], cur.data())) continue;
      --remaining[c];
      run(pos + 1);
      ++remaining[c];
    }
  }
};

}  // namespace

std::vector<Word> canonical_words(const AssocType& t, const Multidegree& delta) {
  const int n = std::accumulate(delta.begin(), delta.end(), 0);
  if (n != t.degree()) throw std::invalid_argument("multidegree does not match the type degree");
  for (int d : delta)
    if (d < 0) throw std::invalid_argument("negative multiplicity");
  std::vector<Word> out;
  Enumerator e{n, delta, std::vector<std::vector<OrderConstraint>>(static_cast<std::size_t>(n)),
               Word(static_cast<std::size_t>(n)), &out};
  for (const auto& c : t.constraints()) e.due[static_cast<std::size_t>(c.b + c.len - 1)].push_back(c);
  e.run(0);
  return out;
}

std::vector<std::vector<Word>> enumerate_nonassoc_multidegree(const Multidegree& delta) {
  const int n = std::accumulate(delta.begin(), delta.end(), 0);
  std::vector<std::vector<Word>> out;
  for (const auto& t : association_types(n)) out.push_back(canonical_words(t, delta));
  return out;
}

// ---------------------------------------------------------------------------
// Ranking

WordRanker::WordRanker(Multidegree delta) : delta_(std::move(delta)) {
  if (delta_.empty() || delta_.size() > 26) throw std::invalid_argument("multidegree needs 1..26 letters");
  std::uint64_t c = 1;
  int m = 0;
  for (int d : delta_) {
    if (d < 0) throw std::invalid_argument("negative multiplicity");
    for (int k = 1; k <= d; ++k) {
      ++m;
      c = c * static_cast<std::uint64_t>(m) / static_cast<std::uint64_t>(k);
    }
  }
  if (m == 0 || m > kMaxDegree) throw std::invalid_argument("multidegree total out of range");
  length_ = m;
  count_ = c;
}

std::uint64_t WordRanker::rank0_unchecked(const Letter* w) const noexcept {
  std::array<int, 26> rem{};
  std::copy(delta_.begin(), delta_.end(), rem.begin());
  std::uint64_t total = count_, rank = 0;
  auto m = static_cast<std::uint64_t>(length_);
  for (int k = 0; k < length_; ++k, --m) {
    const Letter x = w[k];
    for (Letter c = 0; c < x; ++c)
      if (rem[c]) rank += total * static_cast<std::uint64_t>(rem[c]) / m;
    total = total * static_cast<std::uint64_t>(rem[x]) / m;
    --rem[x];
  }
  return rank;
}

std::uint64_t WordRanker::rank0(const Word& w) const {
  if (static_cast<int>(w.size()) != length_) throw std::invalid_argument("word has the wrong length");
  std::vector<int> seen(delta_.size(), 0);
  for (Letter x : w) {
    if (x >= delta_.size()) throw std::invalid_argument("word uses a letter outside the multidegree");
    ++seen[x];
  }
  if (seen != delta_) throw std::invalid_argument("word has the wrong multidegree");
  return rank0_unchecked(w.data());
}

Word WordRanker::unrank0(std::uint64_t r) const {
  if (r >= count_) throw std::out_of_range("word index out of range");
  std::vector<int> rem = delta_;
  Word w;
  w.reserve(static_cast<std::size_t>(length_));
  std::uint64_t total = count_;
  auto m = static_cast<std::uint64_t>(length_);
  for (int k = 0; k < length_; ++k, --m) {
    for (std::size_t c = 0; c < rem.size(); ++c) {
      if (!rem[c]) continue;
      const std::uint64_t block = total * static_cast<std::uint64_t>(rem[c]) / m;
      if (r < block) {
        w.push_back(static_cast<Letter>(c));
        total = block;
        --rem[c];
        break;
      }
      r -= block;
    }
  }
  return w;
}

std::uint64_t rank_word(const Word& w, const Multidegree& delta) {
  return WordRanker(delta).rank0(w) + 1;
}

Word unrank_word(std::uint64_t index, const Multidegree& delta) {
  if (index == 0) throw std::out_of_range("word indices start at 1");
  return WordRanker(delta).unrank0(index - 1);
}

}  // namespace tcid
