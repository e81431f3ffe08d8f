#include <doctest.h>

#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tcid/ternary.hpp"

using namespace tcid;

namespace {

const Multidegree kDelta{2, 2, 2, 2, 2, 1};

Word word_of(const Permutation& p) {
  Word w;
  for (int k = 0; k < p.degree(); ++k) w.push_back(static_cast<Letter>(p[k]));
  return w;
}

std::map<Word, std::int64_t> collect(const Monomial& m) {
  std::map<Word, std::int64_t> out;
  for (const auto& [s, w] : expand(m)) out[w] += s;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("association types of degree 11 in the fixed order") {
  const auto& types = association_types(11);
  REQUIRE(types.size() == 8);
  const char* expect[] = {"[[[[[a,b,c],d,e],f,g],h,i],j,k]", "[[[[a,b,c],[d,e,f],g],h,i],j,k]",
                          "[[[[a,b,c],d,e],[f,g,h],i],j,k]", "[[[a,b,c],[d,e,f],[g,h,i]],j,k]",
                          "[[[[a,b,c],d,e],f,g],[h,i,j],k]", "[[[a,b,c],[d,e,f],g],[h,i,j],k]",
                          "[[[a,b,c],d,e],[[f,g,h],i,j],k]", "[[[a,b,c],d,e],[f,g,h],[i,j,k]]"};
  for (int i = 0; i < 8; ++i) CHECK(types[i].to_string() == expect[i]);
  CHECK(association_types(3).size() == 1);
  CHECK(association_types(5).size() == 1);
  CHECK(association_types(7).size() == 2);
  CHECK(association_types(9).size() == 4);
  CHECK_THROWS(association_types(8));
}

TEST_CASE("multilinear monomial counts in degree 11") {
  const std::uint64_t expect[] = {415800, 138600, 277200, 15400, 277200, 92400, 138600, 46200};
  std::uint64_t total = 0;
  for (const auto& t : association_types(11)) {
    CHECK(count_multilinear(t) == expect[t.index()]);
    total += count_multilinear(t);
  }
  CHECK(total == 1401400);
}

TEST_CASE("monomial counts for multidegree a^2b^2c^2d^2e^2f") {
  const auto words = enumerate_nonassoc_multidegree(kDelta);
  const std::size_t expect[] = {6720, 1980, 4010, 180, 4010, 1190, 2000, 550};
  std::size_t total = 0;
  for (int t = 0; t < 8; ++t) {
    CHECK(words[t].size() == expect[t]);
    total += words[t].size();
  }
  CHECK(total == 20640);
  CHECK(WordRanker(kDelta).count() == 1247400);
}

TEST_CASE("normalization sorts bracket arguments with sign") {
  auto n = normalize(parse_term("[b,a,c]"));
  CHECK(n.sign == -1);
  CHECK(to_string(n.monomial) == "[a,b,c]");
  CHECK(normalize(parse_term("[a,a,b]")).sign == 0);
  n = normalize(parse_term("[d,[a,b,c],e]"));
  CHECK(n.sign == -1);
  CHECK(to_string(n.monomial) == "[[a,b,c],d,e]");
  n = normalize(parse_term("[[a,b,c],[a,b,d],e]"));
  CHECK(n.sign == 1);
  n = normalize(parse_term("[[a,b,d],[a,b,c],e]"));
  CHECK(n.sign == -1);
  CHECK(to_string(n.monomial) == "[[a,b,c],[a,b,d],e]");
  // Equal subtrees in one bracket vanish.
  CHECK(normalize(parse_term("[[a,b,c],[a,b,c],e]")).sign == 0);
  CHECK_THROWS(parse_term("[a,b]"));
  CHECK_THROWS(parse_term("[a,b,c"));
}

TEST_CASE("canonical words of type 4 agree with brute-force normalization") {
  const auto& t = assoc_type(11, 3);
  const WordRanker ranker(kDelta);
  std::vector<Word> brute;
  for (std::uint64_t r = 0; r < ranker.count(); ++r) {
    const Monomial m{3, ranker.unrank0(r)};
    const auto n = normalize(m);
    if (n.sign != 0 && n.monomial == m) brute.push_back(m.word);
  }
  CHECK(brute.size() == 180);
  CHECK(brute == canonical_words(t, kDelta));
  for (const auto& w : brute) CHECK(is_canonical(Monomial{3, w}));
}

TEST_CASE("word ranking round trip") {
  const WordRanker ranker(kDelta);
  CHECK(rank_word(word_from_string("aabbccddeef"), kDelta) == 1);
  CHECK(rank_word(word_from_string("feeddccbbaa"), kDelta) == 1247400);
  CHECK(word_to_string(unrank_word(1, kDelta)) == "aabbccddeef");
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint64_t> pick(0, ranker.count() - 1);
  for (int i = 0; i < 2000; ++i) {
    const auto r = pick(rng);
    const auto w = ranker.unrank0(r);
    CHECK(ranker.rank0(w) == r);
    CHECK(ranker.rank0_unchecked(w.data()) == r);
  }
  CHECK(ranker.rank0(ranker.unrank0(1)) == 1);
  CHECK(ranker.unrank0(0) < ranker.unrank0(1));
  CHECK_THROWS(ranker.rank0(word_from_string("aabbccddeee")));
}

TEST_CASE("expansion agrees with nested substitution") {
  std::mt19937_64 rng(29);
  for (int deg : {3, 5, 7, 9, 11})
    for (const auto& t : association_types(deg)) {
      CHECK(t.expansion().size() == static_cast<std::size_t>(std::pow(6, (deg - 1) / 2)));
      const int trials = deg == 11 ? 1 : 3;
      for (int trial = 0; trial < trials; ++trial) {
        const Monomial m{t.index(), word_of(oracle::random_permutation(deg, rng))};
        CHECK(collect(m) == oracle::expand_term(to_term(m)));
      }
    }
  // Repeated letters: collection cancels terms.
  const Monomial m{0, word_from_string("aabbc")};
  CHECK(collect(m) == oracle::expand_term(to_term(m)));
}

TEST_CASE("degree 11 symmetries: 43 generators, each expanding to zero") {
  const auto gens = symmetry_generators(11);
  CHECK(gens.size() == 43);
  std::vector<int> per_type(8, 0);
  for (const auto& g : gens) ++per_type[static_cast<std::size_t>(g.type)];
  CHECK(per_type == std::vector<int>{6, 5, 6, 5, 6, 5, 4, 6});
  for (const auto& g : gens) {
    std::map<Word, std::int64_t> sum;
    for (const auto& [s, w] : expand(Monomial{g.type, word_of(Permutation::identity(11))})) sum[w] += s;
    for (const auto& [s, w] : expand(Monomial{g.type, word_of(g.pi)})) sum[w] += s;
    std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
    CHECK(sum.empty());
  }
}

TEST_CASE("degree 7 symmetries generate the full stabilizer with signs") {
  const auto gens = symmetry_generators(7);
  const auto perms = all_permutations(7);
  for (const auto& t : association_types(7)) {
    const Word id = word_of(Permutation::identity(7));
    // Stabilizer by brute force: word placements that normalize back to the identity word.
    std::map<Permutation, int> stab;
    for (const auto& p : perms) {
      const auto n = normalize(Monomial{t.index(), word_of(p)});
      if (n.sign != 0 && n.monomial.word == id) stab[p] = n.sign;
    }
    // Closure of the generators, signs by word length parity.
    std::map<Permutation, int> closure{{Permutation::identity(7), 1}};
    std::queue<Permutation> todo;
    todo.push(Permutation::identity(7));
    while (!todo.empty()) {
      const auto x = todo.front();
      todo.pop();
      for (const auto& g : gens) {
        if (g.type != t.index()) continue;
        const auto y = x * g.pi;
        if (closure.emplace(y, -closure[x]).second) todo.push(y);
      }
    }
    CHECK(stab.size() * count_multilinear(t) == 5040);
    CHECK(closure == stab);
  }
}
