#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "tcid/liftgen.hpp"

using namespace tcid;

namespace {

// Expansion of a polynomial summed term by term through the nested-substitution oracle.
std::map<Word, std::int64_t> oracle_expansion(const TernaryPolynomial& p) {
  std::map<Word, std::int64_t> out;
  for (const auto& [m, c] : p.terms()) {
    REQUIRE(c.denominator() == 1);
    for (const auto& [w, k] : oracle::expand_term(to_term(m))) out[w] += c.numerator() * k;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("the degree 7 identity I") {
  const auto I = identity_I();
  CHECK(I.size() == 120);
  CHECK(I.types_used() == std::vector<int>{0, 1});
  CHECK(I.expands_to_zero());
  CHECK(oracle_expansion(I).empty());
  for (const auto& [m, c] : I.terms()) {
    CHECK(is_canonical(m));
    CHECK(c.denominator() == 1);
  }
  // Alternating in b..g: swapping b and c negates every coefficient.
  const auto swapped = I.relabelled([](Letter x) -> Letter { return x == 1 ? 2 : x == 2 ? 1 : x; });
  REQUIRE(swapped.size() == I.size());
  for (const auto& [m, c] : I.terms()) {
    const auto it = swapped.terms().find(m);
    REQUIRE(it != swapped.terms().end());
    CHECK(it->second == -c);
  }
  // Not alternating in a and b.
  const auto ab = I.relabelled([](Letter x) -> Letter { return x == 0 ? 1 : x == 1 ? 0 : x; });
  bool negated = true;
  for (const auto& [m, c] : I.terms()) {
    const auto it = ab.terms().find(m);
    negated &= it != ab.terms().end() && it->second == -c;
  }
  CHECK_FALSE(negated);
}

TEST_CASE("raw I has 1440 signed terms") {
  std::array<Term, 7> args;
  for (int i = 0; i < 7; ++i) args[static_cast<std::size_t>(i)] = Term::leaf(static_cast<Letter>(i));
  const auto raw = identity_I_raw(args);
  CHECK(raw.size() == 1440);
  TernaryPolynomial p;
  for (const auto& [s, t] : raw) p.add(t, s);
  p.make_primitive();
  CHECK(p == identity_I());
}

TEST_CASE("lifting families") {
  const auto l9 = liftings_degree9();
  const auto l11 = liftings_degree11();
  REQUIRE(l9.size() == 3);
  REQUIRE(l11.size() == 8);
  CHECK(l9[0].to_string() == "I([a,h,i],b,c,d,e,f,g)");
  CHECK(l9[1].to_string() == "I(a,[b,h,i],c,d,e,f,g)");
  CHECK(l9[2].to_string() == "[I(a,b,c,d,e,f,g),h,i]");
  const char* expect[] = {"I([[a,j,k],h,i],b,c,d,e,f,g)", "I([a,h,i],[b,j,k],c,d,e,f,g)",
                          "[I([a,h,i],b,c,d,e,f,g),j,k]", "I(a,[[b,j,k],h,i],c,d,e,f,g)",
                          "I(a,[b,h,i],[c,j,k],d,e,f,g)", "[I(a,[b,h,i],c,d,e,f,g),j,k]",
                          "[I(a,b,c,d,e,f,g),[h,j,k],i]", "[[I(a,b,c,d,e,f,g),h,i],j,k]"};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(l11[i].to_string() == expect[i]);
    CHECK(l11[i].degree() == 11);
  }
  CHECK(liftings_for_degree(7).empty());
  CHECK(liftings_for_degree(9).size() == 3);
  CHECK(liftings_for_degree(11).size() == 8);
}

TEST_CASE("degree 9 liftings are identities") {
  for (const auto& l : liftings_degree9()) {
    const auto p = evaluate(l);
    CHECK_FALSE(p.empty());
    CHECK(p.expands_to_zero());
    CHECK(oracle_expansion(p).empty());
  }
}

TEST_CASE("degree 11 liftings are identities") {
  const auto l11 = liftings_degree11();
  for (std::size_t f : {1u, 4u, 6u}) {
    const auto p = evaluate(l11[f]);
    CHECK_FALSE(p.empty());
    CHECK(p.expands_to_zero());
  }
}

TEST_CASE("group algebra form of I") {
  const auto I = identity_I();
  const auto ga = to_group_algebra(I, 7);
  REQUIRE(ga.size() == 2);
  CHECK(ga[0].size() + ga[1].size() == 120);
  for (const auto& [m, c] : I.terms()) {
    std::vector<int> img(m.word.begin(), m.word.end());
    CHECK(ga[static_cast<std::size_t>(m.type)].coefficient(Permutation(img)) == c);
  }
}

TEST_CASE("substitution rules for multidegree a^2b^2c^2d^2e^2f") {
  const Multidegree delta{2, 2, 2, 2, 2, 1};
  const auto subs = multidegree_substitutions(delta);
  std::vector<int> per_family(8, 0);
  for (const auto& s : subs) ++per_family[static_cast<std::size_t>(s.family)];
  CHECK(per_family == std::vector<int>{10, 50, 10, 170, 215, 170, 20, 30});
  CHECK(subs.size() == 675);
  const auto rules = multidegree_rules();
  REQUIRE(rules.size() == 8);
  for (const auto& s : subs) CHECK(rules[static_cast<std::size_t>(s.family)].accepts(s.q));
  // Spread of samples across families; each substituted lifting is an identity.
  for (std::size_t i = 0; i < subs.size(); i += 97) {
    CHECK(subs[i].poly.expands_to_zero());
    CHECK(oracle_expansion(subs[i].poly).empty());
  }
}
