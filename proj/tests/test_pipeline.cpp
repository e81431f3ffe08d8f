#include <doctest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "tcid/liftgen.hpp"
#include "tcid/mdpipeline.hpp"
#include "tcid/mlpipeline.hpp"

using namespace tcid;

TEST_CASE("degree 5: no new identities") {
  for (const auto& l : partitions_of(5)) {
    const auto r = partition_report(l, kDefaultPrime);
    CAPTURE(l.to_string());
    CHECK(r.invariants_ok);
    CHECK(r.new_count() == 0);
    CHECK(r.row_space_match);
    CHECK(r.sym == r.all);
  }
}

TEST_CASE("degree 7: I accounts for the new identities") {
  const auto& in = PipelineInputs::for_degree(7);
  CHECK(in.liftings.empty());
  const auto ga = to_group_algebra(identity_I(), 7);
  std::size_t total_new = 0;
  for (const auto& l : partitions_of(7)) {
    CAPTURE(l.to_string());
    const auto pc = compute_partition(l, kDefaultPrime);
    CHECK(pc.report.invariants_ok);
    total_new += pc.report.new_count();

    const NaturalRepresentation rep(l, kDefaultPrime);
    const std::size_t d = rep.dim();
    ModMatrix rows(d, 2 * d, kDefaultPrime);
    for (std::size_t t = 0; t < 2; ++t) rows.set_block(0, t * d, rep_of_element(rep, ga[t]));
    CHECK(rows_in_space(pc.allmat, rows));
    // With I added to the symmetries the space is complete.
    CHECK(stacked_rank(pc.oldmat, rows) == pc.report.all);
    if (pc.report.new_count() > 0) {
      CHECK_FALSE(rows_in_space(pc.oldmat, rows));
      const auto ids = extract_new_identities(pc);
      CHECK(ids.size() == pc.report.new_count());
    } else {
      CHECK_THROWS_WITH_AS(extract_new_identities(pc), "no new identity", std::runtime_error);
    }
  }
  CHECK(total_new > 0);
}

TEST_CASE("small degree 11 representations") {
  const auto r = partition_report(Partition({11}), kDefaultPrime);
  CHECK(r.sym == 8);
  CHECK(r.all == 8);
  const auto s = partition_report(Partition(std::vector<int>(11, 1)), kDefaultPrime);
  CHECK(s.sym == 0);
  CHECK(s.symlif == 7);
  CHECK(s.all == 7);
  CHECK(s.row_space_match);
  const auto by_dim = partitions_by_dimension(11, 10);
  REQUIRE(by_dim.size() == 4);
  CHECK(by_dim[0] == Partition({11}));
  CHECK(by_dim[1] == Partition(std::vector<int>(11, 1)));
}

TEST_CASE("results do not depend on thread count or cache") {
  const Partition l({3, 2, 1, 1});
  PipelineOptions one, many;
  many.threads = 3;
  const auto dir = std::filesystem::temp_directory_path() / "tcid-pipeline-cache";
  std::filesystem::remove_all(dir);
  many.cache = RepCache(dir);
  const auto a = compute_partition(l, kDefaultPrime, one);
  const auto b = compute_partition(l, kDefaultPrime, many);
  const auto c = compute_partition(l, kDefaultPrime, many);  // cache hits
  CHECK(a.allmat == b.allmat);
  CHECK(a.oldmat == b.oldmat);
  CHECK(b.allmat == c.allmat);
  std::filesystem::remove_all(dir);
}

// --- multidegree pipeline on small inputs -----------------------------------

namespace {

std::map<Word, std::int64_t> column_as_map(const ExpansionStore& store, std::size_t j) {
  std::map<Word, std::int64_t> out;
  for (auto e : store.column(j)) {
    const auto k = static_cast<std::uint64_t>(e < 0 ? -e : e);
    out[store.ranker().unrank0(k - 1)] += e < 0 ? -1 : 1;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

ModMatrix dense_expansion(const ExpansionStore& store, std::uint32_t p) {
  ModMatrix m(store.total_rows(), store.columns(), p);
  for (std::size_t j = 0; j < store.columns(); ++j)
    for (const auto& [w, c] : oracle::expand_term(to_term(store.monomials()[j])))
      m(store.ranker().rank0(w), j) = m.field().add(m(store.ranker().rank0(w), j), m.field().reduce(c));
  return m;
}

}  // namespace

TEST_CASE("expansion store columns match the expansion oracle") {
  const Multidegree delta{2, 2, 1, 1, 1};
  const ExpansionStore store(delta, 2);
  std::size_t expect_cols = 0;
  for (const auto& w : enumerate_nonassoc_multidegree(delta)) expect_cols += w.size();
  CHECK(store.columns() == expect_cols);
  CHECK(store.total_rows() == 7 * 6 * 5 * 4 * 3 * 2 / 4);
  for (std::size_t j = 0; j < store.columns(); ++j) {
    const auto col = store.column(j);
    for (std::size_t i = 1; i < col.size(); ++i) CHECK(std::abs(col[i - 1]) <= std::abs(col[i]));
    CHECK(column_as_map(store, j) == oracle::expand_term(to_term(store.monomials()[j])));
    CHECK(store.column_of(store.monomials()[j]) == j);
  }
  CHECK_FALSE(store.column_of(Monomial{0, word_from_string("aabbcde")}).has_value());
}

TEST_CASE("streamed kernel equals the dense nullspace") {
  const std::uint32_t p = kDefaultPrime;
  for (const Multidegree& delta : {Multidegree{2, 2, 1, 1, 1}, Multidegree{1, 1, 1, 1, 1, 1, 1}}) {
    const ExpansionStore store(delta);
    const auto dense = rcf(dense_expansion(store, p));
    const auto k = kernel_of_expansion(store, p, 97);
    CHECK(k.rank == dense.rank);
    CHECK(k.residues == nullspace_canonical_basis(dense.matrix));
    REQUIRE(k.integers.size() == k.residues.size());
    for (std::size_t i = 0; i < k.integers.size(); ++i) {
      CHECK(verify_expansion_zero(store, k.integers[i]));
      CHECK(annihilated_mod_p(store, k.residues[i], p));
    }
  }
}

TEST_CASE("I lies in the multilinear degree 7 kernel") {
  const ExpansionStore store(Multidegree(7, 1));
  const auto v = coefficient_vector(store, identity_I());
  CHECK(v.size() == 120);
  std::vector<std::int64_t> dense(store.columns(), 0);
  for (const auto& [j, c] : v) dense[j] = c;
  CHECK(verify_expansion_zero(store, dense));
  const auto terms = identity_terms(store, dense);
  CHECK(terms.size() == 120);
  CHECK(verify_expansion_zero(terms, Multidegree(7, 1)));
  dense[v.front().first] += 1;
  CHECK_FALSE(verify_expansion_zero(store, dense));
}

TEST_CASE("kernel statistics and lengths") {
  KernelBasis k;
  k.integers = {{1, -2, 0, 2}, {3, 0, 0, 0}, {0, 5, -5, 5}};
  const auto s = kernel_statistics(k);
  CHECK(s.min_nonzero == 1);
  CHECK(s.max_nonzero == 3);
  CHECK(s.min_distinct == 1);
  CHECK(s.max_distinct == 3);
  CHECK(s.min_square == 9);
  CHECK(s.max_square == 75);
  CHECK(square_length(std::vector<std::int64_t>{3, 4}) == 25);
}

TEST_CASE("linearization of repeated letters") {
  // [[a,b,c],a,d] in multidegree a^2bcd: a -> e once in each position.
  const Multidegree delta{2, 1, 1, 1};
  const auto n = normalize(parse_term("[[a,b,c],a,d]"));
  REQUIRE(n.sign != 0);
  const std::vector<IdentityTerm> terms{{n.sign, n.monomial}};
  const auto lin = linearize(terms, delta);
  CHECK(lin.raw_terms == 2);
  CHECK(lin.poly.size() == 2);
  // Identifying the fresh letter with a again doubles the original term.
  const auto back = lin.poly.relabelled([](Letter x) -> Letter { return x == 4 ? 0 : x; });
  REQUIRE(back.size() == 1);
  CHECK(back.terms().begin()->first == n.monomial);
  CHECK(back.terms().begin()->second == Rational(2 * n.sign));

  // Two repeated letters give four raw terms per monomial.
  const auto m = normalize(parse_term("[[a,b,c],a,b]"));
  REQUIRE(m.sign != 0);
  const std::vector<IdentityTerm> t2{{1, m.monomial}};
  CHECK(linearize(t2, Multidegree{2, 2, 1}).raw_terms == 4);
}

TEST_CASE("identity artifact round trip") {
  const ExpansionStore store(Multidegree(7, 1));
  const auto v = coefficient_vector(store, identity_I());
  std::vector<std::int64_t> dense(store.columns(), 0);
  for (const auto& [j, c] : v) dense[j] = c;
  const auto terms = identity_terms(store, dense);
  std::stringstream s;
  write_identity_artifact(s, terms, Multidegree(7, 1), kDefaultPrime);
  CHECK(s.str().rfind("# ", 0) == 0);
  const auto back = read_identity_artifact(s);
  REQUIRE(back.size() == terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(back[i].coefficient == terms[i].coefficient);
    CHECK(back[i].monomial == terms[i].monomial);
  }
  CHECK(verify_expansion_zero(back, Multidegree(7, 1)));
}
