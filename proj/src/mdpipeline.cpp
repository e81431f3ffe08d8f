#include "tcid/mdpipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tcid/mlpipeline.hpp"
#include "tcid/natural_rep.hpp"
#include "tcid/parallel.hpp"

namespace tcid {

namespace {

void say(const Progress& p, const std::string& msg) {
  if (p) p(msg);
}

// Expansion of a monomial as 0-based word ranks with signs.
template <class Fn>
void for_each_expansion_rank(const Monomial& m, const WordRanker& ranker, Fn&& fn) {
  const auto& type = assoc_type(m.degree(), m.type);
  Word u(m.word.size());
  for (const auto& e : type.expansion()) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = m.word[static_cast<std::size_t>(e.tau[static_cast<int>(k)])];
    fn(e.sign, ranker.rank0_unchecked(u.data()));
  }
}

std::uint64_t abs_index(std::int32_t x) { return static_cast<std::uint64_t>(x < 0 ? -x : x); }

}  // namespace

std::size_t ExpansionStore::MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.type) * 0x9e3779b97f4a7c15ULL;
  for (auto l : m.word) h = (h ^ l) * 0x100000001b3ULL;
  return h;
}

ExpansionStore::ExpansionStore(const Multidegree& delta, unsigned threads)
    : delta_(delta), ranker_(delta) {
  const int n = ranker_.length();
  const auto words = enumerate_nonassoc_multidegree(delta);
  for (std::size_t t = 0; t < words.size(); ++t)
    for (const auto& w : words[t]) monomials_.push_back({static_cast<int>(t), w});
  index_.reserve(monomials_.size());
  for (std::size_t j = 0; j < monomials_.size(); ++j) index_.emplace(monomials_[j], j);
  if (ranker_.count() > static_cast<std::uint64_t>(INT32_MAX))
    throw std::invalid_argument("ExpansionStore: too many associative words");

  width_ = n >= 3 ? assoc_type(n, 0).expansion().size() : 0;
  data_.assign(monomials_.size() * width_, 0);
  parallel_for(monomials_.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t j = b; j < e; ++j) {
      std::int32_t* col = data_.data() + j * width_;
      std::size_t k = 0;
      for_each_expansion_rank(monomials_[j], ranker_, [&](int sign, std::uint64_t r) {
        col[k++] = sign * static_cast<std::int32_t>(r + 1);
      });
      std::sort(col, col + width_, [](std::int32_t x, std::int32_t y) { return abs_index(x) < abs_index(y); });
    }
  });
}

std::optional<std::size_t> ExpansionStore::column_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::int32_t> ExpansionStore::column(std::size_t j) const {
  return {data_.data() + j * width_, width_};
}

void ExpansionStore::column_entries(std::size_t col, std::uint64_t first_row, std::uint64_t row_count,
                                    std::vector<Entry>& out) const {
  const auto c = column(col);
  auto lo = std::partition_point(c.begin(), c.end(), [&](std::int32_t x) { return abs_index(x) <= first_row; });
  for (auto it = lo; it != c.end() && abs_index(*it) <= first_row + row_count; ++it)
    out.push_back({abs_index(*it) - 1, *it < 0 ? -1 : 1});
}

// ---------------------------------------------------------------------------

KernelBasis kernel_of_expansion(const ExpansionStore& store, std::uint32_t p, std::uint64_t chunk_rows,
                                unsigned threads, const Progress& progress) {
  auto upper = chunked_reduce(
      store, chunk_rows, p,
      [&](std::size_t chunk, std::size_t chunks, std::size_t rank) {
        say(progress, "chunk " + std::to_string(chunk) + "/" + std::to_string(chunks) + " rank=" + std::to_string(rank));
      },
      threads);
  KernelBasis k;
  k.rank = upper.rank();
  k.free_columns = upper.free_columns();
  k.residues = upper.kernel_basis();
  k.integers.reserve(k.residues.size());
  for (const auto& v : k.residues) {
    auto w = lift_primitive(v, p, std::int64_t{1} << 15);
    if (w.empty()) throw StageError("kernel", "basis vector has no small integer form");
    k.integers.push_back(std::move(w));
  }
  return k;
}

std::vector<std::pair<std::size_t, std::int64_t>> coefficient_vector(const ExpansionStore& store,
                                                                     const TernaryPolynomial& poly) {
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (const auto& [m, c] : poly.terms()) {
    const auto j = store.column_of(m);
    if (!j) throw std::invalid_argument("coefficient_vector: monomial " + to_string(m) + " is not a column");
    if (c.denominator() != 1) throw std::invalid_argument("coefficient_vector: non-integral coefficient");
    out.emplace_back(*j, c.numerator());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConsequenceSpace consequence_space(const ExpansionStore& store, std::uint32_t p) {
  const auto subs = multidegree_substitutions(store.multidegree());
  ConsequenceSpace cs;
  cs.filled = subs.size();
  cs.rows = ModMatrix(subs.size() + 1, store.columns(), p);
  for (std::size_t r = 0; r < subs.size(); ++r) {
    const auto f = static_cast<std::size_t>(subs[r].family);
    if (cs.per_family.size() <= f) cs.per_family.resize(f + 1, 0);
    ++cs.per_family[f];
    for (const auto& [j, c] : coefficient_vector(store, subs[r].poly)) cs.rows.set(r, j, c);
  }
  cs.rank = rank_of(cs.rows);
  return cs;
}

bool annihilated_mod_p(const ExpansionStore& store, std::span<const std::uint32_t> v, std::uint32_t p) {
  std::vector<std::int64_t> acc(store.total_rows(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    const std::int64_t c = v[j];
    for (auto x : store.column(j)) acc[abs_index(x) - 1] += x < 0 ? -c : c;
  }
  return std::all_of(acc.begin(), acc.end(), [p](std::int64_t a) { return a % p == 0; });
}

std::uint64_t square_length(std::span<const std::int64_t> v) {
  std::uint64_t s = 0;
  for (auto x : v) s += static_cast<std::uint64_t>(x * x);
  return s;
}

KernelStats kernel_statistics(const KernelBasis& k) {
  KernelStats st;
  bool first = true;
  for (const auto& v : k.integers) {
    std::set<std::int64_t> distinct;
    std::size_t nz = 0;
    for (auto x : v)
      if (x != 0) {
        ++nz;
        distinct.insert(x);
      }
    const auto sq = square_length(v);
    if (first) {
      st = {nz, nz, distinct.size(), distinct.size(), sq, sq};
      first = false;
      continue;
    }
    st.min_nonzero = std::min(st.min_nonzero, nz);
    st.max_nonzero = std::max(st.max_nonzero, nz);
    st.min_distinct = std::min(st.min_distinct, distinct.size());
    st.max_distinct = std::max(st.max_distinct, distinct.size());
    st.min_square = std::min(st.min_square, sq);
    st.max_square = std::max(st.max_square, sq);
  }
  return st;
}

NewVector find_new_vector(const KernelBasis& kernel, const ConsequenceSpace& cons) {
  // The consequences lie in the kernel, so in the canonical basis their
  // coordinates are their entries on the free columns.  Basis vector i lies
  // outside their span iff some vector orthogonal to that span is nonzero at i.
  const std::size_t m = kernel.free_columns.size();
  ModMatrix coords(cons.filled, m, cons.rows.modulus());
  for (std::size_t r = 0; r < cons.filled; ++r)
    for (std::size_t i = 0; i < m; ++i) coords(r, i) = cons.rows(r, kernel.free_columns[i]);
  const auto normals = nullspace_canonical_basis(rcf(coords).matrix);

  std::vector<std::size_t> order(kernel.integers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::uint64_t> sq(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) sq[i] = square_length(kernel.integers[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sq[a] < sq[b]; });

  for (std::size_t s = 0; s < order.size(); ++s) {
    const std::size_t i = order[s];
    const bool outside = std::any_of(normals.begin(), normals.end(), [&](const auto& n) { return n[i] != 0; });
    if (outside) return {s + 1, i + 1, kernel.integers[i]};
  }
  throw StageError("search", "every kernel vector lies in the span of the consequences");
}

std::vector<IdentityTerm> identity_terms(const ExpansionStore& store, std::span<const std::int64_t> v) {
  std::vector<IdentityTerm> out;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) out.push_back({v[j], store.monomials()[j]});
  return out;
}

bool verify_expansion_zero(const ExpansionStore& store, std::span<const std::int64_t> v) {
  std::vector<std::int64_t> acc(store.total_rows(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    for (auto x : store.column(j)) acc[abs_index(x) - 1] += x < 0 ? -v[j] : v[j];
  }
  return std::all_of(acc.begin(), acc.end(), [](std::int64_t a) { return a == 0; });
}

bool verify_expansion_zero(std::span<const IdentityTerm> terms, const Multidegree& delta) {
  const WordRanker ranker(delta);
  std::vector<std::int64_t> acc(ranker.count(), 0);
  for (const auto& t : terms) {
    ranker.rank0(t.monomial.word);  // validates the multidegree
    for_each_expansion_rank(t.monomial, ranker, [&](int sign, std::uint64_t r) { acc[r] += sign * t.coefficient; });
  }
  return std::all_of(acc.begin(), acc.end(), [](std::int64_t a) { return a == 0; });
}

Linearized linearize(std::span<const IdentityTerm> terms, const Multidegree& delta) {
  std::vector<Letter> repeated;
  for (std::size_t x = 0; x < delta.size(); ++x) {
    if (delta[x] > 2) throw std::invalid_argument("linearize: multiplicities above 2 are not supported");
    if (delta[x] == 2) repeated.push_back(static_cast<Letter>(x));
  }
  const auto fresh = [&](std::size_t i) { return static_cast<Letter>(delta.size() + i); };
  const std::size_t r = repeated.size();

  Linearized out;
  for (const auto& t : terms) {
    std::vector<std::pair<std::size_t, std::size_t>> pos(r);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::size_t> at;
      for (std::size_t k = 0; k < t.monomial.word.size(); ++k)
        if (t.monomial.word[k] == repeated[i]) at.push_back(k);
      if (at.size() != 2) throw std::invalid_argument("linearize: term does not have the multidegree");
      pos[i] = {at[0], at[1]};
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      Monomial m = t.monomial;
      for (std::size_t i = 0; i < r; ++i) {
        const bool swap = (mask >> i) & 1;
        m.word[swap ? pos[i].first : pos[i].second] = fresh(i);
      }
      out.poly.add(normalize(m), t.coefficient);
      ++out.raw_terms;
    }
  }
  return out;
}

Rank1021Check verify_rank_1021(const TernaryPolynomial& linearized, std::uint32_t p, unsigned threads,
                               const Progress& progress) {
  const Partition lambda = Partition::parse("2^5 1");
  const auto& in = PipelineInputs::for_degree(11);
  const NaturalRepresentation rep(lambda, p);
  const std::size_t d = rep.dim();
  PipelineOptions opt;
  opt.threads = threads;
  opt.log = progress;

  Rank1021Check out;
  ModMatrix m = symlif_matrix(rep, in, opt);
  out.rank_without = rank_of(m);
  say(progress, "representation of the linearized identity");
  const auto elems = to_group_algebra(linearized, 11);
  ModMatrix last(d, in.types * d, p);
  for (std::size_t t = 0; t < in.types; ++t)
    if (!elems[t].is_zero()) last.set_block(0, t * d, rep_of_element(rep, elems[t], threads));
  m.append_rows(last);
  auto reduced = rcf(std::move(m));
  out.rank_with = reduced.rank;
  out.allmat_match = reduced.matrix == all_matrix(rep, in, opt).allmat;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string artifact_line(const IdentityTerm& t) {
  return std::to_string(t.coefficient) + '\t' + std::to_string(t.monomial.type + 1) + '\t' +
         word_to_string(t.monomial.word);
}

std::string multidegree_string(const Multidegree& delta) {
  std::string s;
  for (std::size_t i = 0; i < delta.size(); ++i) s += (i ? "," : "") + std::to_string(delta[i]);
  return s;
}

}  // namespace

void write_identity_artifact(std::ostream& out, std::span<const IdentityTerm> terms, const Multidegree& delta,
                             std::uint32_t p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& t : terms)
    for (char c : artifact_line(t) + '\n') h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  out << "# ternary commutator identity\n"
      << "# multidegree " << multidegree_string(delta) << '\n'
      << "# prime " << p << '\n'
      << "# terms " << terms.size() << '\n'
      << "# fnv1a " << hex << '\n'
      << "# coefficient\ttype\tword\n";
  for (const auto& t : terms) out << artifact_line(t) << '\n';
}

std::vector<IdentityTerm> read_identity_artifact(std::istream& in) {
  std::vector<IdentityTerm> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::int64_t c = 0;
    int type = 0;
    std::string word;
    if (!(fields >> c >> type >> word) || type < 1)
      throw std::invalid_argument("read_identity_artifact: bad line '" + line + "'");
    out.push_back({c, {type - 1, word_from_string(word)}});
  }
  return out;
}

// ---------------------------------------------------------------------------

MultidegreeResult run_multidegree(const MultidegreeOptions& opt) {
  MultidegreeResult res;
  const auto& delta = kTargetMultidegree;
  const std::uint32_t p = opt.prime;

  say(opt.progress, "building expansion store");
  const ExpansionStore store(delta, opt.threads);
  res.columns = store.columns();
  res.words = store.total_rows();
  say(opt.progress, "columns=" + std::to_string(res.columns) + " words=" + std::to_string(res.words));

  const auto kernel = kernel_of_expansion(store, p, opt.chunk_rows, opt.threads, opt.progress);
  res.rank = kernel.rank;
  res.nullity = kernel.residues.size();
  say(opt.progress, "rank=" + std::to_string(res.rank) + " nullity=" + std::to_string(res.nullity));
  for (std::size_t i = 0; i < kernel.integers.size(); ++i)
    if (!verify_expansion_zero(store, kernel.integers[i]))
      throw StageError("kernel", "lifted basis vector " + std::to_string(i + 1) + " does not expand to zero");
  res.stats = kernel_statistics(kernel);

  const auto cons = consequence_space(store, p);
  res.consequences = cons.filled;
  res.consequence_rank = cons.rank;
  say(opt.progress, "consequences=" + std::to_string(cons.filled) + " rank=" + std::to_string(cons.rank));
  for (std::size_t r = 0; r < cons.filled; ++r)
    if (!annihilated_mod_p(store, cons.rows.row(r), p))
      throw StageError("consequences", "row " + std::to_string(r + 1) + " is not an identity");

  res.winner = find_new_vector(kernel, cons);
  res.identity = identity_terms(store, res.winner.vector);
  std::set<int> types;
  for (const auto& t : res.identity) {
    res.coefficients.insert(t.coefficient);
    types.insert(t.monomial.type + 1);
  }
  res.types.assign(types.begin(), types.end());
  say(opt.progress, "winner sorted=" + std::to_string(res.winner.sorted_position) +
                        " original=" + std::to_string(res.winner.original_position) +
                        " terms=" + std::to_string(res.identity.size()));

  res.expansion_zero = verify_expansion_zero(res.identity, delta);
  if (!res.expansion_zero) throw StageError("expansion", "the identity does not expand to zero");

  const auto lin = linearize(res.identity, delta);
  res.linearized_terms = lin.raw_terms;
  say(opt.progress, "linearized terms=" + std::to_string(lin.raw_terms));
  if (opt.final_rank_check) {
    res.final_check = verify_rank_1021(lin.poly, p, opt.threads, opt.progress);
    say(opt.progress, "rank=" + std::to_string(res.final_check->rank_with) +
                          " allmat-match=" + (res.final_check->allmat_match ? "true" : "false"));
  }
  return res;
}

}  // namespace tcid
