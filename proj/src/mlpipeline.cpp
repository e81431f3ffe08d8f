#include "tcid/mlpipeline.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tcid/liftgen.hpp"

namespace tcid {

namespace {

void say(const PipelineOptions& opt, const std::string& msg) {
  if (opt.log) opt.log(msg);
}

PipelineInputs build_inputs(int degree) {
  PipelineInputs in;
  in.degree = degree;
  const auto& types = association_types(degree);
  in.types = types.size();
  in.symmetries = symmetry_generators(degree);
  for (const auto& l : liftings_for_degree(degree)) in.liftings.push_back(to_group_algebra(evaluate(l), degree));
  for (const auto& t : types) {
    std::vector<std::pair<std::int64_t, Permutation>> terms;
    terms.reserve(t.expansion().size());
    for (const auto& e : t.expansion()) terms.emplace_back(e.sign, e.tau);
    in.expansions.push_back(std::move(terms));
  }
  return in;
}

void add_identity_block(ModMatrix& m, std::size_t r0, std::size_t c0, std::size_t d) {
  for (std::size_t k = 0; k < d; ++k) m(r0 + k, c0 + k) = m.field().add(m(r0 + k, c0 + k), 1);
}

std::size_t leading_column(std::span<const std::uint32_t> row) {
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] != 0) return c;
  return row.size();
}

}  // namespace

const PipelineInputs& PipelineInputs::for_degree(int degree) {
  if (degree < 3 || degree > 11 || degree % 2 == 0)
    throw std::invalid_argument("pipeline degree must be 3, 5, 7, 9 or 11");
  static std::array<std::once_flag, 5> once;
  static std::array<std::unique_ptr<PipelineInputs>, 5> built;
  const auto k = static_cast<std::size_t>((degree - 3) / 2);
  std::call_once(once[k], [&] { built[k] = std::make_unique<PipelineInputs>(build_inputs(degree)); });
  return *built[k];
}

ModMatrix sym_matrix(const NaturalRepresentation& rep, const PipelineInputs& in) {
  const std::size_t d = rep.dim();
  ModMatrix m(in.symmetries.size() * d, in.types * d, rep.modulus());
  for (std::size_t i = 0; i < in.symmetries.size(); ++i) {
    const auto& g = in.symmetries[i];
    const std::size_t c0 = static_cast<std::size_t>(g.type) * d;
    m.set_block(i * d, c0, rep.matrix(g.pi));
    add_identity_block(m, i * d, c0, d);
  }
  return m;
}

std::vector<ModMatrix> expansion_reps(const NaturalRepresentation& rep, const PipelineInputs& in,
                                      const PipelineOptions& opt) {
  const std::string tag = "expansion-" + std::to_string(in.degree);
  if (auto hit = opt.cache.load(rep.shape(), rep.modulus(), tag, in.types, rep.dim())) return *hit;
  std::vector<ModMatrix> out;
  for (std::size_t t = 0; t < in.types; ++t) {
    say(opt, "expansion of type " + std::to_string(t + 1));
    out.push_back(rep.matrix_of_sum(in.expansions[t], opt.threads));
  }
  opt.cache.store(rep.shape(), rep.modulus(), tag, out);
  return out;
}

std::vector<ModMatrix> lifting_reps(const NaturalRepresentation& rep, const PipelineInputs& in,
                                    const PipelineOptions& opt) {
  const std::string tag = "liftings-" + std::to_string(in.degree);
  const std::size_t count = in.liftings.size() * in.types;
  if (count == 0) return {};
  if (auto hit = opt.cache.load(rep.shape(), rep.modulus(), tag, count, rep.dim())) return *hit;
  std::vector<ModMatrix> out;
  for (std::size_t f = 0; f < in.liftings.size(); ++f) {
    say(opt, "lifting family " + std::to_string(f + 1));
    for (std::size_t t = 0; t < in.types; ++t) {
      const auto& e = in.liftings[f][t];
      out.push_back(e.is_zero() ? ModMatrix(rep.dim(), rep.dim(), rep.modulus())
                                : rep_of_element(rep, e, opt.threads));
    }
  }
  opt.cache.store(rep.shape(), rep.modulus(), tag, out);
  return out;
}

ModMatrix symlif_matrix(const NaturalRepresentation& rep, const PipelineInputs& in,
                        const PipelineOptions& opt) {
  const std::size_t d = rep.dim();
  ModMatrix m = sym_matrix(rep, in);
  const auto lifts = lifting_reps(rep, in, opt);
  ModMatrix extra(in.liftings.size() * d, in.types * d, rep.modulus());
  for (std::size_t f = 0; f < in.liftings.size(); ++f)
    for (std::size_t t = 0; t < in.types; ++t) extra.set_block(f * d, t * d, lifts[f * in.types + t]);
  m.append_rows(extra);
  return m;
}

AllMatrix all_matrix(const NaturalRepresentation& rep, const PipelineInputs& in,
                     const PipelineOptions& opt) {
  const std::size_t d = rep.dim(), T = in.types;
  const auto exps = expansion_reps(rep, in, opt);
  ModMatrix m(T * d, (T + 1) * d, rep.modulus());
  for (std::size_t i = 0; i < T; ++i) {
    m.set_block(i * d, 0, exps[i]);
    add_identity_block(m, i * d, (i + 1) * d, d);
  }
  AllMatrix out;
  out.full_rank = rcf_in_place(m);
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < out.full_rank; ++r)
    if (leading_column(m.row(r)) >= d) keep.push_back(r);
  out.allmat = ModMatrix(keep.size(), T * d, rep.modulus());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    auto src = m.row(keep[k]);
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(d), src.end(), out.allmat.row(k).begin());
  }
  return out;
}

PartitionComputation compute_partition(const Partition& lambda, std::uint32_t p,
                                       const PipelineOptions& opt) {
  const int n = lambda.size();
  const auto& in = PipelineInputs::for_degree(n);
  const NaturalRepresentation rep(lambda, p);
  const std::size_t d = rep.dim();

  PartitionComputation pc;
  auto& r = pc.report;
  r.lambda = lambda;
  r.dim = d;
  const auto all_parts = partitions_of(n);
  r.number = static_cast<std::size_t>(std::find(all_parts.begin(), all_parts.end(), lambda) - all_parts.begin()) + 1;

  say(opt, "sym " + lambda.to_string());
  r.sym = rank_of(sym_matrix(rep, in));
  say(opt, "sym+lif " + lambda.to_string());
  auto old = rcf(symlif_matrix(rep, in, opt));
  r.symlif = old.rank;
  pc.oldmat = std::move(old.matrix);
  say(opt, "all " + lambda.to_string());
  auto all = all_matrix(rep, in, opt);
  r.all = all.allmat.rows();
  pc.allmat = std::move(all.allmat);

  const bool full = all.full_rank == in.types * d;
  const bool contained = rows_in_space(pc.allmat, pc.oldmat);
  r.invariants_ok = full && contained && r.all >= r.symlif && r.symlif >= r.sym;
  r.row_space_match = r.all == r.symlif && row_space_equal(pc.oldmat, pc.allmat);
  return pc;
}

std::vector<Partition> partitions_by_dimension(int n, std::size_t max_dim) {
  std::vector<std::pair<std::uint64_t, Partition>> v;
  for (auto& l : partitions_of(n)) {
    const auto d = dimension(l);
    if (d <= max_dim) v.emplace_back(d, std::move(l));
  }
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Partition> out;
  for (auto& [d, l] : v) out.push_back(std::move(l));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<IdentityReport> extract_new_identities(const PartitionComputation& pc) {
  const auto lead_all = leading_columns(pc.allmat);
  const auto lead_old = leading_columns(pc.oldmat);
  const std::set<std::size_t> old(lead_old.begin(), lead_old.end());
  const std::size_t d = pc.report.dim;
  const std::uint32_t p = pc.allmat.modulus();

  std::vector<IdentityReport> out;
  for (std::size_t r = 0; r < lead_all.size(); ++r) {
    if (old.count(lead_all[r])) continue;
    IdentityReport rep;
    rep.lambda = pc.report.lambda;
    rep.dim = d;
    rep.leading_column = lead_all[r] + 1;
    rep.row_index = r + 1;
    rep.row = lift_primitive(pc.allmat.row(r), p, std::int64_t{1} << 15);
    if (rep.row.empty()) throw std::runtime_error("new identity row has no small integer form");
    if (rep.row[lead_all[r]] < 0)
      for (auto& x : rep.row) x = -x;
    for (std::size_t c = 0; c < rep.row.size(); ++c)
      if (rep.row[c] != 0)
        rep.entries.push_back({c + 1, static_cast<int>(c / d) + 1, c % d + 1, rep.row[c]});
    out.push_back(std::move(rep));
  }
  if (out.empty()) throw std::runtime_error("no new identity");
  return out;
}

GroupAlgebraIdentity emit_group_algebra_identity(const IdentityReport& report,
                                                 const NaturalRepresentation& rep) {
  GroupAlgebraIdentity id;
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> support;
  for (const auto& e : report.entries) {
    auto it = support.find(e.tableau);
    if (it == support.end()) {
      std::vector<std::pair<std::size_t, Rational>> s;
      for (const auto& [k, a] : matrix_unit_support(rep, e.tableau - 1)) s.emplace_back(k + 1, a);
      it = support.emplace(e.tableau, std::move(s)).first;
    }
    id.summands.push_back({e.coefficient, e.type, e.tableau, it->second});
  }
  return id;
}

std::string GroupAlgebraIdentity::to_string() const {
  std::ostringstream out;
  auto d_term = [&](std::size_t k, int t) { out << "[D_{1," << k << "}]_" << t; };
  bool first = true;
  for (const auto& s : summands) {
    if (first)
      out << (s.coefficient < 0 ? "-" : "");
    else
      out << (s.coefficient < 0 ? " - " : " + ");
    first = false;
    out << (s.coefficient < 0 ? -s.coefficient : s.coefficient) << ' ';
    const bool plain = s.d_terms.size() == 1 && s.d_terms[0].first == s.j && s.d_terms[0].second.numerator() == 1 &&
                       s.d_terms[0].second.denominator() == 1;
    if (plain) {
      d_term(s.j, s.type);
      continue;
    }
    out << "( ";
    bool inner_first = true;
    for (const auto& [k, a] : s.d_terms) {
      const bool neg = a.numerator() < 0;
      if (inner_first)
        out << (neg ? "-" : "");
      else
        out << (neg ? " - " : " + ");
      inner_first = false;
      const Rational mag = neg ? -a : a;
      if (!(mag.numerator() == 1 && mag.denominator() == 1)) out << tcid::to_string(mag) << ' ';
      d_term(k, s.type);
    }
    out << " )";
  }
  return out.str();
}

ModMatrix identity_representation(const GroupAlgebraIdentity& id, const NaturalRepresentation& rep,
                                  std::size_t types) {
  const std::size_t d = rep.dim();
  const auto& f = rep.field();
  ModMatrix out(d, types * d, rep.modulus());
  std::map<std::size_t, ModMatrix> units;
  for (const auto& s : id.summands) {
    auto it = units.find(s.j);
    if (it == units.end()) it = units.emplace(s.j, matrix_unit_rep(rep, 0, s.j - 1)).first;
    const std::uint32_t c = f.reduce(s.coefficient);
    const std::size_t c0 = static_cast<std::size_t>(s.type - 1) * d;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k)
        out(r, c0 + k) = f.add(out(r, c0 + k), f.mul(c, it->second(r, k)));
  }
  return out;
}

std::size_t stacked_rank(const ModMatrix& a, const ModMatrix& b) {
  ModMatrix m = a;
  m.append_rows(b);
  return rank_of(std::move(m));
}

bool rows_in_space(const ModMatrix& a_rcf, const ModMatrix& b) {
  return stacked_rank(a_rcf, b) == rank_of(a_rcf);
}

}  // namespace tcid
