#include "tcid/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <new>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tcid/mdpipeline.hpp"
#include "tcid/mlpipeline.hpp"

namespace tcid {

using nlohmann::json;

namespace {

std::uint32_t previous_prime(std::uint32_t p) {
  for (std::uint32_t q = p - 1; q > 2; --q)
    if (is_prime(q)) return q;
  throw std::invalid_argument("no smaller prime");
}

PipelineOptions pipeline_options(const RunConfig& cfg, std::ostream& log) {
  PipelineOptions opt;
  opt.threads = cfg.threads;
  if (!cfg.cache_dir.empty()) opt.cache = RepCache(cfg.cache_dir);
  opt.log = [&log](const std::string& m) { log << "[tcid] " << m << '\n' << std::flush; };
  return opt;
}

json report_json(const PartitionReport& r) {
  return {{"number", r.number},        {"partition", r.lambda.to_string()}, {"dim", r.dim},
          {"sym", r.sym},              {"sym_lif", r.symlif},               {"all", r.all},
          {"new", r.new_count()},      {"row_space_match", r.row_space_match},
          {"invariants_ok", r.invariants_ok}};
}

// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const RunConfig& cfg, std::ostream& out, Fn&& fn) {
  if (cfg.out.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw std::ios_base::failure("cannot open " + cfg.out);
  fn(file);
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.degree != 5 && cfg.degree != 7 && cfg.degree != 9 && cfg.degree != 11)
    throw std::invalid_argument("degree must be 5, 7, 9 or 11");
  if (!is_prime(cfg.prime) || cfg.prime <= static_cast<std::uint32_t>(cfg.degree))
    throw std::invalid_argument("prime must be a prime larger than the degree");
  if (cfg.prime >= (1u << 21)) throw std::invalid_argument("prime must be below 2^21");
  if (cfg.format != "json" && cfg.format != "csv") throw std::invalid_argument("format must be json or csv");
  for (const auto& l : cfg.partitions)
    if (l.size() != cfg.degree) throw std::invalid_argument("partition " + l.to_string() + " is not of the degree");
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto parts = cfg.partitions.empty() ? partitions_by_dimension(cfg.degree, cfg.max_dim) : cfg.partitions;
  const auto opt = pipeline_options(cfg, log);
  std::vector<PartitionReport> rows;
  int code = kExitOk;
  for (const auto& l : parts) {
    auto r = partition_report(l, cfg.prime, opt);
    if (!r.invariants_ok || (r.new_count() == 0 && !r.row_space_match)) {
      log << "[tcid] invariant failure for " << l.to_string() << '\n';
      code = kExitInvariant;
    }
    if (cfg.check_prime) {
      auto opt2 = opt;
      opt2.cache = RepCache();
      const auto q = previous_prime(cfg.prime);
      const auto r2 = partition_report(l, q, opt2);
      if (r2.sym != r.sym || r2.symlif != r.symlif || r2.all != r.all) {
        log << "[tcid] ranks for " << l.to_string() << " differ under p=" << q << '\n';
        code = kExitInvariant;
      }
    }
    log << "[tcid] " << l.to_string() << " d=" << r.dim << " sym=" << r.sym << " sym+lif=" << r.symlif
        << " all=" << r.all << " new=" << r.new_count() << '\n';
    rows.push_back(r);
  }
  emit(cfg, out, [&](std::ostream& o) {
    if (cfg.format == "csv") {
      o << "number,partition,dim,sym,sym+lif,all,new,row_space_match\n";
      for (const auto& r : rows)
        o << r.number << ",\"" << r.lambda.to_string() << "\"," << r.dim << ',' << r.sym << ',' << r.symlif << ','
          << r.all << ',' << r.new_count() << ',' << (r.row_space_match ? "true" : "false") << '\n';
      return;
    }
    json j = {{"schema", "tcid.table/1"}, {"degree", cfg.degree}, {"prime", cfg.prime}, {"rows", json::array()}};
    for (const auto& r : rows) j["rows"].push_back(report_json(r));
    o << j.dump(2) << '\n';
  });
  return code;
}

int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const Partition lambda = cfg.partitions.empty() ? Partition::parse("2^5 1") : cfg.partitions.front();
  const auto opt = pipeline_options(cfg, log);
  const auto pc = compute_partition(lambda, cfg.prime, opt);
  std::vector<IdentityReport> reports;
  try {
    reports = extract_new_identities(pc);
  } catch (const std::runtime_error& e) {
    log << "[tcid] " << lambda.to_string() << ": " << e.what() << '\n';
    return kExitInvariant;
  }
  const NaturalRepresentation rep(lambda, cfg.prime);
  const auto& in = PipelineInputs::for_degree(lambda.size());
  int code = kExitOk;

  json j = {{"schema", "tcid.extract/1"}, {"partition", lambda.to_string()}, {"prime", cfg.prime},
            {"report", report_json(pc.report)}, {"identities", json::array()}};
  std::ostringstream csv;
  csv << "column,t,j,tableau,c\n";
  for (const auto& r : reports) {
    const auto id = emit_group_algebra_identity(r, rep);
    const auto R = identity_representation(id, rep, in.types);
    const bool in_all = rows_in_space(pc.allmat, R);
    const bool new_wrt_old = !rows_in_space(pc.oldmat, R);
    bool row_match = true;
    for (std::size_t c = 0; c < r.row.size(); ++c) row_match &= R(0, c) == rep.field().reduce(r.row[c]);
    if (!(in_all && new_wrt_old && row_match)) code = kExitInvariant;

    std::set<std::int64_t> coeffs;
    json entries = json::array();
    for (const auto& e : r.entries) {
      coeffs.insert(e.coefficient);
      const auto tab = rep.tableaux()[e.tableau - 1].to_string();
      entries.push_back({{"column", e.column}, {"type", e.type}, {"tableau", e.tableau},
                         {"flattened", tab}, {"coefficient", e.coefficient}});
      csv << e.column << ',' << e.type << ',' << e.tableau << ",\"" << tab << "\"," << e.coefficient << '\n';
    }
    j["identities"].push_back({{"leading_column", r.leading_column},
                               {"row", r.row_index},
                               {"nonzero", r.entries.size()},
                               {"coefficients", coeffs},
                               {"entries", entries},
                               {"group_algebra", id.to_string()},
                               {"check", {{"in_allmat", in_all}, {"new_over_oldmat", new_wrt_old}, {"row_match", row_match}}}});
    log << "[tcid] new identity: leading column " << r.leading_column << ", row " << r.row_index << ", "
        << r.entries.size() << " nonzero entries, " << coeffs.size() << " distinct coefficients\n";
  }
  emit(cfg, out, [&](std::ostream& o) {
    if (cfg.format == "csv")
      o << csv.str();
    else
      o << j.dump(2) << '\n';
  });
  return code;
}

int cmd_multidegree(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  MultidegreeOptions opt;
  opt.prime = cfg.prime;
  opt.threads = cfg.threads;
  opt.progress = [&log](const std::string& m) { log << "[tcid] " << m << '\n' << std::flush; };
  MultidegreeResult res;
  try {
    res = run_multidegree(opt);
  } catch (const StageError& e) {
    log << "[tcid] stage " << e.stage() << " failed: " << e.what() << '\n';
    return kExitInvariant;
  }
  {
    std::ofstream art(cfg.artifact);
    if (!art) throw std::ios_base::failure("cannot open " + cfg.artifact);
    write_identity_artifact(art, res.identity, kTargetMultidegree, cfg.prime);
  }
  json j = {{"schema", "tcid.multidegree/1"},
            {"prime", cfg.prime},
            {"columns", res.columns},
            {"words", res.words},
            {"rank", res.rank},
            {"nullity", res.nullity},
            {"consequences", res.consequences},
            {"consequence_rank", res.consequence_rank},
            {"kernel",
             {{"nonzero", {res.stats.min_nonzero, res.stats.max_nonzero}},
              {"distinct", {res.stats.min_distinct, res.stats.max_distinct}},
              {"square_length", {res.stats.min_square, res.stats.max_square}}}},
            {"winner",
             {{"sorted", res.winner.sorted_position},
              {"original", res.winner.original_position},
              {"terms", res.identity.size()},
              {"coefficients", res.coefficients},
              {"types", res.types}}},
            {"expansion_zero", res.expansion_zero},
            {"linearized_terms", res.linearized_terms},
            {"artifact", cfg.artifact}};
  if (res.final_check)
    j["final"] = {{"rank_without", res.final_check->rank_without},
                  {"rank", res.final_check->rank_with},
                  {"allmat_match", res.final_check->allmat_match}};
  emit(cfg, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kExitOk;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial identities of the ternary commutator"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> partition_text;

  app.add_option("--prime", cfg.prime, "Prime modulus")->capture_default_str();
  app.add_option("--degree", cfg.degree, "Degree (5, 7, 9 or 11)")->capture_default_str();
  app.add_option("--max-dim", cfg.max_dim, "Largest representation dimension")->capture_default_str();
  app.add_option("--partitions", partition_text, "Explicit partitions, e.g. \"2^5 1\"");
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached representation matrices");
  app.add_option("--format", cfg.format, "json or csv")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  app.add_flag("--check-prime", cfg.check_prime, "Repeat ranks with the next smaller prime");
  app.add_option("--out", cfg.out, "Result file (default: standard output)");

  auto* table = app.add_subcommand("table", "Ranks per partition");
  auto* extract = app.add_subcommand("extract", "Explicit new multilinear identity");
  auto* multi = app.add_subcommand("multidegree", "New identity of multidegree a^2b^2c^2d^2e^2f");
  multi->add_option("--artifact", cfg.artifact, "Identity output file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    for (const auto& t : partition_text) cfg.partitions.push_back(Partition::parse(t));
    if (extract->parsed() && cfg.partitions.empty()) cfg.degree = 11;
    if (multi->parsed()) cfg.degree = 11;
    if (!cfg.partitions.empty()) cfg.degree = cfg.partitions.front().size();
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  try {
    if (table->parsed()) return cmd_table(cfg, out, err);
    if (extract->parsed()) return cmd_extract(cfg, out, err);
    return cmd_multidegree(cfg, out, err);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace tcid
