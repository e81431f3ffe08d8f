// Batch front end: `table`, `extract` and `multidegree` subcommands.
//
// Results go to standard output (or --out), progress to standard error.
// Exit codes: 0 success, 2 invariant violation, 3 resource failure.

#ifndef TCID_CLI_HPP
#define TCID_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tcid/modlinalg.hpp"
#include "tcid/permgroup.hpp"

namespace tcid {

enum ExitCode : int { kExitOk = 0, kExitInvariant = 2, kExitResource = 3 };

struct RunConfig {
  std::uint32_t prime = kDefaultPrime;
  int degree = 11;
  std::size_t max_dim = 45;
  std::vector<Partition> partitions;  // overrides max_dim when nonempty
  std::string cache_dir;
  std::string format = "json";        // json | csv
  unsigned threads = 1;
  bool check_prime = false;
  std::string out;                    // empty: standard output
  std::string artifact = "identity_multidegree.tsv";
};

/// Throws std::invalid_argument when p is not a prime above the degree or the
/// degree is not one of 5, 7, 9, 11.
void validate(const RunConfig& cfg);

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_extract(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_multidegree(const RunConfig& cfg, std::ostream& out, std::ostream& log);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tcid

#endif  // TCID_CLI_HPP
