#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gnewton/cli/report.hpp"

namespace gnewton::cli {

enum ExitCode { kOk = 0, kInputError = 1, kNotConverged = 2, kSolverError = 3 };

struct RunOptions {
  std::string matrix_path;
  int m = 0;
  std::uint64_t seed = 0;
  std::string start_path;  // n x m basis, orthonormalized on load
  std::optional<double> perturb;
  std::string mu = "exp";
  std::string nu = "qr";
  double tol = 1e-12;
  int max_iters = 50;
  std::string out_path;  // empty: stdout
  std::string solver = "direct";
  // rayleigh-gr and invariant: orthogonal-iteration sweeps applied to a random start
  // so Newton begins near the dominant eigenspace; 0 disables.
  int warm_sweeps = 200;
};

// Each writes the JSON report (to opts.out_path or out) and a one-line summary to err.
int cmd_rayleigh_gr(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_rayleigh_lg(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_invariant(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::vector<int> sizes = {2, 3, 4, 5, 6, 8, 10, 12};
  int seeds = 3;
  bool inject_fault = false;  // test hook: corrupts one suite
};

int cmd_check(const CheckOptions& opts, std::ostream& out);

// Shared by the commands; exposed for tests.
int exit_code_for(RunStatus status);

}  // namespace gnewton::cli
