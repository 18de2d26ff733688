#include <CLI11.hpp>
#include <iostream>

#include "gnewton/cli/commands.hpp"

namespace {

void add_run_options(CLI::App* sub, gnewton::cli::RunOptions& o, bool with_rank) {
  sub->add_option("matrix", o.matrix_path, "matrix text file")->required();
  if (with_rank) sub->add_option("--m", o.m, "subspace dimension")->required();
  sub->add_option("--mu", o.mu, "pull-back chart")->check(CLI::IsMember({"exp", "qr", "cayley"}));
  sub->add_option("--nu", o.nu, "push-forward chart")->check(CLI::IsMember({"exp", "qr", "cayley"}));
  sub->add_option("--tol", o.tol, "gradient norm tolerance");
  sub->add_option("--max-iters", o.max_iters, "iteration limit");
  sub->add_option("--out", o.out_path, "report path (default stdout)");
  sub->add_option("--seed", o.seed, "seed for the random start");
  sub->add_option("--start", o.start_path, "start basis file");
  sub->add_option("--perturb", o.perturb, "move the --start subspace this far away");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton's method on Grassmann and Lagrange-Grassmann manifolds"};
  app.require_subcommand(1);

  gnewton::cli::RunOptions gr, lg, inv;
  gnewton::cli::CheckOptions chk;
  bool fault = false;

  auto* sub_gr = app.add_subcommand("rayleigh-gr", "dominant eigenspace of a symmetric matrix");
  add_run_options(sub_gr, gr, true);
  sub_gr->add_option("--warm-sweeps", gr.warm_sweeps, "orthogonal iteration sweeps before Newton (random start only)");
  auto* sub_lg = app.add_subcommand("rayleigh-lg", "Rayleigh quotient on the Lagrange Grassmannian");
  add_run_options(sub_lg, lg, false);
  auto* sub_inv = app.add_subcommand("invariant", "invariant subspace of a square matrix");
  add_run_options(sub_inv, inv, true);
  sub_inv->add_option("--solver", inv.solver, "linear solver")->check(CLI::IsMember({"direct", "recursive"}));
  sub_inv->add_option("--warm-sweeps", inv.warm_sweeps, "orthogonal iteration sweeps before Newton (random start only)");
  auto* sub_chk = app.add_subcommand("check", "property suites over a size grid");
  sub_chk->add_option("--sizes", chk.sizes, "ambient dimensions")->delimiter(',');
  sub_chk->add_option("--seeds", chk.seeds, "seeds per size");
  sub_chk->add_flag("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gnewton::cli::kInputError;
  }

  if (*sub_gr) return gnewton::cli::cmd_rayleigh_gr(gr, std::cout, std::cerr);
  if (*sub_lg) return gnewton::cli::cmd_rayleigh_lg(lg, std::cout, std::cerr);
  if (*sub_inv) return gnewton::cli::cmd_invariant(inv, std::cout, std::cerr);
  chk.inject_fault = fault;
  return gnewton::cli::cmd_check(chk, std::cout);
}
