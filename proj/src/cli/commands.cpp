#include "gnewton/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "gnewton/cli/matrix_io.hpp"
#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"
#include "gnewton/solvers.hpp"

namespace gnewton::cli {

namespace {

// Raised for problems the user has to fix; reported with its own label.
struct InputError : std::runtime_error {
  std::string label;
  InputError(std::string l, const std::string& what) : std::runtime_error(what), label(std::move(l)) {}
};

bool is_solver_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::SpectralOverlap:
    case ErrorKind::SingularOperator:
    case ErrorKind::NoConvergence:
    case ErrorKind::ConvergenceFailure:
      return true;
    default:
      return false;
  }
}

NewtonConfig make_config(const RunOptions& o) {
  NewtonConfig cfg;
  cfg.mu = chart_from_string(o.mu);
  cfg.nu = chart_from_string(o.nu);
  cfg.grad_tol = o.tol;
  cfg.max_iters = o.max_iters;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

json config_echo(const RunOptions& o, const std::string& engine, int n, int m) {
  json c;
  c["matrix"] = o.matrix_path;
  c["n"] = n;
  c["m"] = m;
  c["mu"] = o.mu;
  c["nu"] = o.nu;
  c["engine"] = engine;
  c["tol"] = o.tol;
  c["max_iters"] = o.max_iters;
  c["seed"] = o.seed;
  c["start"] = o.start_path.empty() ? json(nullptr) : json(o.start_path);
  c["perturb"] = o.perturb ? json(*o.perturb) : json(nullptr);
  return c;
}

Matrix load_symmetric(const std::string& path) {
  Matrix a = read_matrix_file(path);
  if (a.rows() != a.cols()) throw InputError("DimensionMismatch", "matrix is " + std::to_string(a.rows()) + "x" +
                                                                     std::to_string(a.cols()) + ", expected square");
  if (symmetry_residual(a) > kTol.input_symmetry)
    throw InputError("InputNotSymmetric", "symmetry residual " + std::to_string(symmetry_residual(a)));
  return symmetrize(a);
}

// n x m basis from --start, columns orthonormalized; the full Q is the frame.
Matrix load_start_basis(const std::string& path, int n, int m) {
  Matrix y = read_matrix_file(path);
  if (y.rows() != n || y.cols() != m)
    throw InputError("DimensionMismatch", "start basis must be " + std::to_string(n) + "x" + std::to_string(m));
  return qr_positive(y).q;
}

// Orthogonal iteration on A + ||A|| I from the given frame, stopped once
// ||(I - P) A P|| <= rel * ||A||. Eigenvalues with the largest real part
// dominate, for symmetric A the largest ones.
OrthoFrame warm_start(const Matrix& a, const OrthoFrame& frame, int sweeps, double rel) {
  const int n = frame.dim(), m = frame.rank();
  const double scale = std::max(a.norm(), 1e-300);
  const Matrix shifted = a + scale * Matrix::Identity(n, n);
  Matrix y = frame.theta().transpose().leftCols(m);
  Matrix q = qr_positive(y).q;
  for (int k = 0; k < sweeps; ++k) {
    y = q.leftCols(m);
    if (((a * y) - y * (y.transpose() * a * y)).norm() <= rel * scale) break;
    q = qr_positive(shifted * y).q;
  }
  return OrthoFrame(q.transpose(), m);
}

OrthoFrame gr_start(const RunOptions& o, int n, int m) {
  if (o.perturb && o.start_path.empty()) throw InputError("InvalidConfig", "--perturb needs --start");
  if (o.start_path.empty()) return random_projector(n, m, o.seed).frame;
  OrthoFrame frame(load_start_basis(o.start_path, n, m).transpose(), m);
  if (o.perturb) frame = perturbed_frame(frame, *o.perturb, o.seed);
  return frame;
}

SymplecticFrame lg_start(const RunOptions& o, int n) {
  if (o.perturb && o.start_path.empty()) throw InputError("InvalidConfig", "--perturb needs --start");
  if (o.start_path.empty()) return random_lag_projector(n, o.seed).frame;
  Matrix q = load_start_basis(o.start_path, 2 * n, n);
  Matrix y = q.leftCols(n);
  Matrix p = y * y.transpose();
  if (lagrangian_residual(p) > kTol.input_symmetry)
    throw InputError("NotLagrangian", "start basis does not span a Lagrangian subspace");
  SymplecticFrame frame = lag_frame_from_projector(LagProjector(symmetrize(p)));
  if (o.perturb) frame = perturbed_frame(frame, *o.perturb, o.seed);
  return frame;
}

// Distances to the final iterate first. Fast convergence often leaves fewer
// than three usable entries; then gradient norms stand in, which near a
// nondegenerate critical point are proportional to the distance.
void attach_rate(RunReport& r) {
  try {
    r.rate = estimate_quadratic_rate(error_sequence(r.trace));
    r.rate_note = "errors are distances to the final iterate";
    return;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
  }
  std::vector<double> grads;
  for (const IterationRecord& rec : r.trace.records) grads.push_back(rec.grad_norm);
  try {
    r.rate = estimate_quadratic_rate(grads);
    r.rate_note = "errors are gradient norms; too few distances to the final iterate";
  } catch (const Error& e) {
    r.rate.reset();
    r.rate_note = std::string("no estimate: ") + e.what();
  }
}

int exit_for_status(RunStatus s) { return exit_code_for(s); }

int emit(const RunReport& r, const RunOptions& o, std::ostream& out, std::ostream& err) {
  const std::string text = to_json(r).dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.out_path << "\n";
      return kInputError;
    }
    f << text;
  }
  const NewtonTrace& t = r.trace;
  err << r.command << ": " << to_string(t.status) << " after " << (t.records.empty() ? 0 : t.records.back().iter)
      << " iterations";
  if (!t.records.empty())
    err << ", grad_norm " << t.records.back().grad_norm << ", cost " << t.records.back().cost;
  if (r.rate) err << ", rate slope " << r.rate->slope << (r.rate->quadratic ? " (quadratic)" : " (not quadratic)");
  if (!t.message.empty()) err << " [" << t.message << "]";
  err << "\n";
  return exit_for_status(t.status);
}

template <class F>
int guarded(const char* command, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << command << ": " << e.label << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << command << ": " << e.what() << "\n";
    return is_solver_kind(e.kind()) ? kSolverError : kInputError;
  } catch (const std::exception& e) {
    err << command << ": " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return kOk;
    case RunStatus::MaxIters:
      return kNotConverged;
    default:
      return kSolverError;
  }
}

int cmd_rayleigh_gr(const RunOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("rayleigh-gr", err, [&] {
    const Matrix a = load_symmetric(o.matrix_path);
    const int n = static_cast<int>(a.rows());
    if (o.m < 1 || o.m >= n)
      throw InputError("BadRank", "m = " + std::to_string(o.m) + " must lie in [1, " + std::to_string(n - 1) + "]");
    const NewtonConfig cfg = make_config(o);
    if (o.warm_sweeps < 0) throw InputError("InvalidConfig", "--warm-sweeps must be non-negative");
    OrthoFrame start = gr_start(o, n, o.m);
    if (o.start_path.empty() && o.warm_sweeps > 0) start = warm_start(a, start, o.warm_sweeps, 1e-2);
    const bool specialized = cfg.nu == ChartId::Qr;

    RunReport r;
    r.command = "rayleigh-gr";
    r.config = config_echo(o, specialized ? "algorithm1" : "generic", n, o.m);
    r.config["warm_sweeps"] = o.start_path.empty() ? o.warm_sweeps : 0;
    r.trace = specialized ? run_algorithm1(a, start, cfg) : run_newton(RayleighCost(a), start, cfg);
    attach_rate(r);
    r.extra_residuals["orthogonality"] = orthogonality_residual(r.trace.final_frame);
    return emit(r, o, out, err);
  });
}

int cmd_rayleigh_lg(const RunOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("rayleigh-lg", err, [&] {
    const Matrix h = load_symmetric(o.matrix_path);
    if (h.rows() % 2 != 0)
      throw InputError("DimensionMismatch", "dimension " + std::to_string(h.rows()) + " is odd");
    if (hamiltonian_structure_residual(h) > kTol.input_symmetry)
      throw InputError("InputNotHamiltonianSymmetric",
                       "structure residual " + std::to_string(hamiltonian_structure_residual(h)));
    const int n = static_cast<int>(h.rows()) / 2;
    const HamiltonianRayleighCost cost(h, kTol.input_symmetry);
    const NewtonConfig cfg = make_config(o);
    const SymplecticFrame start = lg_start(o, n);
    const bool specialized = cfg.nu == ChartId::Qr;

    RunReport r;
    r.command = "rayleigh-lg";
    r.config = config_echo(o, specialized ? "algorithm2" : "generic", 2 * n, n);
    r.trace = specialized ? run_algorithm2(cost, start, cfg) : run_newton_lg(cost, start, cfg);
    attach_rate(r);
    r.extra_residuals["symplecticity"] = symplecticity_residual(r.trace.final_frame);
    r.extra_residuals["orthogonality"] = orthogonality_residual(r.trace.final_frame);
    r.extra_residuals["lagrangian"] = lagrangian_residual(r.trace.final_projector);
    return emit(r, o, out, err);
  });
}

int cmd_invariant(const RunOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("invariant", err, [&] {
    const Matrix a = read_matrix_file(o.matrix_path);
    if (a.rows() != a.cols()) throw InputError("DimensionMismatch", "matrix is not square");
    const int n = static_cast<int>(a.rows());
    if (o.m < 1 || o.m >= n)
      throw InputError("BadRank", "m = " + std::to_string(o.m) + " must lie in [1, " + std::to_string(n - 1) + "]");
    const InvariantSolver solver = invariant_solver_from_string(o.solver);
    const NewtonConfig cfg = make_config(o);
    if (o.warm_sweeps < 0) throw InputError("InvalidConfig", "--warm-sweeps must be non-negative");
    OrthoFrame start = gr_start(o, n, o.m);
    if (o.start_path.empty() && o.warm_sweeps > 0) start = warm_start(a, start, o.warm_sweeps, 1e-2);
    const bool specialized = cfg.nu == ChartId::Qr;

    RunReport r;
    r.command = "invariant";
    r.config = config_echo(o, specialized ? "algorithm3" : "generic", n, o.m);
    r.config["warm_sweeps"] = o.start_path.empty() ? o.warm_sweeps : 0;
    r.config["solver"] = o.solver;
    r.trace = specialized ? run_algorithm3(a, start, cfg, solver) : run_newton(InvariantSubspaceCost(a), start, cfg);
    attach_rate(r);
    const Matrix& p = r.trace.final_projector;
    const Matrix i = Matrix::Identity(n, n);
    r.extra_residuals["invariance"] = ((i - p) * a * p).norm();
    r.extra_residuals["orthogonality"] = orthogonality_residual(r.trace.final_frame);
    return emit(r, o, out, err);
  });
}

}  // namespace gnewton::cli
