#include "gnewton/newton.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"
#include "gnewton/solvers.hpp"

namespace gnewton {

void NewtonConfig::validate() const {
  if (max_iters < 1) throw Error(ErrorKind::InvalidConfig, "max_iters must be at least 1");
  if (!(grad_tol > 0.0) || !(step_tol > 0.0))
    throw Error(ErrorKind::InvalidConfig, "tolerances must be positive");
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIters: return "MaxIters";
    case RunStatus::SingularHessian: return "SingularHessian";
    case RunStatus::SingularOperator: return "SingularOperator";
    case RunStatus::SpectralOverlap: return "SpectralOverlap";
    case RunStatus::NoConvergence: return "NoConvergence";
  }
  return "?";
}

const char* to_string(InvariantSolver s) { return s == InvariantSolver::Direct ? "direct" : "recursive"; }

InvariantSolver invariant_solver_from_string(const std::string& name) {
  if (name == "direct") return InvariantSolver::Direct;
  if (name == "recursive") return InvariantSolver::Recursive;
  throw Error(ErrorKind::InvalidConfig, "unknown solver '" + name + "'");
}

CoordinateModel coordinate_model(const CostFunction& cost, const OrthoFrame& frame) {
  const int n = frame.dim(), m = frame.rank(), k = n - m, d = m * k;
  Projector p = frame.projector();
  auto coords = [&](const Matrix& x) {
    Matrix xf = frame.to_frame(x);
    Matrix c = xf.topRightCorner(m, k) + xf.bottomLeftCorner(k, m).transpose();
    return Vector(Eigen::Map<const Vector>(c.data(), d));
  };
  CoordinateModel model{coords(riemannian_gradient_gr(cost, p)), Matrix(d, d)};
  for (int j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(m, k);
    e(j % m, j / m) = 1.0;
    model.h.col(j) = coords(riemannian_hessian_apply_gr(cost, p, frame.tangent(e)));
  }
  return model;
}

namespace {

std::vector<Matrix> symmetric_basis(int n) {
  std::vector<Matrix> basis;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r <= c; ++r) {
      Matrix s = Matrix::Zero(n, n);
      s(r, c) = s(c, r) = 1.0;
      basis.push_back(s);
    }
  return basis;
}

}  // namespace

CoordinateModel coordinate_model_lg(const CostFunction& cost, const SymplecticFrame& frame) {
  const int n = frame.half_dim();
  LagProjector p = frame.projector();
  std::vector<Matrix> basis = symmetric_basis(n);
  const int d = static_cast<int>(basis.size());
  std::vector<Matrix> dirs;
  for (const Matrix& s : basis) dirs.push_back(frame.tangent(s));
  auto coords = [&](const Matrix& x) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = inner(x, dirs[i]);
    return v;
  };
  CoordinateModel model{coords(riemannian_gradient_lg(cost, p)), Matrix(d, d)};
  for (int j = 0; j < d; ++j) model.h.col(j) = coords(riemannian_hessian_apply_lg(cost, p, dirs[j]));
  return model;
}

StepResult newton_step_generic(const CostFunction& cost, const OrthoFrame& frame, const NewtonConfig& config) {
  if (cost.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "cost and frame sizes differ");
  const int m = frame.rank(), k = frame.dim() - m;
  CoordinateModel model = coordinate_model(cost, frame);
  Vector z;
  try {
    z = solve_dense(model.h, -model.g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularOperator)
      throw Error(ErrorKind::SingularOperator, "Riemannian Hessian is singular");
    throw;
  }
  Matrix zm = Eigen::Map<const Matrix>(z.data(), m, k);
  return {chart_frame(frame, zm, config.nu), zm, std::sqrt(2.0) * zm.norm()};
}

LgStepResult newton_step_generic_lg(const CostFunction& cost, const SymplecticFrame& frame,
                                    const NewtonConfig& config) {
  const int n = frame.half_dim();
  if (cost.dim() != 2 * n) throw Error(ErrorKind::DimensionMismatch, "cost and frame sizes differ");
  CoordinateModel model = coordinate_model_lg(cost, frame);
  Vector z = solve_dense(model.h, -model.g);
  std::vector<Matrix> basis = symmetric_basis(n);
  Matrix zm = Matrix::Zero(n, n);
  for (size_t i = 0; i < basis.size(); ++i) zm += z(static_cast<Eigen::Index>(i)) * basis[i];
  return {lg_chart_frame(frame, zm, config.nu), zm, std::sqrt(2.0) * zm.norm()};
}

StepResult algorithm1_step(const Matrix& a, const OrthoFrame& frame) {
  if (a.rows() != frame.dim() || a.cols() != frame.dim())
    throw Error(ErrorKind::DimensionMismatch, "matrix and frame sizes differ");
  InvariantBlocks b = InvariantBlocks::from(symmetrize(frame.to_frame(a)), frame.rank());
  Matrix z = solve_sylvester(b.a11, b.a22, b.a12);
  return {frame.updated(qr_chart_factor(z), true), z, std::sqrt(2.0) * z.norm()};
}

LgStepResult algorithm2_step(const HamiltonianRayleighCost& h, const SymplecticFrame& frame) {
  const int n = frame.half_dim();
  if (h.dim() != 2 * n) throw Error(ErrorKind::DimensionMismatch, "matrix and frame sizes differ");
  InvariantBlocks b = InvariantBlocks::from(symmetrize(frame.as_ortho().to_frame(h.matrix())), n);
  Matrix z = symmetrize(solve_lyapunov(symmetrize(b.a11), symmetrize(b.a12)));
  return {frame.updated(lg_qr_chart_factor(z), true), z, std::sqrt(2.0) * z.norm()};
}

StepResult algorithm3_step(const Matrix& a, const OrthoFrame& frame, InvariantSolver solver) {
  if (a.rows() != frame.dim() || a.cols() != frame.dim())
    throw Error(ErrorKind::DimensionMismatch, "matrix and frame sizes differ");
  InvariantBlocks b = InvariantBlocks::from(frame.to_frame(a), frame.rank());
  Matrix z_eq = solver == InvariantSolver::Direct ? solve_invariant_newton_direct(b)
                                                  : solve_invariant_newton_recursive(b).z;
  // the equation is posed for the opposite sign of the tangent parameter
  Matrix z = -z_eq;
  return {frame.updated(qr_chart_factor(z), true), z, std::sqrt(2.0) * z.norm()};
}

namespace {

const OrthoFrame& ortho(const OrthoFrame& f) { return f; }
const OrthoFrame& ortho(const SymplecticFrame& f) { return f.as_ortho(); }

struct Evaluation {
  double cost;
  double grad_norm;
};

template <class Frame, class Eval, class Step>
NewtonTrace run_loop(Frame frame, const NewtonConfig& cfg, const std::optional<Projector>& ref,
                     RunStatus singular_status, Eval eval, Step step) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  NewtonTrace tr;
  tr.rank = ortho(frame).rank();
  if (ref && (ref->dim() != ortho(frame).dim() || ref->rank() != tr.rank))
    throw Error(ErrorKind::DimensionMismatch, "reference projector does not match the start");
  for (int k = 0;; ++k) {
    Projector p = ortho(frame).projector();
    IterationRecord rec;
    rec.iter = k;
    Evaluation ev = eval(frame, p);
    rec.cost = ev.cost;
    rec.grad_norm = ev.grad_norm;
    if (ref) rec.distance = distance(*ref, p);
    if (cfg.keep_iterates) tr.iterates.push_back(p.matrix());
    tr.final_frame = ortho(frame).theta();
    tr.final_projector = p.matrix();

    std::optional<decltype(step(frame))> s;
    std::optional<RunStatus> failed;
    try {
      s.emplace(step(frame));
      rec.step_norm = s->step_norm;
    } catch (const SpectralOverlapError& e) {
      failed = RunStatus::SpectralOverlap;
      tr.message = e.what();
    } catch (const NoConvergenceError& e) {
      failed = RunStatus::NoConvergence;
      tr.message = e.what();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularOperator) throw;
      failed = singular_status;
      tr.message = e.what();
    }
    rec.elapsed = std::chrono::duration<double>(clock::now() - t0).count();
    tr.records.push_back(rec);

    if (failed) {
      tr.status = *failed;
      break;
    }
    if (rec.grad_norm <= cfg.grad_tol) {
      tr.status = RunStatus::Converged;
      tr.message = "gradient norm below tolerance";
      break;
    }
    if (s->step_norm <= cfg.step_tol) {
      tr.status = RunStatus::Converged;
      tr.message = "Newton step below tolerance";
      break;
    }
    if (k >= cfg.max_iters) {
      tr.status = RunStatus::MaxIters;
      tr.message = "iteration budget exhausted";
      break;
    }
    if (!s->z.allFinite()) {
      tr.status = RunStatus::NoConvergence;
      tr.message = "non-finite Newton step";
      break;
    }
    frame = s->frame;
  }
  return tr;
}

}  // namespace

NewtonTrace run_newton(const CostFunction& cost, const OrthoFrame& start, const NewtonConfig& config,
                       const std::optional<Projector>& reference) {
  return run_loop(
      start, config, reference, RunStatus::SingularHessian,
      [&](const OrthoFrame&, const Projector& p) {
        return Evaluation{cost.eval(p.matrix()), riemannian_gradient_gr(cost, p).norm()};
      },
      [&](const OrthoFrame& f) { return newton_step_generic(cost, f, config); });
}

NewtonTrace run_newton_lg(const CostFunction& cost, const SymplecticFrame& start, const NewtonConfig& config,
                          const std::optional<Projector>& reference) {
  return run_loop(
      start, config, reference, RunStatus::SingularHessian,
      [&](const SymplecticFrame&, const Projector& p) {
        return Evaluation{cost.eval(p.matrix()), riemannian_gradient_lg(cost, LagProjector(p)).norm()};
      },
      [&](const SymplecticFrame& f) { return newton_step_generic_lg(cost, f, config); });
}

NewtonTrace run_algorithm1(const Matrix& a, const OrthoFrame& start, const NewtonConfig& config,
                           const std::optional<Projector>& reference) {
  RayleighCost cost(a);
  return run_loop(
      start, config, reference, RunStatus::SingularOperator,
      [&](const OrthoFrame&, const Projector& p) {
        return Evaluation{cost.eval(p.matrix()), riemannian_gradient_gr(cost, p).norm()};
      },
      [&](const OrthoFrame& f) { return algorithm1_step(cost.matrix(), f); });
}

NewtonTrace run_algorithm2(const HamiltonianRayleighCost& h, const SymplecticFrame& start,
                           const NewtonConfig& config, const std::optional<Projector>& reference) {
  return run_loop(
      start, config, reference, RunStatus::SingularOperator,
      [&](const SymplecticFrame&, const Projector& p) {
        return Evaluation{h.eval(p.matrix()), riemannian_gradient_lg(h, LagProjector(p)).norm()};
      },
      [&](const SymplecticFrame& f) { return algorithm2_step(h, f); });
}

NewtonTrace run_algorithm3(const Matrix& a, const OrthoFrame& start, const NewtonConfig& config,
                           InvariantSolver solver, const std::optional<Projector>& reference) {
  InvariantSubspaceCost cost(a);
  return run_loop(
      start, config, reference, RunStatus::SingularOperator,
      [&](const OrthoFrame&, const Projector& p) {
        return Evaluation{cost.eval(p.matrix()), riemannian_gradient_gr(cost, p).norm()};
      },
      [&](const OrthoFrame& f) { return algorithm3_step(a, f, solver); });
}

QuadraticRateEstimate estimate_quadratic_rate(const std::vector<double>& errors) {
  const double floor = 10.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> head;
  for (double e : errors) {
    if (!(e > floor) || !std::isfinite(e)) break;
    head.push_back(e);
  }
  size_t start = head.empty() ? 0 : head.size() - 1;
  while (start > 0 && head[start - 1] > head[start]) --start;
  QuadraticRateEstimate est;
  est.errors.assign(head.begin() + static_cast<std::ptrdiff_t>(start), head.end());
  if (est.errors.size() < 3)
    throw Error(ErrorKind::InsufficientData, "fewer than 3 usable error entries");

  const size_t r = est.errors.size() - 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < r; ++i) {
    double e0 = est.errors[i], e1 = est.errors[i + 1];
    est.ratios.push_back(e1 / (e0 * e0));
    double x = std::log(e0), y = std::log(e1);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nr = static_cast<double>(r);
  const double denom = nr * sxx - sx * sx;
  est.slope = denom != 0.0 ? (nr * sxy - sx * sy) / denom : 0.0;

  // ratios may shrink (faster than quadratic) but must not grow by more than 10x
  bool bounded = true;
  for (size_t i = 0; i < est.ratios.size(); ++i)
    for (size_t j = i + 1; j < est.ratios.size(); ++j)
      if (est.ratios[j] > 10.0 * est.ratios[i]) bounded = false;
  est.quadratic = bounded && est.slope >= 1.7;
  return est;
}

std::vector<double> error_sequence(const NewtonTrace& trace) {
  std::vector<double> errors;
  bool have_reference = !trace.records.empty();
  for (const IterationRecord& r : trace.records) have_reference = have_reference && r.distance.has_value();
  if (have_reference) {
    for (const IterationRecord& r : trace.records) errors.push_back(*r.distance);
    return errors;
  }
  if (trace.iterates.size() < 3) return errors;
  Projector last(trace.iterates.back(), trace.rank);
  for (size_t i = 0; i + 2 < trace.iterates.size(); ++i)
    errors.push_back(distance(Projector(trace.iterates[i], trace.rank), last));
  return errors;
}

OrthoFrame perturbed_frame(const OrthoFrame& frame, double eps, std::uint64_t seed) {
  Rng rng(seed);
  Matrix z = gaussian_matrix(frame.rank(), frame.dim() - frame.rank(), rng);
  z *= eps / (std::sqrt(2.0) * z.norm());
  return chart_frame(frame, z, ChartId::Exp).reorthogonalized();
}

SymplecticFrame perturbed_frame(const SymplecticFrame& frame, double eps, std::uint64_t seed) {
  Rng rng(seed);
  Matrix z = random_symmetric(frame.half_dim(), rng);
  z *= eps / (std::sqrt(2.0) * z.norm());
  return lg_chart_frame(frame, z, ChartId::Exp).reorthogonalized();
}

}  // namespace gnewton
