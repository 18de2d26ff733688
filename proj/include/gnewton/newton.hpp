#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnewton/costs.hpp"
#include "gnewton/grassmann.hpp"
#include "gnewton/lagrange.hpp"

namespace gnewton {

struct NewtonConfig {
  ChartId mu = ChartId::Exp;  // pull-back chart; does not change g or H, kept for the record
  ChartId nu = ChartId::Qr;   // push-forward chart
  int max_iters = 50;
  double grad_tol = 1e-12;
  double step_tol = 1e-14;
  std::uint64_t seed = 0;
  bool keep_iterates = true;

  void validate() const;  // throws InvalidConfig
};

enum class RunStatus { Converged, MaxIters, SingularHessian, SingularOperator, SpectralOverlap, NoConvergence };

const char* to_string(RunStatus s);

struct IterationRecord {
  int iter = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double step_norm = 0.0;  // Newton step computed at this iterate, ||xi||_F
  std::optional<double> distance;
  double elapsed = 0.0;  // seconds since the start of the run
};

struct NewtonTrace {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::MaxIters;
  std::string message;
  std::vector<Matrix> iterates;  // projector at each record when keep_iterates
  Matrix final_frame;
  Matrix final_projector;
  int rank = 0;
};

struct StepResult {
  OrthoFrame frame;
  Matrix z;
  double step_norm;
};

struct LgStepResult {
  SymplecticFrame frame;
  Matrix z;
  double step_norm;
};

// Generic two-chart step in the m x (n-m) coordinates of the frame.
StepResult newton_step_generic(const CostFunction& cost, const OrthoFrame& frame, const NewtonConfig& config);
// Same on LG(n) with symmetric n x n coordinates.
LgStepResult newton_step_generic_lg(const CostFunction& cost, const SymplecticFrame& frame,
                                    const NewtonConfig& config);

// Gradient vector and Hessian matrix in the coordinate basis used by the generic step.
struct CoordinateModel {
  Vector g;
  Matrix h;
};
CoordinateModel coordinate_model(const CostFunction& cost, const OrthoFrame& frame);
CoordinateModel coordinate_model_lg(const CostFunction& cost, const SymplecticFrame& frame);

enum class InvariantSolver { Direct, Recursive };

const char* to_string(InvariantSolver s);
InvariantSolver invariant_solver_from_string(const std::string& name);

StepResult algorithm1_step(const Matrix& a, const OrthoFrame& frame);
LgStepResult algorithm2_step(const HamiltonianRayleighCost& h, const SymplecticFrame& frame);
StepResult algorithm3_step(const Matrix& a, const OrthoFrame& frame,
                           InvariantSolver solver = InvariantSolver::Direct);

NewtonTrace run_newton(const CostFunction& cost, const OrthoFrame& start, const NewtonConfig& config,
                       const std::optional<Projector>& reference = std::nullopt);
NewtonTrace run_newton_lg(const CostFunction& cost, const SymplecticFrame& start, const NewtonConfig& config,
                          const std::optional<Projector>& reference = std::nullopt);
NewtonTrace run_algorithm1(const Matrix& a, const OrthoFrame& start, const NewtonConfig& config,
                           const std::optional<Projector>& reference = std::nullopt);
NewtonTrace run_algorithm2(const HamiltonianRayleighCost& h, const SymplecticFrame& start,
                           const NewtonConfig& config, const std::optional<Projector>& reference = std::nullopt);
NewtonTrace run_algorithm3(const Matrix& a, const OrthoFrame& start, const NewtonConfig& config,
                           InvariantSolver solver = InvariantSolver::Direct,
                           const std::optional<Projector>& reference = std::nullopt);

struct QuadraticRateEstimate {
  std::vector<double> errors;  // usable tail
  std::vector<double> ratios;  // e_{k+1} / e_k^2
  double slope = 0.0;          // least-squares slope of log e_{k+1} against log e_k
  bool quadratic = false;
};

// Throws InsufficientData with fewer than 3 usable entries.
QuadraticRateEstimate estimate_quadratic_rate(const std::vector<double>& errors);

// Distances to the reference if the trace has them, otherwise to the final
// iterate with the last two entries dropped.
std::vector<double> error_sequence(const NewtonTrace& trace);

// Start frame at geodesic distance eps from the frame's projector, direction seeded.
OrthoFrame perturbed_frame(const OrthoFrame& frame, double eps, std::uint64_t seed);
SymplecticFrame perturbed_frame(const SymplecticFrame& frame, double eps, std::uint64_t seed);

}  // namespace gnewton
