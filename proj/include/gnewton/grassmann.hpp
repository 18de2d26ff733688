#pragma once

#include <cstdint>
#include <string>

#include "gnewton/linalg.hpp"

namespace gnewton {

enum class ChartId { Exp, Qr, Cayley };

const char* to_string(ChartId id);
ChartId chart_from_string(const std::string& name);  // "exp" | "qr" | "cayley"

double idempotence_residual(const Matrix& p);  // ||P^2 - P||_F

// Rank-m symmetric projector. Construction validates.
class Projector {
 public:
  Projector(const Matrix& p, int rank);

  const Matrix& matrix() const { return p_; }
  int dim() const { return static_cast<int>(p_.rows()); }
  int rank() const { return m_; }

 private:
  Matrix p_;
  int m_;
};

// Orthogonal Theta with P = Theta^T diag(I_m, 0) Theta.
class OrthoFrame {
 public:
  OrthoFrame(const Matrix& theta, int rank);

  const Matrix& theta() const { return theta_; }
  int dim() const { return static_cast<int>(theta_.rows()); }
  int rank() const { return m_; }

  Matrix projector_matrix() const;
  Projector projector() const;

  // xi = Theta^T [[0, Z], [Z^T, 0]] Theta and its inverse on tangent vectors.
  Matrix tangent(const Matrix& z) const;
  Matrix param(const Matrix& xi) const;
  Matrix to_frame(const Matrix& x) const { return theta_ * x * theta_.transpose(); }

  // Theta' = G^T Theta; re-orthogonalizes every kTol.reorthogonalize_every updates
  // or right away when force_reorth is set.
  OrthoFrame updated(const Matrix& g, bool force_reorth = false) const;
  OrthoFrame reorthogonalized() const;
  int updates_since_reorth() const { return updates_; }

 private:
  struct Trusted {};
  OrthoFrame(Trusted, Matrix theta, int rank, int updates);

  Matrix theta_;
  int m_;
  int updates_ = 0;
};

struct RandomProjector {
  Projector projector;
  OrthoFrame frame;
};

Matrix tangent_project(const Projector& p, const Matrix& x);
double tangent_residual(const Projector& p, const Matrix& xi);  // ||ad_P^2 xi - xi||_F

RandomProjector random_projector(int n, int m, std::uint64_t seed);
OrthoFrame frame_from_projector(const Projector& p);

// Orthonormal n x m basis of the range of P.
Matrix range_basis(const Projector& p);

Projector geodesic(const Projector& p0, const Matrix& xi0, double t);

// Principal angles from both cosines and sines, so small and large angles
// are both resolved.
double distance(const Projector& p, const Projector& q);
double distance_from_cosines(const Projector& p, const Projector& q);
double distance_from_sines(const Projector& p, const Projector& q);
// tr(arccos^2((Y^T P Y)^{1/2})) for an orthonormal basis Y of the other subspace.
double half_squared_distance(const Projector& p, const Matrix& y);

// Frame-level factors G with chart(frame, Z) = Theta^T G diag(I,0) G^T Theta.
Matrix exp_chart_factor(const Matrix& z);
Matrix qr_chart_factor(const Matrix& z);       // closed form via Cholesky factors
Matrix qr_chart_factor_householder(const Matrix& z);
Matrix cayley_chart_factor(const Matrix& z);   // closed block form
Matrix cayley(const Matrix& omega);            // (I + omega/2)(I - omega/2)^{-1}
Matrix chart_factor(const Matrix& z, ChartId id);

OrthoFrame chart_frame(const OrthoFrame& frame, const Matrix& z, ChartId id);
Projector chart(const OrthoFrame& frame, const Matrix& z, ChartId id);
Projector chart_exp(const OrthoFrame& frame, const Matrix& z);
Projector chart_qr(const OrthoFrame& frame, const Matrix& z);
Projector chart_cayley(const OrthoFrame& frame, const Matrix& z);

// Central second difference of eps -> chart(eps Z) at 0.
Matrix chart_second_derivative_check(const OrthoFrame& frame, const Matrix& z, ChartId id,
                                     double h = 1e-3);
// Theta^T diag(-2 Z Z^T, 2 Z^T Z) Theta, shared by all three charts.
Matrix chart_second_derivative(const OrthoFrame& frame, const Matrix& z);

}  // namespace gnewton
