#pragma once

#include <cstdint>

#include "gnewton/grassmann.hpp"

namespace gnewton {

// J = [[0, I_n], [-I_n, 0]].
Matrix symplectic_j(int n);

double lagrangian_residual(const Matrix& p);     // ||P J P||_F
double symplecticity_residual(const Matrix& q);  // ||Q^T J Q - J||_F

// Rank-n projector on R^{2n} with P J P = 0.
class LagProjector {
 public:
  explicit LagProjector(const Matrix& p);
  explicit LagProjector(const Projector& p);

  const Projector& projector() const { return p_; }
  const Matrix& matrix() const { return p_.matrix(); }
  int half_dim() const { return p_.rank(); }

 private:
  Projector p_;
};

// Orthogonal and symplectic Theta; the Grassmann frame with m = n.
class SymplecticFrame {
 public:
  explicit SymplecticFrame(const Matrix& theta);

  const Matrix& theta() const { return frame_.theta(); }
  int half_dim() const { return frame_.rank(); }
  const OrthoFrame& as_ortho() const { return frame_; }

  LagProjector projector() const { return LagProjector(frame_.projector_matrix()); }
  Matrix tangent(const Matrix& z) const;  // Z symmetric n x n
  Matrix param(const Matrix& xi) const;   // symmetric part of the off-diagonal block

  SymplecticFrame updated(const Matrix& g, bool force_reorth = false) const;
  SymplecticFrame reorthogonalized() const;

 private:
  struct Trusted {};
  SymplecticFrame(Trusted, OrthoFrame frame) : frame_(std::move(frame)) {}

  OrthoFrame frame_;
};

struct RandomLagProjector {
  LagProjector projector;
  SymplecticFrame frame;
};

Matrix lg_tangent_project(const LagProjector& p, const Matrix& x);

RandomLagProjector random_lag_projector(int n, std::uint64_t seed);
// Frame built from an orthonormal basis Y of the range: Theta^T = [Y, -J Y].
SymplecticFrame lag_frame_from_projector(const LagProjector& p);

Matrix lg_exp_chart_factor(const Matrix& z);
Matrix lg_qr_chart_factor(const Matrix& z);
Matrix lg_cayley_chart_factor(const Matrix& z);
Matrix lg_chart_factor(const Matrix& z, ChartId id);

SymplecticFrame lg_chart_frame(const SymplecticFrame& frame, const Matrix& z, ChartId id);
LagProjector lg_chart(const SymplecticFrame& frame, const Matrix& z, ChartId id);
LagProjector lg_chart_exp(const SymplecticFrame& frame, const Matrix& z);
LagProjector lg_chart_qr(const SymplecticFrame& frame, const Matrix& z);
LagProjector lg_chart_cayley(const SymplecticFrame& frame, const Matrix& z);

}  // namespace gnewton
