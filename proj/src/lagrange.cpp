#include "gnewton/lagrange.hpp"

#include <cmath>

#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"

namespace gnewton {

Matrix symplectic_j(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

double lagrangian_residual(const Matrix& p) {
  require_square(p, "projector");
  if (p.rows() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "odd ambient dimension");
  Matrix j = symplectic_j(static_cast<int>(p.rows() / 2));
  return (p * j * p).norm();
}

double symplecticity_residual(const Matrix& q) {
  require_square(q, "frame");
  if (q.rows() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "odd ambient dimension");
  Matrix j = symplectic_j(static_cast<int>(q.rows() / 2));
  return (q.transpose() * j * q - j).norm();
}

namespace {

int half_of(const Matrix& p) {
  if (p.rows() % 2 != 0 || p.rows() != p.cols())
    throw Error(ErrorKind::DimensionMismatch, "Lagrangian data needs a square even dimension");
  return static_cast<int>(p.rows() / 2);
}

const Projector& checked_lagrangian(const Projector& p) {
  if (2 * p.rank() != p.dim()) throw Error(ErrorKind::BadRank, "Lagrangian projector needs rank n in 2n");
  if (lagrangian_residual(p.matrix()) > kTol.projector)
    throw Error(ErrorKind::NotLagrangian, "P J P is not zero");
  return p;
}

void require_symmetric_param(const Matrix& z) {
  require_square(z, "Lagrangian tangent parameter");
  if (symmetry_residual(z) > kTol.symmetry * 1e2)
    throw Error(ErrorKind::NotSymmetric, "Lagrangian tangent parameter must be symmetric");
}

}  // namespace

LagProjector::LagProjector(const Matrix& p) : p_(checked_lagrangian(Projector(p, half_of(p)))) {}

LagProjector::LagProjector(const Projector& p) : p_(checked_lagrangian(p)) {}

SymplecticFrame::SymplecticFrame(const Matrix& theta) : frame_(theta, half_of(theta)) {
  if (symplecticity_residual(theta) > kTol.frame)
    throw Error(ErrorKind::NotAFrame, "frame is not symplectic");
}

Matrix SymplecticFrame::tangent(const Matrix& z) const {
  require_symmetric_param(z);
  return frame_.tangent(z);
}

Matrix SymplecticFrame::param(const Matrix& xi) const { return symmetrize(frame_.param(xi)); }

SymplecticFrame SymplecticFrame::updated(const Matrix& g, bool force_reorth) const {
  OrthoFrame next = frame_.updated(g);
  SymplecticFrame out(Trusted{}, next);
  if (force_reorth || next.updates_since_reorth() == 0) return out.reorthogonalized();
  return out;
}

SymplecticFrame SymplecticFrame::reorthogonalized() const {
  const int n = half_dim();
  Matrix j = symplectic_j(n);
  // nearest J-commuting matrix, then Newton-Schulz towards orthogonality;
  // both steps keep the [[A, -B], [B, A]] structure
  Matrix t = 0.5 * (theta() - j * theta() * j);
  for (int it = 0; it < 8; ++it) {
    if (orthogonality_residual(t) <= 1e-15) break;
    t = 1.5 * t - 0.5 * t * t.transpose() * t;
  }
  return SymplecticFrame(Trusted{}, OrthoFrame(t, n));
}

Matrix lg_tangent_project(const LagProjector& p, const Matrix& x) {
  const Matrix& pm = p.matrix();
  if (x.rows() != pm.rows() || x.cols() != pm.cols())
    throw Error(ErrorKind::DimensionMismatch, "lg_tangent_project shape");
  Matrix j = symplectic_j(p.half_dim());
  return symmetrize(0.5 * commutator(pm, commutator(pm, j * x * j + x)));
}

RandomLagProjector random_lag_projector(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::BadRank, "random_lag_projector needs n >= 1");
  Rng rng(seed);
  Matrix g = gaussian_matrix(n, n, rng);
  Matrix x = 0.5 * (g - g.transpose());
  Matrix y = random_symmetric(n, rng);
  Matrix gen(2 * n, 2 * n);
  gen << x, -y, y, x;
  SymplecticFrame frame = SymplecticFrame(expm_series(gen)).reorthogonalized();
  return {frame.projector(), frame};
}

SymplecticFrame lag_frame_from_projector(const LagProjector& p) {
  const int n = p.half_dim();
  Matrix y = range_basis(p.projector());
  Matrix thetat(2 * n, 2 * n);
  thetat << y, -symplectic_j(n) * y;
  return SymplecticFrame(thetat.transpose());
}

Matrix lg_exp_chart_factor(const Matrix& z) {
  require_symmetric_param(z);
  const Eigen::Index n = z.rows();
  SymEig e = sym_eig(symmetrize(z));
  Vector c = e.values.array().cos(), s = e.values.array().sin();
  Matrix cz = e.vectors * c.asDiagonal() * e.vectors.transpose();
  Matrix sz = e.vectors * s.asDiagonal() * e.vectors.transpose();
  Matrix g(2 * n, 2 * n);
  g << cz, -sz, sz, cz;
  return g;
}

Matrix lg_qr_chart_factor(const Matrix& z) {
  require_symmetric_param(z);
  const Eigen::Index n = z.rows();
  Matrix zs = symmetrize(z);
  Matrix ri = upper_triangular_inverse(cholesky_upper(Matrix::Identity(n, n) + zs * zs));
  Matrix g(2 * n, 2 * n);
  g << ri, -zs * ri, zs * ri, ri;
  return g;
}

Matrix lg_cayley_chart_factor(const Matrix& z) {
  require_symmetric_param(z);
  const Eigen::Index n = z.rows();
  Matrix zs = symmetrize(z);
  Matrix i = Matrix::Identity(n, n);
  Matrix z2 = zs * zs;
  Matrix d = (i + 0.25 * z2).llt().solve(i);
  Matrix a = (i - 0.25 * z2) * d, b = zs * d;
  Matrix g(2 * n, 2 * n);
  g << a, -b, b, a;
  return g;
}

Matrix lg_chart_factor(const Matrix& z, ChartId id) {
  require_finite(z, "tangent parameter");
  switch (id) {
    case ChartId::Exp: return lg_exp_chart_factor(z);
    case ChartId::Qr: return lg_qr_chart_factor(z);
    case ChartId::Cayley: return lg_cayley_chart_factor(z);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown chart");
}

SymplecticFrame lg_chart_frame(const SymplecticFrame& frame, const Matrix& z, ChartId id) {
  if (z.rows() != frame.half_dim() || z.cols() != frame.half_dim())
    throw Error(ErrorKind::DimensionMismatch, "Lagrangian tangent parameter has wrong shape");
  return frame.updated(lg_chart_factor(z, id));
}

LagProjector lg_chart(const SymplecticFrame& frame, const Matrix& z, ChartId id) {
  return lg_chart_frame(frame, z, id).projector();
}

LagProjector lg_chart_exp(const SymplecticFrame& frame, const Matrix& z) {
  return lg_chart(frame, z, ChartId::Exp);
}
LagProjector lg_chart_qr(const SymplecticFrame& frame, const Matrix& z) {
  return lg_chart(frame, z, ChartId::Qr);
}
LagProjector lg_chart_cayley(const SymplecticFrame& frame, const Matrix& z) {
  return lg_chart(frame, z, ChartId::Cayley);
}

}  // namespace gnewton
