#include "gnewton/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"

namespace gnewton {

const char* to_string(ChartId id) {
  switch (id) {
    case ChartId::Exp: return "exp";
    case ChartId::Qr: return "qr";
    case ChartId::Cayley: return "cayley";
  }
  return "?";
}

ChartId chart_from_string(const std::string& name) {
  if (name == "exp") return ChartId::Exp;
  if (name == "qr") return ChartId::Qr;
  if (name == "cayley") return ChartId::Cayley;
  throw Error(ErrorKind::InvalidConfig, "unknown chart '" + name + "'");
}

double idempotence_residual(const Matrix& p) { return (p * p - p).norm(); }

Projector::Projector(const Matrix& p, int rank) : m_(rank) {
  require_square(p, "projector");
  require_finite(p, "projector");
  const int n = static_cast<int>(p.rows());
  if (rank <= 0 || rank >= n) throw Error(ErrorKind::BadRank, "rank must lie in (0, n)");
  if (symmetry_residual(p) > kTol.projector)
    throw Error(ErrorKind::NotAProjector, "projector not symmetric");
  p_ = symmetrize(p);
  if (idempotence_residual(p_) > kTol.projector || std::abs(p_.trace() - rank) > kTol.projector)
    throw Error(ErrorKind::NotAProjector, "idempotence or trace residual too large");
}

OrthoFrame::OrthoFrame(const Matrix& theta, int rank) : theta_(theta), m_(rank) {
  require_square(theta, "frame");
  require_finite(theta, "frame");
  if (rank <= 0 || rank >= theta.rows()) throw Error(ErrorKind::BadRank, "rank must lie in (0, n)");
  if (orthogonality_residual(theta) > kTol.frame)
    throw Error(ErrorKind::NotAFrame, "frame is not orthogonal");
}

OrthoFrame::OrthoFrame(Trusted, Matrix theta, int rank, int updates)
    : theta_(std::move(theta)), m_(rank), updates_(updates) {}

Matrix OrthoFrame::projector_matrix() const {
  Matrix top = theta_.topRows(m_);
  return symmetrize(top.transpose() * top);
}

Projector OrthoFrame::projector() const { return Projector(projector_matrix(), m_); }

Matrix OrthoFrame::tangent(const Matrix& z) const {
  const int n = dim();
  if (z.rows() != m_ || z.cols() != n - m_)
    throw Error(ErrorKind::DimensionMismatch, "tangent parameter has wrong shape");
  Matrix top = theta_.topRows(m_), bottom = theta_.bottomRows(n - m_);
  Matrix c = top.transpose() * z * bottom;
  return c + c.transpose();
}

Matrix OrthoFrame::param(const Matrix& xi) const {
  const int n = dim();
  if (xi.rows() != n || xi.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "tangent vector has wrong shape");
  Matrix x = to_frame(xi);
  return 0.5 * (x.topRightCorner(m_, n - m_) + x.bottomLeftCorner(n - m_, m_).transpose());
}

OrthoFrame OrthoFrame::updated(const Matrix& g, bool force_reorth) const {
  if (g.rows() != dim() || g.cols() != dim())
    throw Error(ErrorKind::DimensionMismatch, "frame update has wrong shape");
  OrthoFrame next(Trusted{}, g.transpose() * theta_, m_, updates_ + 1);
  if (force_reorth || next.updates_ >= kTol.reorthogonalize_every) return next.reorthogonalized();
  return next;
}

OrthoFrame OrthoFrame::reorthogonalized() const {
  QrFactors f = qr_positive(theta_.transpose());
  return OrthoFrame(Trusted{}, f.q.transpose(), m_, 0);
}

Matrix tangent_project(const Projector& p, const Matrix& x) {
  if (x.rows() != p.dim() || x.cols() != p.dim())
    throw Error(ErrorKind::DimensionMismatch, "tangent_project shape");
  const Matrix& pm = p.matrix();
  return symmetrize(commutator(pm, commutator(pm, x)));
}

double tangent_residual(const Projector& p, const Matrix& xi) {
  return (tangent_project(p, xi) - xi).norm();
}

RandomProjector random_projector(int n, int m, std::uint64_t seed) {
  if (m <= 0 || m >= n) throw Error(ErrorKind::BadRank, "random_projector needs 0 < m < n");
  Rng rng(seed);
  Matrix theta;
  for (;;) {
    try {
      theta = qr_positive(gaussian_matrix(n, n, rng)).q;
      break;
    } catch (const Error&) {
      // singular draw, take the next one
    }
  }
  OrthoFrame frame(theta, m);
  return {frame.projector(), frame};
}

OrthoFrame frame_from_projector(const Projector& p) {
  SymEig e = sym_eig(p.matrix());
  Matrix theta = e.vectors.transpose();
  if (theta.determinant() < 0) theta.row(theta.rows() - 1) *= -1.0;
  OrthoFrame frame(theta, p.rank());
  if ((frame.projector_matrix() - p.matrix()).norm() > 1e-9)
    throw Error(ErrorKind::NotAProjector, "projector spectrum does not split into 1 and 0");
  return frame;
}

Matrix range_basis(const Projector& p) {
  return frame_from_projector(p).theta().topRows(p.rank()).transpose();
}

Projector geodesic(const Projector& p0, const Matrix& xi0, double t) {
  if (xi0.rows() != p0.dim() || xi0.cols() != p0.dim())
    throw Error(ErrorKind::DimensionMismatch, "geodesic direction shape");
  OrthoFrame frame = frame_from_projector(p0);
  return chart_exp(frame, t * frame.param(xi0));
}

namespace {

void require_same_manifold(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim() || p.rank() != q.rank())
    throw Error(ErrorKind::DimensionMismatch, "projectors live on different Grassmannians");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Q expressed in a frame of P.
Matrix in_frame_of(const Projector& p, const Projector& q) {
  return symmetrize(frame_from_projector(p).to_frame(q.matrix()));
}

}  // namespace

double distance(const Projector& p, const Projector& q) {
  require_same_manifold(p, q);
  const int m = p.rank(), n = p.dim();
  Matrix y = frame_from_projector(p).theta() * range_basis(q);
  Matrix y1 = y.topRows(m), y2 = y.bottomRows(n - m);
  Vector lam = sym_eig(y1.transpose() * y1).values;  // descending
  Vector mu = sym_eig(y2.transpose() * y2).values;   // descending, pair reversed
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    double theta = std::atan2(std::sqrt(clamp01(mu(m - 1 - i))), std::sqrt(clamp01(lam(i))));
    s += theta * theta;
  }
  return std::sqrt(2.0 * s);
}

double distance_from_cosines(const Projector& p, const Projector& q) {
  require_same_manifold(p, q);
  const int m = p.rank();
  Vector lam = sym_eig(in_frame_of(p, q).topLeftCorner(m, m)).values;
  double s = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    double a = std::acos(std::sqrt(clamp01(lam(i))));
    s += a * a;
  }
  return std::sqrt(2.0 * s);
}

double distance_from_sines(const Projector& p, const Projector& q) {
  require_same_manifold(p, q);
  const int m = p.rank(), n = p.dim();
  Vector mu = sym_eig(in_frame_of(p, q).bottomRightCorner(n - m, n - m)).values;
  double s = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    double a = std::asin(std::sqrt(clamp01(mu(i))));
    s += a * a;
  }
  return std::sqrt(2.0 * s);
}

double half_squared_distance(const Projector& p, const Matrix& y) {
  if (y.rows() != p.dim() || y.cols() != p.rank())
    throw Error(ErrorKind::DimensionMismatch, "basis has wrong shape");
  Matrix root = sym_function(symmetrize(y.transpose() * p.matrix() * y),
                             [](double x) { return std::sqrt(clamp01(x)); });
  Matrix ac = sym_function(root, [](double x) {
    double a = std::acos(std::clamp(x, -1.0, 1.0));
    return a * a;
  });
  return ac.trace();
}

Matrix exp_chart_factor(const Matrix& z) { return exp_skew_pair(-z); }

Matrix qr_chart_factor(const Matrix& z) {
  const Eigen::Index m = z.rows(), k = z.cols();
  Matrix r11 = cholesky_upper(Matrix::Identity(m, m) + z * z.transpose());
  Matrix r22 = cholesky_upper(Matrix::Identity(k, k) + z.transpose() * z);
  Matrix r11i = upper_triangular_inverse(r11), r22i = upper_triangular_inverse(r22);
  Matrix g(m + k, m + k);
  g << r11i, -z * r22i, z.transpose() * r11i, r22i;
  return g;
}

Matrix qr_chart_factor_householder(const Matrix& z) {
  const Eigen::Index m = z.rows(), k = z.cols();
  Matrix x(m + k, m + k);
  x << Matrix::Identity(m, m), -z, z.transpose(), Matrix::Identity(k, k);
  return qr_positive(x).q;
}

Matrix cayley_chart_factor(const Matrix& z) {
  const Eigen::Index m = z.rows(), k = z.cols();
  Matrix zzt = z * z.transpose(), ztz = z.transpose() * z;
  Matrix im = Matrix::Identity(m, m), ik = Matrix::Identity(k, k);
  Matrix a(m + k, m + k);
  a << im - 0.25 * zzt, -z, z.transpose(), ik - 0.25 * ztz;
  Matrix d = Matrix::Zero(m + k, m + k);
  d.topLeftCorner(m, m) = (im + 0.25 * zzt).llt().solve(im);
  d.bottomRightCorner(k, k) = (ik + 0.25 * ztz).llt().solve(ik);
  return a * d;
}

Matrix cayley(const Matrix& omega) {
  require_square(omega, "Cayley argument");
  const Eigen::Index n = omega.rows();
  Matrix i = Matrix::Identity(n, n);
  Matrix denom = i - 0.5 * omega;
  // (I + w/2)(I - w/2)^{-1}: solve from the right
  return denom.transpose().partialPivLu().solve((i + 0.5 * omega).transpose()).transpose();
}

Matrix chart_factor(const Matrix& z, ChartId id) {
  require_finite(z, "tangent parameter");
  switch (id) {
    case ChartId::Exp: return exp_chart_factor(z);
    case ChartId::Qr: return qr_chart_factor(z);
    case ChartId::Cayley: return cayley_chart_factor(z);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown chart");
}

OrthoFrame chart_frame(const OrthoFrame& frame, const Matrix& z, ChartId id) {
  if (z.rows() != frame.rank() || z.cols() != frame.dim() - frame.rank())
    throw Error(ErrorKind::DimensionMismatch, "tangent parameter has wrong shape");
  return frame.updated(chart_factor(z, id));
}

Projector chart(const OrthoFrame& frame, const Matrix& z, ChartId id) {
  return chart_frame(frame, z, id).projector();
}

Projector chart_exp(const OrthoFrame& frame, const Matrix& z) { return chart(frame, z, ChartId::Exp); }
Projector chart_qr(const OrthoFrame& frame, const Matrix& z) { return chart(frame, z, ChartId::Qr); }
Projector chart_cayley(const OrthoFrame& frame, const Matrix& z) {
  return chart(frame, z, ChartId::Cayley);
}

Matrix chart_second_derivative_check(const OrthoFrame& frame, const Matrix& z, ChartId id, double h) {
  Matrix plus = chart(frame, h * z, id).matrix();
  Matrix minus = chart(frame, -h * z, id).matrix();
  return (plus - 2.0 * frame.projector_matrix() + minus) / (h * h);
}

Matrix chart_second_derivative(const OrthoFrame& frame, const Matrix& z) {
  const int m = frame.rank(), n = frame.dim();
  if (z.rows() != m || z.cols() != n - m)
    throw Error(ErrorKind::DimensionMismatch, "tangent parameter has wrong shape");
  Matrix d = Matrix::Zero(n, n);
  d.topLeftCorner(m, m) = -2.0 * z * z.transpose();
  d.bottomRightCorner(n - m, n - m) = 2.0 * z.transpose() * z;
  return frame.theta().transpose() * d * frame.theta();
}

}  // namespace gnewton
