#include "gnewton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"

namespace gnewton {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::NotAProjector: return "NotAProjector";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::SpectralOverlap: return "SpectralOverlap";
    case ErrorKind::SingularOperator: return "SingularOperator";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square");
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite())
    throw Error(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
}

double inf_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double inner(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

double symmetry_residual(const Matrix& a) {
  require_square(a, "matrix");
  return inf_norm(a - a.transpose()) / std::max(1.0, inf_norm(a));
}

double skew_residual(const Matrix& a) {
  require_square(a, "matrix");
  return inf_norm(a + a.transpose()) / std::max(1.0, inf_norm(a));
}

bool is_symmetric(const Matrix& a, double tol) {
  return a.rows() == a.cols() && symmetry_residual(a) <= tol;
}

double orthogonality_residual(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

Matrix block_diag_identity(int n, int m) {
  Matrix d = Matrix::Zero(n, n);
  d.topLeftCorner(m, m).setIdentity();
  return d;
}

QrFactors qr_positive(const Matrix& m) {
  const Eigen::Index n = m.rows(), k = m.cols();
  if (n < k || k == 0)
    throw Error(ErrorKind::DimensionMismatch, "qr_positive needs rows >= cols > 0");
  require_finite(m, "qr_positive input");
  const double scale = m.norm();
  Matrix r = m;
  Matrix q = Matrix::Identity(n, n);
  for (Eigen::Index j = 0; j < k && j < n - 1; ++j) {
    Vector x = r.col(j).tail(n - j);
    double nx = x.norm();
    if (nx == 0.0) continue;
    double alpha = x(0) >= 0 ? -nx : nx;
    Vector v = x;
    v(0) -= alpha;
    double nv = v.norm();
    if (nv == 0.0) continue;
    v /= nv;
    r.bottomRightCorner(n - j, k - j) -= 2.0 * v * (v.transpose() * r.bottomRightCorner(n - j, k - j));
    q.rightCols(n - j) -= 2.0 * (q.rightCols(n - j) * v) * v.transpose();
    r.col(j).tail(n - j - 1).setZero();
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(r(j, j)) <= kTol.qr_rank * scale)
      throw Error(ErrorKind::SingularInput, "rank deficiency in qr_positive");
    if (r(j, j) < 0) {
      r.row(j) *= -1.0;
      q.col(j) *= -1.0;
    }
  }
  return {q, r.triangularView<Eigen::Upper>()};
}

Matrix cholesky_upper(const Matrix& s) {
  require_square(s, "cholesky_upper input");
  if (symmetry_residual(s) > kTol.symmetry * 1e2)
    throw Error(ErrorKind::NotSymmetric, "cholesky_upper input not symmetric");
  const Eigen::Index n = s.rows();
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = s(i, i);
    for (Eigen::Index k = 0; k < i; ++k) d -= r(k, i) * r(k, i);
    if (!(d > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "non-positive pivot in cholesky_upper");
    r(i, i) = std::sqrt(d);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = s(i, j);
      for (Eigen::Index k = 0; k < i; ++k) v -= r(k, i) * r(k, j);
      r(i, j) = v / r(i, i);
    }
  }
  return r;
}

Matrix upper_triangular_inverse(const Matrix& r) {
  require_square(r, "triangular factor");
  return r.triangularView<Eigen::Upper>().solve(Matrix::Identity(r.rows(), r.cols()));
}

SymEig sym_eig(const Matrix& s) {
  require_square(s, "sym_eig input");
  require_finite(s, "sym_eig input");
  const Eigen::Index n = s.rows();
  Matrix a = symmetrize(s);
  Matrix v = Matrix::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 1e-30 * a.norm();
  bool done = (n <= 1);
  for (int sweep = 0; sweep < kTol.jacobi_max_sweeps && !done; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p), aqq = a(q, q);
        if (std::abs(apq) <= floor || std::abs(apq) <= eps * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
    if (!rotated) done = true;
  }
  if (!done) throw Error(ErrorKind::ConvergenceFailure, "Jacobi sweep budget exceeded");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  SymEig out{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Matrix sym_function(const Matrix& s, const std::function<double(double)>& f) {
  SymEig e = sym_eig(s);
  Vector fv = e.values.unaryExpr(f);
  return e.vectors * fv.asDiagonal() * e.vectors.transpose();
}

namespace {

// cos(sqrt(x)), sin(sqrt(x))/sqrt(x), (cos(sqrt(x)) - 1)/x for x >= 0, accurate near 0.
double cos_root(double x) { return std::cos(std::sqrt(std::max(x, 0.0))); }

double sinc_root(double x) {
  x = std::max(x, 0.0);
  if (x < 1e-8) return 1.0 - x / 6.0;
  double s = std::sqrt(x);
  return std::sin(s) / s;
}

double cosm1_over(double x) {
  x = std::max(x, 0.0);
  if (x < 1e-8) return -0.5 + x / 24.0;
  double h = 0.5 * std::sqrt(x);
  double sh = std::sin(h) / h;
  return -0.5 * sh * sh;
}

}  // namespace

Matrix exp_skew_pair(const Matrix& z) {
  require_finite(z, "Z");
  const Eigen::Index m = z.rows(), k = z.cols(), n = m + k;
  Matrix out = Matrix::Identity(n, n);
  if (m == 0 || k == 0) return out;
  SymEig e = sym_eig(z * z.transpose());
  const Matrix& u = e.vectors;
  Vector c = e.values.unaryExpr([](double x) { return cos_root(x); });
  Vector sc = e.values.unaryExpr([](double x) { return sinc_root(x); });
  Vector cm = e.values.unaryExpr([](double x) { return cosm1_over(x); });
  Matrix top_right = u * sc.asDiagonal() * u.transpose() * z;
  out.topLeftCorner(m, m) = u * c.asDiagonal() * u.transpose();
  out.topRightCorner(m, k) = top_right;
  out.bottomLeftCorner(k, m) = -top_right.transpose();
  Matrix uz = u.transpose() * z;
  out.bottomRightCorner(k, k) += uz.transpose() * cm.asDiagonal() * uz;
  return out;
}

Matrix expm_series(const Matrix& a) {
  require_square(a, "expm input");
  require_finite(a, "expm input");
  const Eigen::Index n = a.rows();
  double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTol.expm_scaling_norm)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTol.expm_scaling_norm)));
  Matrix b = a / std::ldexp(1.0, squarings);
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace gnewton

namespace gnewton {

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix g(rows, cols);
  // fill row by row so the draw order does not depend on storage layout
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = dist(rng);
  return g;
}

Matrix random_symmetric(Eigen::Index n, Rng& rng) { return symmetrize(gaussian_matrix(n, n, rng)); }

}  // namespace gnewton
