#include "gnewton/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gnewton/config.hpp"

namespace gnewton {

namespace {

void require_symmetric(const Matrix& a, const char* what) {
  require_square(a, what);
  if (symmetry_residual(a) > kTol.symmetry * 1e2)
    throw Error(ErrorKind::NotSymmetric, std::string(what) + " must be symmetric");
}

double spectral_scale(const Vector& a, const Vector& b) {
  double s = 0.0;
  if (a.size()) s = std::max(s, a.cwiseAbs().maxCoeff());
  if (b.size()) s = std::max(s, b.cwiseAbs().maxCoeff());
  return s;
}

SpectralGapReport gap_report(const Vector& lam, const Vector& mu, double sign) {
  SpectralGapReport r;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    for (Eigen::Index j = 0; j < mu.size(); ++j)
      r.min_gap = std::min(r.min_gap, std::abs(lam(i) + sign * mu(j)));
  r.threshold = kTol.spectral_gap * spectral_scale(lam, mu);
  r.solvable = r.min_gap > r.threshold;
  return r;
}

Matrix divide_spectral(const Matrix& c_hat, const Vector& lam, const Vector& mu, double sign) {
  Matrix z(c_hat.rows(), c_hat.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = c_hat(i, j) / (lam(i) + sign * mu(j));
  return z;
}

Matrix vec_to_matrix(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Vector matrix_to_vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

SpectralGapReport sylvester_gap(const Matrix& a11, const Matrix& a22) {
  require_symmetric(a11, "A11");
  require_symmetric(a22, "A22");
  return gap_report(sym_eig(a11).values, sym_eig(a22).values, -1.0);
}

SpectralGapReport lyapunov_gap(const Matrix& a11) {
  require_symmetric(a11, "A11");
  Vector lam = sym_eig(a11).values;
  return gap_report(lam, lam, 1.0);
}

Matrix solve_sylvester(const Matrix& a11, const Matrix& a22, const Matrix& c) {
  require_symmetric(a11, "A11");
  require_symmetric(a22, "A22");
  if (c.rows() != a11.rows() || c.cols() != a22.rows())
    throw Error(ErrorKind::DimensionMismatch, "Sylvester right side has wrong shape");
  SymEig e1 = sym_eig(a11), e2 = sym_eig(a22);
  SpectralGapReport r = gap_report(e1.values, e2.values, -1.0);
  if (!r.solvable) throw SpectralOverlapError(r, "A11 and A22 share (nearly) an eigenvalue");
  Matrix c_hat = e1.vectors.transpose() * c * e2.vectors;
  return e1.vectors * divide_spectral(c_hat, e1.values, e2.values, -1.0) * e2.vectors.transpose();
}

Matrix solve_lyapunov(const Matrix& a11, const Matrix& c) {
  require_symmetric(a11, "A11");
  if (c.rows() != a11.rows() || c.cols() != a11.cols())
    throw Error(ErrorKind::DimensionMismatch, "Lyapunov right side has wrong shape");
  SymEig e = sym_eig(a11);
  SpectralGapReport r = gap_report(e.values, e.values, 1.0);
  if (!r.solvable) throw SpectralOverlapError(r, "two eigenvalues of A11 sum to (nearly) zero");
  Matrix c_hat = e.vectors.transpose() * c * e.vectors;
  Matrix z = e.vectors * divide_spectral(c_hat, e.values, e.values, 1.0) * e.vectors.transpose();
  if (symmetry_residual(c) <= kTol.symmetry) z = symmetrize(z);
  return z;
}

Vector solve_dense(const Matrix& h, const Vector& g) {
  require_square(h, "dense system");
  if (g.size() != h.rows()) throw Error(ErrorKind::DimensionMismatch, "right side length");
  const Eigen::Index d = h.rows();
  const double limit = kTol.dense_pivot * inf_norm(h);
  Matrix lu = h;
  Vector x = g;
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index piv;
    double best = lu.col(k).tail(d - k).cwiseAbs().maxCoeff(&piv);
    piv += k;
    if (!(best > limit)) throw Error(ErrorKind::SingularOperator, "pivot below tolerance");
    if (piv != k) {
      lu.row(k).swap(lu.row(piv));
      std::swap(x(k), x(piv));
    }
    for (Eigen::Index i = k + 1; i < d; ++i) {
      double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      lu.row(i).tail(d - k) -= f * lu.row(k).tail(d - k);
      x(i) -= f * x(k);
    }
  }
  for (Eigen::Index k = d - 1; k >= 0; --k) {
    double s = x(k);
    for (Eigen::Index j = k + 1; j < d; ++j) s -= lu(k, j) * x(j);
    x(k) = s / lu(k, k);
  }
  return x;
}

Matrix solve_sylvester_dense(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_square(a, "A");
  require_square(b, "B");
  if (c.rows() != a.rows() || c.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "Sylvester right side has wrong shape");
  Eigen::EigenSolver<Matrix> ea(a, false), eb(b, false);
  SpectralGapReport r;
  r.min_gap = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    scale = std::max(scale, std::abs(ea.eigenvalues()(i)));
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      r.min_gap = std::min(r.min_gap, std::abs(ea.eigenvalues()(i) - eb.eigenvalues()(j)));
  }
  for (Eigen::Index j = 0; j < b.rows(); ++j) scale = std::max(scale, std::abs(eb.eigenvalues()(j)));
  r.threshold = kTol.spectral_gap * scale;
  r.solvable = r.min_gap > r.threshold;
  if (!r.solvable) throw SpectralOverlapError(r, "coefficient spectra overlap");
  const Eigen::Index m = a.rows(), k = b.rows();
  // vec(A X - X B) = (I (x) A - B^T (x) I) vec X
  Matrix kron = Matrix::Zero(m * k, m * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    kron.block(j * m, j * m, m, m) += a;
    for (Eigen::Index l = 0; l < k; ++l)
      kron.block(j * m, l * m, m, m) -= b(l, j) * Matrix::Identity(m, m);
  }
  return vec_to_matrix(solve_dense(kron, matrix_to_vec(c)), m, k);
}

InvariantBlocks InvariantBlocks::from(const Matrix& a, int m) {
  require_square(a, "matrix");
  const int n = static_cast<int>(a.rows());
  if (m <= 0 || m >= n) throw Error(ErrorKind::BadRank, "block split needs 0 < m < n");
  return {a.topLeftCorner(m, m), a.topRightCorner(m, n - m), a.bottomLeftCorner(n - m, m),
          a.bottomRightCorner(n - m, n - m)};
}

Matrix invariant_newton_operator(const InvariantBlocks& b, const Matrix& z) {
  if (z.rows() != b.m() || z.cols() != b.k())
    throw Error(ErrorKind::DimensionMismatch, "parameter has wrong shape");
  Matrix y = b.a11.transpose() * z - z * b.a22.transpose();
  return b.a11 * y - y * b.a22 - b.a21.transpose() * (z.transpose() * b.a12 + b.a21 * z) -
         (b.a12 * z.transpose() + z * b.a21) * b.a21.transpose();
}

Matrix invariant_newton_rhs(const InvariantBlocks& b) {
  return b.a21.transpose() * b.a22 - b.a11 * b.a21.transpose();
}

Matrix invariant_newton_matrix(const InvariantBlocks& b) {
  const int m = b.m(), k = b.k(), d = m * k;
  Matrix op(d, d);
  for (int j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(m, k);
    e(j % m, j / m) = 1.0;
    op.col(j) = matrix_to_vec(invariant_newton_operator(b, e));
  }
  return op;
}

Matrix solve_invariant_newton_direct(const InvariantBlocks& b) {
  Matrix op = invariant_newton_matrix(b);
  Eigen::JacobiSVD<Matrix> svd(op);
  const Vector& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0, smin = s.size() ? s(s.size() - 1) : 0.0;
  // the operator is quadratic in A, so measure smin against ||A||^2 as well as smax
  const double a_norm = std::sqrt(b.a11.squaredNorm() + b.a12.squaredNorm() + b.a21.squaredNorm() +
                                  b.a22.squaredNorm());
  const double scale = std::max(smax, a_norm * a_norm);
  if (!(smin > 0.0) || scale / smin > kTol.condition_limit)
    throw Error(ErrorKind::SingularOperator, "linear operator of the Newton step is (nearly) singular");
  Vector z = solve_dense(op, matrix_to_vec(invariant_newton_rhs(b)));
  return vec_to_matrix(z, b.m(), b.k());
}

RecursiveSolve solve_invariant_newton_recursive(const InvariantBlocks& b, int max_sweeps, double tol) {
  if (max_sweeps < 1) throw Error(ErrorKind::InvalidConfig, "max_sweeps must be positive");
  const Matrix constant = invariant_newton_rhs(b);
  RecursiveSolve out;
  out.z = Matrix::Zero(b.m(), b.k());
  Matrix a11t = b.a11.transpose(), a22t = b.a22.transpose();
  const double a2 = b.a11.squaredNorm() + b.a12.squaredNorm() + b.a21.squaredNorm() + b.a22.squaredNorm();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const Matrix& zp = out.z;
    Matrix rhs = b.a21.transpose() * (zp.transpose() * b.a12 + b.a21 * zp) +
                 (b.a12 * zp.transpose() + zp * b.a21) * b.a21.transpose() + constant;
    Matrix x = solve_sylvester_dense(b.a11, b.a22, rhs);
    Matrix z = solve_sylvester_dense(a11t, a22t, x);
    out.last_change = (z - out.z).norm();
    out.z = z;
    out.sweeps = sweep;
    if (out.last_change <= tol * std::max(out.z.norm(), std::numeric_limits<double>::min())) return out;
    double residual = (invariant_newton_operator(b, out.z) - constant).norm();
    if (residual <= 1e-12 * (a2 * out.z.norm() + constant.norm())) return out;
    if (!out.z.allFinite()) break;
  }
  throw NoConvergenceError(out.last_change, out.sweeps, "recursive sweeps did not converge");
}

}  // namespace gnewton
