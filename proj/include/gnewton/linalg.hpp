#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gnewton {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct QrFactors {
  Matrix q;  // n x n orthogonal
  Matrix r;  // n x k upper triangular, positive diagonal
};

// Householder QR with positive diagonal of R. M may be tall (n x k, n >= k);
// Q is always the full n x n factor. Throws SingularInput on rank deficiency.
QrFactors qr_positive(const Matrix& m);

// Upper R with R^T R = S.
Matrix cholesky_upper(const Matrix& s);

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // columns
};

// Cyclic Jacobi.
SymEig sym_eig(const Matrix& s);

// f(S) = V f(Lambda) V^T for symmetric S.
Matrix sym_function(const Matrix& s, const std::function<double(double)>& f);

// exp([[0, Z], [-Z^T, 0]]) for Z of size m x (n-m).
Matrix exp_skew_pair(const Matrix& z);

// Scaling and squaring with a Taylor series.
Matrix expm_series(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix symmetrize(const Matrix& a);
double inner(const Matrix& a, const Matrix& b);  // tr(A^T B)
double symmetry_residual(const Matrix& a);       // relative inf-norm
double skew_residual(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol);
double inf_norm(const Matrix& a);
Matrix upper_triangular_inverse(const Matrix& r);
Matrix block_diag_identity(int n, int m);  // diag(I_m, 0)
double orthogonality_residual(const Matrix& q);  // ||Q^T Q - I||_F

void require_square(const Matrix& a, const char* what);
void require_finite(const Matrix& a, const char* what);

}  // namespace gnewton

#include <random>

namespace gnewton {

using Rng = std::mt19937_64;

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix random_symmetric(Eigen::Index n, Rng& rng);

}  // namespace gnewton
