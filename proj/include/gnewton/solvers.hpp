#pragma once

#include "gnewton/errors.hpp"
#include "gnewton/linalg.hpp"

namespace gnewton {

SpectralGapReport sylvester_gap(const Matrix& a11, const Matrix& a22);
SpectralGapReport lyapunov_gap(const Matrix& a11);

// A11 Z - Z A22 = C for symmetric A11, A22, by diagonalizing both.
Matrix solve_sylvester(const Matrix& a11, const Matrix& a22, const Matrix& c);

// A11 Z + Z A11 = C for symmetric A11.
Matrix solve_lyapunov(const Matrix& a11, const Matrix& c);

// A X - X B = C for arbitrary square A, B via the vectorized system.
Matrix solve_sylvester_dense(const Matrix& a, const Matrix& b, const Matrix& c);

// Partial-pivot LU; throws SingularOperator on a pivot below 1e-12 ||H||.
Vector solve_dense(const Matrix& h, const Vector& g);

struct InvariantBlocks {
  Matrix a11, a12, a21, a22;

  // Blocks of Theta A Theta^T with the leading block m x m.
  static InvariantBlocks from(const Matrix& a_in_frame, int m);
  int m() const { return static_cast<int>(a11.rows()); }
  int k() const { return static_cast<int>(a22.rows()); }
};

// Left side and right side of the linear matrix equation of the invariant-subspace step.
Matrix invariant_newton_operator(const InvariantBlocks& b, const Matrix& z);
Matrix invariant_newton_rhs(const InvariantBlocks& b);

// Column-major vectorized operator, d x d with d = m (n - m).
Matrix invariant_newton_matrix(const InvariantBlocks& b);

Matrix solve_invariant_newton_direct(const InvariantBlocks& b);

struct RecursiveSolve {
  Matrix z;
  int sweeps = 0;
  double last_change = 0.0;
};

// Alternating Sylvester sweeps starting from Z = 0.
RecursiveSolve solve_invariant_newton_recursive(const InvariantBlocks& b, int max_sweeps = 200,
                                                double tol = 1e-14);

}  // namespace gnewton
