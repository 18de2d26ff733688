#include "gnewton/costs.hpp"

#include <algorithm>

#include "gnewton/config.hpp"
#include "gnewton/errors.hpp"

namespace gnewton {

namespace {

void require_shape(const Matrix& x, int n, const char* what) {
  if (x.rows() != n || x.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has wrong shape");
}

}  // namespace

RayleighCost::RayleighCost(const Matrix& a) {
  require_square(a, "Rayleigh matrix");
  require_finite(a, "Rayleigh matrix");
  if (symmetry_residual(a) > kTol.input_symmetry)
    throw Error(ErrorKind::NotSymmetric, "Rayleigh matrix must be symmetric");
  a_ = symmetrize(a);
}

double RayleighCost::eval(const Matrix& p) const {
  require_shape(p, dim(), "projector");
  return inner(a_, p);
}

Matrix RayleighCost::ambient_gradient(const Matrix& p) const {
  require_shape(p, dim(), "projector");
  return a_;
}

Matrix RayleighCost::ambient_hessian_apply(const Matrix& p, const Matrix& xi) const {
  require_shape(p, dim(), "projector");
  require_shape(xi, dim(), "direction");
  return Matrix::Zero(dim(), dim());
}

InvariantSubspaceCost::InvariantSubspaceCost(const Matrix& a) : a_(a) {
  require_square(a, "matrix");
  require_finite(a, "matrix");
}

double InvariantSubspaceCost::eval(const Matrix& p) const {
  require_shape(p, dim(), "projector");
  // trace form, equal to ||(I - P) A P||^2 on projectors and smooth on all of Sym_n
  return inner((Matrix::Identity(dim(), dim()) - p) * a_ * p, a_);
}

Matrix InvariantSubspaceCost::ambient_gradient(const Matrix& p) const {
  return invariant_cost_ambient(a_, p).gradient;
}

Matrix InvariantSubspaceCost::ambient_hessian_apply(const Matrix& p, const Matrix& xi) const {
  require_shape(p, dim(), "projector");
  require_shape(xi, dim(), "direction");
  return symmetrize(-a_.transpose() * xi * a_ - a_ * xi * a_.transpose());
}

AmbientDerivatives invariant_cost_ambient(const Matrix& a, const Matrix& p) {
  require_square(a, "matrix");
  require_shape(p, static_cast<int>(a.rows()), "projector");
  const Eigen::Index n = a.rows();
  Matrix grad = symmetrize(a.transpose() * (Matrix::Identity(n, n) - p) * a - a * p * a.transpose());
  auto hess = [a](const Matrix& xi) -> Matrix {
    if (xi.rows() != a.rows() || xi.cols() != a.cols())
      throw Error(ErrorKind::DimensionMismatch, "direction has wrong shape");
    return symmetrize(-a.transpose() * xi * a - a * xi * a.transpose());
  };
  return {grad, hess};
}

double hamiltonian_structure_residual(const Matrix& h) {
  require_square(h, "Hamiltonian");
  if (h.rows() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian needs even dimension");
  Matrix j = symplectic_j(static_cast<int>(h.rows() / 2));
  return (j * h * j - h).norm() / std::max(1.0, h.norm());
}

HamiltonianRayleighCost::HamiltonianRayleighCost(const Matrix& h, double tol) {
  require_square(h, "Hamiltonian");
  require_finite(h, "Hamiltonian");
  if (h.rows() % 2 != 0 || h.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian needs even dimension");
  if (symmetry_residual(h) > tol) throw Error(ErrorKind::NotSymmetric, "Hamiltonian must be symmetric");
  if (hamiltonian_structure_residual(h) > tol)
    throw Error(ErrorKind::InvalidInput, "matrix is not of the form [[S, T], [T, -S]]");
  h_ = symmetrize(h);
}

double HamiltonianRayleighCost::eval(const Matrix& p) const {
  require_shape(p, dim(), "projector");
  return inner(h_, p);
}

Matrix HamiltonianRayleighCost::ambient_gradient(const Matrix& p) const {
  require_shape(p, dim(), "projector");
  return h_;
}

Matrix HamiltonianRayleighCost::ambient_hessian_apply(const Matrix& p, const Matrix& xi) const {
  require_shape(p, dim(), "projector");
  require_shape(xi, dim(), "direction");
  return Matrix::Zero(dim(), dim());
}

Matrix riemannian_gradient_gr(const CostFunction& cost, const Projector& p) {
  if (cost.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "cost and projector sizes differ");
  return tangent_project(p, cost.ambient_gradient(p.matrix()));
}

Matrix riemannian_hessian_apply_gr(const CostFunction& cost, const Projector& p, const Matrix& xi) {
  if (cost.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "cost and projector sizes differ");
  require_shape(xi, p.dim(), "direction");
  const Matrix& pm = p.matrix();
  Matrix grad = cost.ambient_gradient(pm);
  Matrix first = tangent_project(p, cost.ambient_hessian_apply(pm, xi));
  return symmetrize(first - commutator(pm, commutator(grad, xi)));
}

Matrix riemannian_gradient_lg(const CostFunction& cost, const LagProjector& p) {
  if (cost.dim() != p.projector().dim())
    throw Error(ErrorKind::DimensionMismatch, "cost and projector sizes differ");
  return lg_tangent_project(p, cost.ambient_gradient(p.matrix()));
}

Matrix riemannian_hessian_apply_lg(const CostFunction& cost, const LagProjector& p, const Matrix& xi) {
  if (cost.dim() != p.projector().dim())
    throw Error(ErrorKind::DimensionMismatch, "cost and projector sizes differ");
  require_shape(xi, p.projector().dim(), "direction");
  const Matrix& pm = p.matrix();
  Matrix grad = cost.ambient_gradient(pm);
  Matrix a = commutator(pm, commutator(grad, xi));
  return lg_tangent_project(p, cost.ambient_hessian_apply(pm, xi)) - lg_tangent_project(p, a);
}

}  // namespace gnewton
