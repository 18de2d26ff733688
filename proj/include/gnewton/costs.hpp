#pragma once

#include <functional>
#include <string>

#include "gnewton/grassmann.hpp"
#include "gnewton/lagrange.hpp"

namespace gnewton {

// Smooth F on symmetric matrices, restricted to the manifold by the callers.
class CostFunction {
 public:
  virtual ~CostFunction() = default;
  virtual int dim() const = 0;
  virtual double eval(const Matrix& p) const = 0;
  virtual Matrix ambient_gradient(const Matrix& p) const = 0;
  virtual Matrix ambient_hessian_apply(const Matrix& p, const Matrix& xi) const = 0;
  virtual std::string name() const = 0;
};

// f(P) = tr(A P)
class RayleighCost : public CostFunction {
 public:
  explicit RayleighCost(const Matrix& a);
  const Matrix& matrix() const { return a_; }
  int dim() const override { return static_cast<int>(a_.rows()); }
  double eval(const Matrix& p) const override;
  Matrix ambient_gradient(const Matrix& p) const override;
  Matrix ambient_hessian_apply(const Matrix& p, const Matrix& xi) const override;
  std::string name() const override { return "rayleigh"; }

 private:
  Matrix a_;
};

// f(P) = ||(I - P) A P||_F^2 = tr((I - P) A P A^T), A arbitrary square.
class InvariantSubspaceCost : public CostFunction {
 public:
  explicit InvariantSubspaceCost(const Matrix& a);
  const Matrix& matrix() const { return a_; }
  int dim() const override { return static_cast<int>(a_.rows()); }
  double eval(const Matrix& p) const override;
  Matrix ambient_gradient(const Matrix& p) const override;
  Matrix ambient_hessian_apply(const Matrix& p, const Matrix& xi) const override;
  std::string name() const override { return "invariant-subspace"; }

 private:
  Matrix a_;
};

// f(P) = tr(H P) with H = [[S, T], [T, -S]], S and T symmetric.
class HamiltonianRayleighCost : public CostFunction {
 public:
  explicit HamiltonianRayleighCost(const Matrix& h, double tol = 1e-10);
  const Matrix& matrix() const { return h_; }
  int dim() const override { return static_cast<int>(h_.rows()); }
  int half_dim() const { return dim() / 2; }
  double eval(const Matrix& p) const override;
  Matrix ambient_gradient(const Matrix& p) const override;
  Matrix ambient_hessian_apply(const Matrix& p, const Matrix& xi) const override;
  std::string name() const override { return "hamiltonian-rayleigh"; }

 private:
  Matrix h_;
};

// ||J H J - H||_F / max(1, ||H||_F)
double hamiltonian_structure_residual(const Matrix& h);

struct AmbientDerivatives {
  Matrix gradient;
  std::function<Matrix(const Matrix&)> hessian;
};

AmbientDerivatives invariant_cost_ambient(const Matrix& a, const Matrix& p);

Matrix riemannian_gradient_gr(const CostFunction& cost, const Projector& p);
Matrix riemannian_hessian_apply_gr(const CostFunction& cost, const Projector& p, const Matrix& xi);
Matrix riemannian_gradient_lg(const CostFunction& cost, const LagProjector& p);
Matrix riemannian_hessian_apply_lg(const CostFunction& cost, const LagProjector& p, const Matrix& xi);

}  // namespace gnewton
