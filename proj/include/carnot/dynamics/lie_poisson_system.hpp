#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "carnot/polynomial.hpp"

namespace carnot::dynamics {

// Exact polynomial compiled to a flat list of (coefficient, factors) for
// double evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  template <class Derived>
  double operator()(const Eigen::MatrixBase<Derived>& x) const {
    double total = 0;
    for (std::size_t t = 0; t < coefficients_.size(); ++t) {
      double v = coefficients_[t];
      for (const auto& [var, e] : factors_[t])
        for (int i = 0; i < e; ++i) v *= x[var];
      total += v;
    }
    return total;
  }

  bool is_zero() const { return coefficients_.empty(); }

 private:
  std::vector<double> coefficients_;
  std::vector<std::vector<std::pair<int, int>>> factors_;
};

// Lie-Poisson flow on the dual of a Lie algebra: right-hand sides
// e_i' = {e_i, H} and their Jacobian are derived symbolically and compiled.
// Audit columns are H followed by the algebra's declared Casimirs.
class LiePoissonSystem {
 public:
  LiePoissonSystem(AlgebraPtr algebra, const Polynomial& hamiltonian);
  // H = 1/2 |p restricted to layer 1|^2.
  static LiePoissonSystem subriemannian(AlgebraPtr algebra);

  int dim() const { return static_cast<int>(field_.size()); }
  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  std::vector<std::string> state_names() const { return state_names_; }
  std::vector<std::string> audit_names() const { return audit_names_; }
  Eigen::VectorXd audit(const Eigen::VectorXd& x) const;

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Polynomial>& symbolic_field() const { return symbolic_; }

 private:
  AlgebraPtr algebra_;
  std::vector<Polynomial> symbolic_;
  std::vector<CompiledPolynomial> field_;
  std::vector<std::vector<CompiledPolynomial>> jacobian_;  // [row][col]
  std::vector<CompiledPolynomial> audits_;
  std::vector<std::string> state_names_, audit_names_;
};

}  // namespace carnot::dynamics
