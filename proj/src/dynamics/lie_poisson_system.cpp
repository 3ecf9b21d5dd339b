#include "carnot/dynamics/lie_poisson_system.hpp"

#include "carnot/poisson.hpp"

namespace carnot::dynamics {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    coefficients_.push_back(to_double(c));
    std::vector<std::pair<int, int>> f;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) f.emplace_back(static_cast<int>(i), static_cast<int>(m[i]));
    factors_.push_back(std::move(f));
  }
}

LiePoissonSystem::LiePoissonSystem(AlgebraPtr algebra, const Polynomial& hamiltonian)
    : algebra_(std::move(algebra)) {
  const Polynomial h = hamiltonian.with_algebra(algebra_);
  symbolic_ = hamiltonian_vector_field(h);
  const std::size_t n = algebra_->dim();
  for (const auto& f : symbolic_) {
    field_.emplace_back(f);
    std::vector<CompiledPolynomial> row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(f.derivative(j));
    jacobian_.push_back(std::move(row));
  }
  state_names_ = dual_variable_names(*algebra_);
  audits_.emplace_back(h);
  audit_names_.push_back("H");
  // Casimirs are labelled with their declared text, which reads better than
  // the normal-ordered form.
  const auto casimirs = declared_casimirs(algebra_);
  for (std::size_t i = 0; i < casimirs.size(); ++i) {
    audits_.emplace_back(casimirs[i]);
    audit_names_.push_back(algebra_->casimirs()[i]);
  }
}

LiePoissonSystem LiePoissonSystem::subriemannian(AlgebraPtr algebra) {
  const Polynomial h = subriemannian_hamiltonian(algebra);
  return LiePoissonSystem(std::move(algebra), h);
}

Eigen::VectorXd LiePoissonSystem::rhs(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = field_[i](x);
  return out;
}

Eigen::MatrixXd LiePoissonSystem::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out(i, j) = jacobian_[i][j](x);
  return out;
}

Eigen::VectorXd LiePoissonSystem::audit(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(audits_.size());
  for (std::size_t i = 0; i < audits_.size(); ++i) out[static_cast<Eigen::Index>(i)] = audits_[i](x);
  return out;
}

}  // namespace carnot::dynamics
