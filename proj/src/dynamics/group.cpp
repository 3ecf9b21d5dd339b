#include "carnot/dynamics/group.hpp"

#include "carnot/lie_algebra.hpp"

namespace carnot::dynamics {

std::vector<GroupElement> reconstruct_group(const Trajectory& momentum) {
  if (momentum.states.cols() < 3) throw UsageError("momentum trajectory needs x, y, z columns");
  std::vector<GroupElement> path;
  path.reserve(momentum.size());
  GroupElement g = GroupElement::identity();
  path.push_back(g);
  for (std::size_t i = 1; i < momentum.size(); ++i) {
    const double h = momentum.times[i] - momentum.times[i - 1];
    const auto a = momentum.states.row(static_cast<Eigen::Index>(i - 1));
    const auto b = momentum.states.row(static_cast<Eigen::Index>(i));
    g = g * exp_first_layer(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2]), h);
    path.push_back(g);
  }
  return path;
}

GroupElement geodesic_endpoint(const LiePoissonSystem& full_n4, const Eigen::VectorXd& p0,
                               const IntegratorConfig& cfg) {
  cfg.validate();
  GroupElement g = GroupElement::identity();
  Eigen::VectorXd p = p0;
  const std::size_t n = cfg.steps();
  for (std::size_t i = 1; i <= n; ++i) {
    const Eigen::VectorXd next = step(full_n4, p, cfg.dt, cfg);
    check_escape(next, static_cast<double>(i) * cfg.dt);
    g = g * exp_first_layer(0.5 * (p[0] + next[0]), 0.5 * (p[1] + next[1]), 0.5 * (p[2] + next[2]), cfg.dt);
    p = next;
  }
  return g;
}

ShootResult shoot_endpoint(const GroupElement& target, const Eigen::VectorXd& guess, const ShootConfig& cfg) {
  if (guess.size() != 6) throw UsageError("initial momentum must have six components");
  const auto system = LiePoissonSystem::subriemannian(builtin(BuiltinAlgebra::n4_lower_triangular));
  auto residual = [&](const Eigen::VectorXd& p) -> Eigen::Matrix<double, 6, 1> {
    return geodesic_endpoint(system, p, cfg.integrator).entries() - target.entries();
  };

  ShootResult best;
  best.p0 = guess;
  Eigen::Matrix<double, 6, 1> r = residual(guess);
  best.residual_norm = r.norm();
  double mu = 1e-3;
  for (int it = 0; it < cfg.max_iterations && best.residual_norm > cfg.tolerance; ++it) {
    best.iterations = it + 1;
    Eigen::Matrix<double, 6, 6> jac;
    for (int k = 0; k < 6; ++k) {
      Eigen::VectorXd plus = best.p0, minus = best.p0;
      plus[k] += cfg.fd_step;
      minus[k] -= cfg.fd_step;
      jac.col(k) = (residual(plus) - residual(minus)) / (2.0 * cfg.fd_step);
    }
    const Eigen::Matrix<double, 6, 6> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 6, 1> grad = jac.transpose() * r;
    bool improved = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::Matrix<double, 6, 6> damped = jtj;
      damped.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::Matrix<double, 6, 1> delta = damped.ldlt().solve(-grad);
      const Eigen::VectorXd trial = best.p0 + delta;
      Eigen::Matrix<double, 6, 1> rt;
      try {
        rt = residual(trial);
      } catch (const NumericalError&) {
        mu *= 10;
        continue;
      }
      if (rt.allFinite() && rt.norm() < best.residual_norm) {
        best.p0 = trial;
        r = rt;
        best.residual_norm = rt.norm();
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 10;
    }
    if (!improved) break;
  }
  best.converged = best.residual_norm <= cfg.tolerance;
  best.endpoint = geodesic_endpoint(system, best.p0, cfg.integrator);
  return best;
}

}  // namespace carnot::dynamics
