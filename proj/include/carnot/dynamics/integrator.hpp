#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "carnot/errors.hpp"

namespace carnot::dynamics {

enum class Method { implicit_midpoint, rk4 };

std::optional<Method> parse_method(std::string_view name);
std::string_view to_string(Method method);

struct IntegratorConfig {
  Method method = Method::implicit_midpoint;
  double dt = 1e-3;
  double T = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;

  // Throws UsageError unless dt, T and the tolerances are positive and T is
  // an integer multiple of dt.
  void validate() const;
  std::size_t steps() const;
};

struct StepInfo {
  int iterations = 0;
};

// One implicit midpoint step. The stage K = f(x + dt/2 K) is solved by
// Newton's method; the update is x + dt f(x + dt/2 K), so a component whose
// right-hand side vanishes identically is carried over bit-for-bit.
template <class System>
Eigen::VectorXd midpoint_step(const System& sys, const Eigen::VectorXd& x, double dt, double tol, int max_iters,
                              StepInfo* info = nullptr) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd k = sys.rhs(x);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (int it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXd mid = x + 0.5 * dt * k;
    const Eigen::VectorXd g = k - sys.rhs(mid);
    const Eigen::MatrixXd jg = id - 0.5 * dt * sys.jacobian(mid);
    const Eigen::VectorXd delta = jg.partialPivLu().solve(-g);
    k += delta;
    if (!k.allFinite()) break;
    if (delta.lpNorm<Eigen::Infinity>() <= tol * std::max(1.0, k.lpNorm<Eigen::Infinity>())) {
      if (info) info->iterations = it;
      return x + dt * sys.rhs(x + 0.5 * dt * k);
    }
  }
  throw NumericalError("implicit midpoint Newton iteration did not converge");
}

template <class System>
Eigen::VectorXd rk4_step(const System& sys, const Eigen::VectorXd& x, double dt) {
  const Eigen::VectorXd k1 = sys.rhs(x);
  const Eigen::VectorXd k2 = sys.rhs(x + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = sys.rhs(x + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = sys.rhs(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class System>
Eigen::VectorXd step(const System& sys, const Eigen::VectorXd& x, double dt, const IntegratorConfig& cfg,
                     StepInfo* info = nullptr) {
  if (cfg.method == Method::rk4) return rk4_step(sys, x, dt);
  return midpoint_step(sys, x, dt, cfg.newton_tol, cfg.newton_max_iters, info);
}

// Uniform-grid samples t_i = i * dt (every `sample_every` steps) with the
// system's audit columns evaluated at each sample.
struct Trajectory {
  std::vector<std::string> state_names;
  std::vector<std::string> audit_names;
  std::vector<double> times;
  Eigen::MatrixXd states;  // one row per sample
  Eigen::MatrixXd audits;  // one row per sample
  int max_newton_iterations = 0;

  std::size_t size() const { return times.size(); }
  Eigen::VectorXd state(std::size_t i) const { return states.row(static_cast<Eigen::Index>(i)).transpose(); }
};

inline void check_escape(const Eigen::VectorXd& x, double t) {
  if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > 1e150)
    throw NumericalError("trajectory escaped at t = " + std::to_string(t));
}

template <class System>
Trajectory integrate(const System& sys, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                     std::size_t sample_every = 1) {
  cfg.validate();
  if (x0.size() != sys.dim()) throw UsageError("initial state has the wrong dimension");
  if (sample_every == 0) throw UsageError("sample stride must be positive");
  const std::size_t n = cfg.steps();
  const std::size_t samples = n / sample_every + 1;

  Trajectory traj;
  traj.state_names = sys.state_names();
  traj.audit_names = sys.audit_names();
  traj.times.reserve(samples);
  traj.states.resize(static_cast<Eigen::Index>(samples), sys.dim());
  traj.audits.resize(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(traj.audit_names.size()));

  Eigen::VectorXd x = x0;
  std::size_t row = 0;
  auto record = [&](std::size_t i) {
    traj.times.push_back(static_cast<double>(i) * cfg.dt);
    traj.states.row(static_cast<Eigen::Index>(row)) = x.transpose();
    traj.audits.row(static_cast<Eigen::Index>(row)) = sys.audit(x).transpose();
    ++row;
  };
  record(0);
  for (std::size_t i = 1; i <= n; ++i) {
    StepInfo info;
    try {
      x = step(sys, x, cfg.dt, cfg, &info);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at step " + std::to_string(i));
    }
    traj.max_newton_iterations = std::max(traj.max_newton_iterations, info.iterations);
    check_escape(x, static_cast<double>(i) * cfg.dt);
    if (i % sample_every == 0) record(i);
  }
  traj.states.conservativeResize(static_cast<Eigen::Index>(row), Eigen::NoChange);
  traj.audits.conservativeResize(static_cast<Eigen::Index>(row), Eigen::NoChange);
  return traj;
}

// Final state only, without storing samples.
template <class System>
Eigen::VectorXd advance(const System& sys, Eigen::VectorXd x, const IntegratorConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.steps();
  for (std::size_t i = 1; i <= n; ++i) {
    try {
      x = step(sys, x, cfg.dt, cfg);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at step " + std::to_string(i));
    }
    check_escape(x, static_cast<double>(i) * cfg.dt);
  }
  return x;
}

}  // namespace carnot::dynamics
