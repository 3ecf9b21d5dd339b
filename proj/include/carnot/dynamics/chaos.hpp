#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "carnot/dynamics/integrator.hpp"

namespace carnot::dynamics {

struct LyapunovResult {
  double estimate = 0;
  // Running estimate after each renormalization.
  std::vector<double> times;
  std::vector<double> running;
};

// Largest Lyapunov exponent by the two-trajectory renormalization scheme: a
// companion trajectory starts `separation` away along (1,...,1)/sqrt(n); every
// `renorm_interval` the log stretch is accumulated and the offset rescaled
// back to `separation`. cfg.T is ignored; `horizon` sets the run length.
template <class System>
LyapunovResult lyapunov_max(const System& sys, const Eigen::VectorXd& x0, IntegratorConfig cfg,
                            double renorm_interval, double horizon, double separation = 1e-8) {
  if (!(renorm_interval > 0) || !(horizon >= renorm_interval))
    throw UsageError("horizon must be at least one renormalization interval");
  if (!(separation > 0)) throw UsageError("separation must be positive");
  cfg.T = renorm_interval;
  cfg.validate();
  const std::size_t per_block = cfg.steps();
  const auto blocks = static_cast<std::size_t>(std::llround(horizon / renorm_interval));

  Eigen::VectorXd a = x0;
  Eigen::VectorXd b = x0 + Eigen::VectorXd::Constant(x0.size(), separation / std::sqrt(double(x0.size())));
  LyapunovResult out;
  double log_sum = 0;
  double t = 0;
  for (std::size_t blk = 1; blk <= blocks; ++blk) {
    for (std::size_t i = 0; i < per_block; ++i) {
      a = step(sys, a, cfg.dt, cfg);
      b = step(sys, b, cfg.dt, cfg);
      t += cfg.dt;
      check_escape(a, t);
      check_escape(b, t);
    }
    const Eigen::VectorXd d = b - a;
    const double dist = d.norm();
    if (!(dist > 0)) throw NumericalError("companion trajectory collapsed at t = " + std::to_string(t));
    log_sum += std::log(dist / separation);
    b = a + (separation / dist) * d;
    const double elapsed = static_cast<double>(blk) * renorm_interval;
    out.times.push_back(elapsed);
    out.running.push_back(log_sum / elapsed);
  }
  out.estimate = out.running.empty() ? 0.0 : out.running.back();
  return out;
}

enum class Crossing { upward, downward, both };

struct Section {
  int index = 0;
  double value = 0;
  Crossing direction = Crossing::upward;
};

struct SectionPoint {
  double time;
  Eigen::VectorXd state;  // full state at the crossing; state[index] == value to 1e-10
};

// Crossings of state[index] = value, each located by bisection on the
// length of a partial integrator step from the last sample before it.
template <class System>
std::vector<SectionPoint> poincare_section(const System& sys, const Eigen::VectorXd& x0,
                                           const IntegratorConfig& cfg, const Section& section) {
  cfg.validate();
  if (section.index < 0 || section.index >= sys.dim()) throw UsageError("section coordinate out of range");
  std::vector<SectionPoint> points;
  const std::size_t n = cfg.steps();
  Eigen::VectorXd x = x0;
  auto residual = [&](const Eigen::VectorXd& s) { return s[section.index] - section.value; };
  auto crosses = [&](double before, double after) {
    const bool up = before < 0 && after >= 0;
    const bool down = before > 0 && after <= 0;
    switch (section.direction) {
      case Crossing::upward: return up;
      case Crossing::downward: return down;
      case Crossing::both: return up || down;
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = static_cast<double>(i) * cfg.dt;
    const Eigen::VectorXd next = step(sys, x, cfg.dt, cfg);
    check_escape(next, t0 + cfg.dt);
    const double r0 = residual(x), r1 = residual(next);
    if (crosses(r0, r1)) {
      double lo = 0, hi = cfg.dt;
      Eigen::VectorXd hit = next;
      double rhit = r1, tau = cfg.dt;
      for (int it = 0; it < 200 && std::abs(rhit) >= 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        hit = step(sys, x, mid, cfg);
        rhit = residual(hit);
        tau = mid;
        if ((rhit < 0) == (r0 < 0) && rhit != 0) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-17) break;
      }
      points.push_back({t0 + tau, hit});
    }
    x = next;
  }
  return points;
}

}  // namespace carnot::dynamics
