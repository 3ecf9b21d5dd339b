#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "carnot/dynamics/lie_poisson_system.hpp"
#include "carnot/dynamics/orbit_chart.hpp"

namespace carnot::dynamics {

// Every system exposes dim(), rhs(x), jacobian(x), state_names(),
// audit_names() and audit(x); the integrators are templates over that shape.

// Flow on one generic orbit of the 4x4 triangular algebra in Darboux
// coordinates (x, z, ut, vt).
struct ReducedN4System {
  OrbitChart<double> orbit;

  int dim() const { return 4; }
  Eigen::VectorXd rhs(const Eigen::VectorXd& c) const { return orbit.vector_field(ChartVector<double>(c)); }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& c) const { return orbit.jacobian(ChartVector<double>(c)); }
  std::vector<std::string> state_names() const { return {"x", "z", "ut", "vt"}; }
  std::vector<std::string> audit_names() const { return {"H"}; }
  Eigen::VectorXd audit(const Eigen::VectorXd& c) const {
    return Eigen::VectorXd::Constant(1, orbit.hamiltonian(ChartVector<double>(c)));
  }
};

// H = 1/2 (p1^2 + p2^2) + 1/2 (q1 q2 - offset)^2 on (q1, q2, p1, p2).
// offset = 0 is the classical Yang-Mills quartic oscillator; a nonzero
// offset is what the rescaled triangular-group flow produces.
struct YangMillsSystem {
  double offset = 0.0;

  int dim() const { return 4; }

  double hamiltonian(const Eigen::VectorXd& s) const {
    const double c = s[0] * s[1] - offset;
    return 0.5 * (s[2] * s[2] + s[3] * s[3]) + 0.5 * c * c;
  }
  Eigen::VectorXd rhs(const Eigen::VectorXd& s) const {
    const double c = s[0] * s[1] - offset;
    Eigen::VectorXd f(4);
    f << s[2], s[3], -c * s[1], -c * s[0];
    return f;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& s) const {
    const double cross = -(2.0 * s[0] * s[1] - offset);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    j(0, 2) = 1;
    j(1, 3) = 1;
    j(2, 0) = -s[1] * s[1];
    j(2, 1) = cross;
    j(3, 0) = cross;
    j(3, 1) = -s[0] * s[0];
    return j;
  }
  std::vector<std::string> state_names() const { return {"q1", "q2", "p1", "p2"}; }
  std::vector<std::string> audit_names() const { return {"H"}; }
  Eigen::VectorXd audit(const Eigen::VectorXd& s) const { return Eigen::VectorXd::Constant(1, hamiltonian(s)); }
};

// Reduced Heisenberg flow on the orbit w = w0, Darboux pair (q, p) = (x, y/w0):
// H = 1/2 (q^2 + w0^2 p^2), a harmonic oscillator of frequency |w0|.
struct HeisenbergReducedSystem {
  double w0 = 1.0;

  int dim() const { return 2; }
  double hamiltonian(const Eigen::VectorXd& s) const { return 0.5 * (s[0] * s[0] + w0 * w0 * s[1] * s[1]); }
  Eigen::VectorXd rhs(const Eigen::VectorXd& s) const {
    Eigen::VectorXd f(2);
    f << w0 * w0 * s[1], -s[0];
    return f;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const {
    Eigen::MatrixXd j(2, 2);
    j << 0, w0 * w0, -1, 0;
    return j;
  }
  std::vector<std::string> state_names() const { return {"q", "p"}; }
  std::vector<std::string> audit_names() const { return {"H"}; }
  Eigen::VectorXd audit(const Eigen::VectorXd& s) const { return Eigen::VectorXd::Constant(1, hamiltonian(s)); }
};

// Start on the energy surface H = energy with the given (q1, q2, p1) and
// p2 >= 0 solved for. Throws UsageError when no real p2 exists.
inline Eigen::VectorXd yang_mills_state_on_shell(const YangMillsSystem& sys, double energy, double q1, double q2,
                                                 double p1) {
  const double c = q1 * q2 - sys.offset;
  const double rem = 2.0 * energy - p1 * p1 - c * c;
  if (rem < 0) throw UsageError("requested energy is below the potential at the given position");
  Eigen::VectorXd s(4);
  s << q1, q2, p1, std::sqrt(rem);
  return s;
}

}  // namespace carnot::dynamics
