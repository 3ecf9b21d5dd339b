#pragma once

#include <vector>

#include <Eigen/Dense>

#include "carnot/dynamics/integrator.hpp"
#include "carnot/dynamics/lie_poisson_system.hpp"

namespace carnot::dynamics {

// 4x4 lower unitriangular matrix. Only the six strictly-lower entries are
// stored, ordered (g21, g32, g43, g31, g42, g41) like the dual coordinates,
// so the ones on the diagonal and zeros above it hold by construction.
template <typename Scalar>
class UnitriangularMatrix {
 public:
  using Entries = Eigen::Matrix<Scalar, 6, 1>;
  using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

  UnitriangularMatrix() : entries_(Entries::Zero()) {}
  explicit UnitriangularMatrix(const Entries& entries) : entries_(entries) {}

  static UnitriangularMatrix identity() { return UnitriangularMatrix(); }

  // Reads the strictly-lower part; the rest of `m` is ignored.
  static UnitriangularMatrix from_matrix(const Matrix4& m) {
    Entries e;
    e << m(1, 0), m(2, 1), m(3, 2), m(2, 0), m(3, 1), m(3, 0);
    return UnitriangularMatrix(e);
  }

  Matrix4 matrix() const {
    Matrix4 m = Matrix4::Identity();
    m(1, 0) = entries_[0];
    m(2, 1) = entries_[1];
    m(3, 2) = entries_[2];
    m(2, 0) = entries_[3];
    m(3, 1) = entries_[4];
    m(3, 0) = entries_[5];
    return m;
  }

  const Entries& entries() const { return entries_; }

  friend UnitriangularMatrix operator*(const UnitriangularMatrix& a, const UnitriangularMatrix& b) {
    return from_matrix(a.matrix() * b.matrix());
  }

 private:
  Entries entries_;
};

// exp(t (x E21 + y E32 + z E43)) = I + N + N^2/2 + N^3/6, exact since N^4 = 0.
template <typename Scalar>
UnitriangularMatrix<Scalar> exp_first_layer(Scalar x, Scalar y, Scalar z, Scalar t) {
  using M = typename UnitriangularMatrix<Scalar>::Matrix4;
  M n = M::Zero();
  n(1, 0) = t * x;
  n(2, 1) = t * y;
  n(3, 2) = t * z;
  const M n2 = n * n;
  const M n3 = n2 * n;
  return UnitriangularMatrix<Scalar>::from_matrix(M::Identity() + n + n2 / Scalar(2) + n3 / Scalar(6));
}

using GroupElement = UnitriangularMatrix<double>;

// Horizontal lift g' = g (x E21 + y E32 + z E43), g(0) = I, through a momentum
// trajectory of the full system: per step an exact exponential with the
// controls averaged over the step's endpoints.
std::vector<GroupElement> reconstruct_group(const Trajectory& momentum);

// Endpoint of the lift after integrating the full n4 flow from p0 over T.
GroupElement geodesic_endpoint(const LiePoissonSystem& full_n4, const Eigen::VectorXd& p0,
                               const IntegratorConfig& cfg);

struct ShootConfig {
  IntegratorConfig integrator;  // T is the arrival time
  int max_iterations = 100;
  double tolerance = 1e-10;  // on the residual norm
  double fd_step = 1e-6;
};

struct ShootResult {
  Eigen::VectorXd p0;
  double residual_norm = 0;
  int iterations = 0;
  bool converged = false;
  GroupElement endpoint;
};

// Damped least squares (Levenberg-Marquardt) on the six endpoint entries as
// a function of the initial momentum. Returns the best iterate; `converged`
// is false when the iteration budget ran out.
ShootResult shoot_endpoint(const GroupElement& target, const Eigen::VectorXd& guess, const ShootConfig& cfg);

}  // namespace carnot::dynamics
