#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "carnot/errors.hpp"

namespace carnot::dynamics {

// Point of the dual of the 4x4 triangular algebra, ordered (x, y, z, u, v, w).
template <typename Scalar>
using DualVector = Eigen::Matrix<Scalar, 6, 1>;

// Darboux chart point on a generic coadjoint orbit, ordered (x, z, ut, vt)
// with ut = u / w and vt = v / w. Canonical pairs: (z, ut) and (vt, x).
template <typename Scalar>
using ChartVector = Eigen::Matrix<Scalar, 4, 1>;

enum : int { kX = 0, kY = 1, kZ = 2, kU = 3, kV = 4, kW = 5 };
enum : int { kChartX = 0, kChartZ = 1, kChartU = 2, kChartV = 3 };

template <typename Scalar>
Scalar n4_hamiltonian(const DualVector<Scalar>& p) {
  return Scalar(0.5) * (p[kX] * p[kX] + p[kY] * p[kY] + p[kZ] * p[kZ]);
}

// uv - yw.
template <typename Scalar>
Scalar n4_quadratic_casimir(const DualVector<Scalar>& p) {
  return p[kU] * p[kV] - p[kY] * p[kW];
}

// Closed-form Lie-Poisson field of H = 1/2 (x^2 + y^2 + z^2):
// (-uy, ux - vz, vy, -wz, wx, 0).
template <typename Scalar>
DualVector<Scalar> n4_vector_field(const DualVector<Scalar>& p) {
  DualVector<Scalar> f;
  f << -p[kU] * p[kY], p[kU] * p[kX] - p[kV] * p[kZ], p[kV] * p[kY], -p[kW] * p[kZ], p[kW] * p[kX], Scalar(0);
  return f;
}

class NonGenericPoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Generic coadjoint orbit {w = w0, uv - yw = C} with w0 != 0, C != 0.
template <typename Scalar>
struct OrbitChart {
  Scalar w0;
  Scalar C;

  // y recovered from the Casimir: y = (uv - C) / w0 = w0 ut vt - C / w0.
  Scalar y_of(const ChartVector<Scalar>& c) const { return w0 * c[kChartU] * c[kChartV] - C / w0; }

  DualVector<Scalar> to_dual(const ChartVector<Scalar>& c) const {
    DualVector<Scalar> p;
    p << c[kChartX], y_of(c), c[kChartZ], w0 * c[kChartU], w0 * c[kChartV], w0;
    return p;
  }

  ChartVector<Scalar> to_chart(const DualVector<Scalar>& p) const {
    ChartVector<Scalar> c;
    c << p[kX], p[kZ], p[kU] / p[kW], p[kV] / p[kW];
    return c;
  }

  // 1/2 (x^2 + z^2 + (C/w0 - w0 ut vt)^2).
  Scalar hamiltonian(const ChartVector<Scalar>& c) const {
    const Scalar y = y_of(c);
    return Scalar(0.5) * (c[kChartX] * c[kChartX] + c[kChartZ] * c[kChartZ] + y * y);
  }

  // Hamilton's equations for the pairs (z, ut), (vt, x).
  ChartVector<Scalar> vector_field(const ChartVector<Scalar>& c) const {
    const Scalar y = y_of(c);
    ChartVector<Scalar> f;
    f << -w0 * c[kChartU] * y, w0 * c[kChartV] * y, -c[kChartZ], c[kChartX];
    return f;
  }

  Eigen::Matrix<Scalar, 4, 4> jacobian(const ChartVector<Scalar>& c) const {
    const Scalar y = y_of(c);
    const Scalar a2 = w0 * w0;
    const Scalar uu = c[kChartU], vv = c[kChartV];
    Eigen::Matrix<Scalar, 4, 4> j = Eigen::Matrix<Scalar, 4, 4>::Zero();
    j(kChartX, kChartU) = -w0 * y - a2 * uu * vv;
    j(kChartX, kChartV) = -a2 * uu * uu;
    j(kChartZ, kChartU) = a2 * vv * vv;
    j(kChartZ, kChartV) = w0 * y + a2 * uu * vv;
    j(kChartU, kChartZ) = Scalar(-1);
    j(kChartV, kChartX) = Scalar(1);
    return j;
  }
};

// Orbit labels and chart coordinates of a dual point. Throws NonGenericPoint
// when w = 0 or uv - yw = 0.
template <typename Scalar>
std::pair<OrbitChart<Scalar>, ChartVector<Scalar>> reduce_to_orbit(const DualVector<Scalar>& p) {
  if (!p.allFinite()) throw NonGenericPoint("point has non-finite coordinates");
  if (p[kW] == Scalar(0)) throw NonGenericPoint("non-generic point: w = 0");
  const Scalar casimir = n4_quadratic_casimir(p);
  if (casimir == Scalar(0)) throw NonGenericPoint("non-generic point: uv - yw = 0");
  OrbitChart<Scalar> orbit{p[kW], casimir};
  return {orbit, orbit.to_chart(p)};
}

template <typename Scalar>
Scalar reduced_hamiltonian(const ChartVector<Scalar>& c, Scalar w0, Scalar C) {
  return OrbitChart<Scalar>{w0, C}.hamiltonian(c);
}

template <typename Scalar>
ChartVector<Scalar> reduced_vector_field(const ChartVector<Scalar>& c, Scalar w0, Scalar C) {
  return OrbitChart<Scalar>{w0, C}.vector_field(c);
}

// Real cube root, defined for negative arguments.
template <typename Scalar>
Scalar real_cbrt(Scalar v) {
  using std::cbrt;
  return cbrt(v);
}

// Diagonal symplectic rescaling with s = w0^(1/3):
// x = s xh, z = s zh, ut = uh / s, vt = vh / s. Hat point ordered like the chart.
template <typename Scalar>
ChartVector<Scalar> ym_scale(const ChartVector<Scalar>& c, Scalar w0) {
  if (w0 == Scalar(0)) throw UsageError("scaling needs w0 != 0");
  const Scalar s = real_cbrt(w0);
  ChartVector<Scalar> h;
  h << c[kChartX] / s, c[kChartZ] / s, c[kChartU] * s, c[kChartV] * s;
  return h;
}

template <typename Scalar>
ChartVector<Scalar> ym_unscale(const ChartVector<Scalar>& h, Scalar w0) {
  if (w0 == Scalar(0)) throw UsageError("scaling needs w0 != 0");
  const Scalar s = real_cbrt(w0);
  ChartVector<Scalar> c;
  c << h[kChartX] * s, h[kChartZ] * s, h[kChartU] / s, h[kChartV] / s;
  return c;
}

// Coupling offset of the rescaled Hamiltonian: C * w0^(-4/3).
template <typename Scalar>
Scalar scaled_offset(Scalar w0, Scalar C) {
  const Scalar s = real_cbrt(w0);
  return C / (s * s * s * s);
}

// Hat point (xh, zh, uh, vh) -> quartic-oscillator canonical point
// (q1, q2, p1, p2) = (uh, vh, -zh, xh).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> hat_to_quartic(const ChartVector<Scalar>& h) {
  Eigen::Matrix<Scalar, 4, 1> y;
  y << h[kChartU], h[kChartV], -h[kChartZ], h[kChartX];
  return y;
}

template <typename Scalar>
ChartVector<Scalar> quartic_to_hat(const Eigen::Matrix<Scalar, 4, 1>& y) {
  ChartVector<Scalar> h;
  h << y[3], -y[2], y[0], y[1];
  return h;
}

}  // namespace carnot::dynamics
