#include "doctest.h"

#include "carnot/dynamics/group.hpp"
#include "carnot/errors.hpp"

using namespace carnot;
using namespace carnot::dynamics;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

bool unitriangular(const Eigen::Matrix4d& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("exponential of a first-layer element is the truncated series") {
    const auto g = exp_first_layer(1.0, 2.0, 3.0, 0.5);
    Eigen::Matrix4d n = Eigen::Matrix4d::Zero();
    n(1, 0) = 0.5;
    n(2, 1) = 1.0;
    n(3, 2) = 1.5;
    const Eigen::Matrix4d expected = Eigen::Matrix4d::Identity() + n + n * n / 2 + n * n * n / 6;
    CHECK((g.matrix() - expected).norm() < 1e-15);
    // Group law along a one-parameter subgroup.
    const auto a = exp_first_layer(1.0, 2.0, 3.0, 0.2) * exp_first_layer(1.0, 2.0, 3.0, 0.3);
    CHECK((a.matrix() - g.matrix()).norm() < 1e-14);
  }

  TEST_CASE("zero and constant controls") {
    const auto sys = LiePoissonSystem::subriemannian(builtin("n4"));
    IntegratorConfig cfg{Method::implicit_midpoint, 0.01, 1.0};
    for (const auto& g : reconstruct_group(integrate(sys, vec({0, 0, 0, 0, 0, 0}), cfg)))
      CHECK(g.entries().norm() == 0.0);

    const auto traj = integrate(sys, vec({1, 0, 0, 0, 0, 0}), cfg);
    const auto path = reconstruct_group(traj);
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(path[i].entries()[0] == doctest::Approx(traj.times[i]).epsilon(1e-14));
      for (int k = 1; k < 6; ++k) CHECK(path[i].entries()[k] == 0.0);
      CHECK(unitriangular(path[i].matrix()));
    }
  }

  TEST_CASE("generic reconstruction is unitriangular and converges at second order") {
    const auto sys = LiePoissonSystem::subriemannian(builtin("n4"));
    const auto p0 = vec({0.5, -0.4, 0.7, 0.3, -0.6, 0.9});
    auto end = [&](double dt) { return geodesic_endpoint(sys, p0, {Method::implicit_midpoint, dt, 2.0}); };
    const auto ref = end(1.25e-4).entries();
    const double e1 = (end(0.02).entries() - ref).norm();
    const double e2 = (end(0.01).entries() - ref).norm();
    CHECK(std::log2(e1 / e2) >= 1.9);
    for (const auto& g : reconstruct_group(integrate(sys, p0, {Method::implicit_midpoint, 0.01, 2.0})))
      CHECK(unitriangular(g.matrix()));
    // The trajectory-based lift and the streaming endpoint agree.
    const auto path = reconstruct_group(integrate(sys, p0, {Method::implicit_midpoint, 0.01, 2.0}));
    CHECK((path.back().entries() - end(0.01).entries()).norm() < 1e-14);
  }

  TEST_CASE("shooting recovers a known endpoint") {
    ShootConfig cfg;
    cfg.integrator = {Method::implicit_midpoint, 0.01, 1.0};
    const auto sys = LiePoissonSystem::subriemannian(builtin("n4"));
    const auto p_star = vec({0.6, -0.3, 0.4, 0.2, -0.5, 0.7});
    const auto target = geodesic_endpoint(sys, p_star, cfg.integrator);
    auto guess = p_star;
    guess += vec({0.02, -0.01, 0.015, -0.02, 0.01, 0.02});
    const auto r = shoot_endpoint(target, guess, cfg);
    CHECK(r.converged);
    CHECK(r.residual_norm < 1e-8);
    CHECK((r.endpoint.entries() - target.entries()).norm() < 1e-8);

    const auto zero = shoot_endpoint(GroupElement::identity(), vec({0, 0, 0, 0.3, 0.1, 0.2}), cfg);
    CHECK(zero.iterations == 0);
    CHECK(zero.residual_norm == 0.0);

    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(1, 0) = 1.0;
    const auto r2 = shoot_endpoint(GroupElement::from_matrix(m), vec({0.9, 0.05, 0.05, 0, 0, 0}), cfg);
    CHECK(r2.residual_norm < 1e-8);
    CHECK(std::abs(r2.p0[0]) > std::abs(r2.p0[1]));
    CHECK(std::abs(r2.p0[0]) > std::abs(r2.p0[2]));

    CHECK_THROWS_AS(shoot_endpoint(target, vec({1, 2}), cfg), UsageError);
  }

  TEST_CASE("iteration budget exhaustion is reported, not thrown") {
    ShootConfig cfg;
    cfg.integrator = {Method::implicit_midpoint, 0.05, 1.0};
    cfg.max_iterations = 1;
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(3, 0) = 5.0;
    const auto r = shoot_endpoint(GroupElement::from_matrix(m), vec({0.1, 0.1, 0.1, 0, 0, 0}), cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations <= 1);
  }
}
