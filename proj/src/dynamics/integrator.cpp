#include "carnot/dynamics/integrator.hpp"

namespace carnot::dynamics {

std::optional<Method> parse_method(std::string_view name) {
  if (name == "implicit_midpoint" || name == "midpoint") return Method::implicit_midpoint;
  if (name == "rk4") return Method::rk4;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  return method == Method::rk4 ? "rk4" : "implicit_midpoint";
}

void IntegratorConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw UsageError("dt must be positive");
  if (!(T > 0) || !std::isfinite(T)) throw UsageError("T must be positive");
  if (!(newton_tol > 0)) throw UsageError("newton_tol must be positive");
  if (newton_max_iters < 1) throw UsageError("newton_max_iters must be at least 1");
  const double n = std::round(T / dt);
  if (n < 1 || std::abs(n * dt - T) > 1e-9 * T) throw UsageError("T must be an integer multiple of dt");
}

std::size_t IntegratorConfig::steps() const { return static_cast<std::size_t>(std::llround(T / dt)); }

}  // namespace carnot::dynamics
