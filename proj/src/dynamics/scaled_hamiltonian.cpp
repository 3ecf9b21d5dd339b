#include "carnot/dynamics/scaled_hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace carnot::dynamics {

namespace {

constexpr std::array<int, 4> kScaleExponent{1, 1, -1, -1};  // chart = s^e * hat

ScaledPolynomial shift_scale(const ScaledPolynomial& p, int sign) {
  ScaledPolynomial out;
  for (const auto& [key, q] : p.terms()) {
    auto k = key;
    for (int i = 0; i < 4; ++i) k.w0_thirds += sign * kScaleExponent[i] * static_cast<int>(key.exponents[i]);
    out.add(k, q);
  }
  return out;
}

std::string symbol_text(const Rational& q, int c_power, int w0_thirds) {
  std::ostringstream os;
  os << to_string(q);
  if (c_power != 0) os << "*C" << (c_power != 1 ? "^" + std::to_string(c_power) : "");
  if (w0_thirds != 0) {
    if (w0_thirds % 3 == 0) os << "*w0^" << (w0_thirds / 3);
    else os << "*w0^(" << w0_thirds << "/3)";
  }
  return os.str();
}

}  // namespace

void ScaledPolynomial::add(const Key& key, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

ScaledPolynomial ScaledPolynomial::variable(int i) {
  ScaledPolynomial p;
  Key k;
  k.exponents[static_cast<std::size_t>(i)] = 1;
  p.add(k, 1);
  return p;
}

ScaledPolynomial ScaledPolynomial::constant(const Rational& q, int c_power, int w0_thirds) {
  ScaledPolynomial p;
  Key k;
  k.c_power = c_power;
  k.w0_thirds = w0_thirds;
  p.add(k, q);
  return p;
}

ScaledPolynomial& ScaledPolynomial::operator+=(const ScaledPolynomial& o) {
  for (const auto& [k, q] : o.terms_) add(k, q);
  return *this;
}

ScaledPolynomial& ScaledPolynomial::operator-=(const ScaledPolynomial& o) {
  for (const auto& [k, q] : o.terms_) add(k, -q);
  return *this;
}

ScaledPolynomial operator*(const ScaledPolynomial& a, const ScaledPolynomial& b) {
  ScaledPolynomial out;
  for (const auto& [ka, qa] : a.terms_)
    for (const auto& [kb, qb] : b.terms_) {
      ScaledPolynomial::Key k;
      for (int i = 0; i < 4; ++i) k.exponents[i] = ka.exponents[i] + kb.exponents[i];
      k.c_power = ka.c_power + kb.c_power;
      k.w0_thirds = ka.w0_thirds + kb.w0_thirds;
      out.add(k, qa * qb);
    }
  return out;
}

ScaledPolynomial operator*(const Rational& s, const ScaledPolynomial& a) {
  ScaledPolynomial out;
  for (const auto& [k, q] : a.terms_) out.add(k, s * q);
  return out;
}

ScaledPolynomial ScaledPolynomial::derivative(int i) const {
  ScaledPolynomial out;
  for (const auto& [key, q] : terms_) {
    const unsigned e = key.exponents[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    auto k = key;
    k.exponents[static_cast<std::size_t>(i)] = e - 1;
    out.add(k, q * e);
  }
  return out;
}

double ScaledPolynomial::evaluate(const ChartVector<double>& point, double w0, double C) const {
  const double s = real_cbrt(w0);
  double total = 0;
  for (const auto& [key, q] : terms_) {
    double v = to_double(q) * std::pow(C, key.c_power) * std::pow(s, key.w0_thirds);
    for (int i = 0; i < 4; ++i) v *= std::pow(point[i], static_cast<int>(key.exponents[i]));
    total += v;
  }
  return total;
}

std::string ScaledPolynomial::to_string(const std::array<std::string, 4>& names) const {
  if (terms_.empty()) return "0";
  // Group by phase-space exponent, highest degree first.
  std::map<std::array<unsigned, 4>, std::vector<std::string>, std::greater<>> grouped;
  for (const auto& [key, q] : terms_) grouped[key.exponents].push_back(symbol_text(q, key.c_power, key.w0_thirds));
  std::ostringstream os;
  bool first = true;
  for (const auto& [exps, coeffs] : grouped) {
    if (!first) os << " + ";
    first = false;
    os << "(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? " + " : "") << coeffs[i];
    os << ")";
    for (int i = 0; i < 4; ++i) {
      if (exps[i] == 0) continue;
      os << "*" << names[i];
      if (exps[i] > 1) os << "^" << exps[i];
    }
  }
  return os.str();
}

ScaledPolynomial orbit_hamiltonian_symbolic() {
  using P = ScaledPolynomial;
  const P x = P::variable(kChartX), z = P::variable(kChartZ), u = P::variable(kChartU), v = P::variable(kChartV);
  const P coupling = P::constant(1, 1, -3) - P::constant(1, 0, 3) * u * v;
  return Rational(1, 2) * (x * x + z * z + coupling * coupling);
}

ScaledPolynomial chart_to_hat(const ScaledPolynomial& p) { return shift_scale(p, +1); }
ScaledPolynomial hat_to_chart(const ScaledPolynomial& p) { return shift_scale(p, -1); }

ScaledPolynomial canonical_bracket(const ScaledPolynomial& f, const ScaledPolynomial& g) {
  constexpr std::array<std::pair<int, int>, 2> pairs{{{kChartZ, kChartU}, {kChartV, kChartX}}};
  ScaledPolynomial out;
  for (const auto& [q, p] : pairs) {
    out += f.derivative(q) * g.derivative(p);
    out -= f.derivative(p) * g.derivative(q);
  }
  return out;
}

ScaledHamiltonian derive_scaled_hamiltonian() {
  ScaledHamiltonian out;
  out.transformed = chart_to_hat(orbit_hamiltonian_symbolic());
  ScaledPolynomial::Key xx;
  xx.exponents = {2, 0, 0, 0};
  out.prefactor_w0_thirds = 0;
  for (const auto& [key, q] : out.transformed.terms())
    if (key.exponents == xx.exponents) out.prefactor_w0_thirds = key.w0_thirds;
  for (const auto& [key, q] : out.transformed.terms()) {
    auto k = key;
    k.w0_thirds -= out.prefactor_w0_thirds;
    out.normalized.add(k, q);
  }
  bool only = true;
  out.quartic_coefficient = 0;
  for (const auto& [key, q] : out.normalized.terms()) {
    const unsigned deg = key.exponents[0] + key.exponents[1] + key.exponents[2] + key.exponents[3];
    if (deg != 4) continue;
    if (key.exponents == std::array<unsigned, 4>{0, 0, 2, 2} && key.c_power == 0 && key.w0_thirds == 0)
      out.quartic_coefficient += q;
    else
      only = false;
  }
  out.quartic_only_uv_squared = only && out.quartic_coefficient != 0;
  std::ostringstream os;
  os << "H = w0^(" << out.prefactor_w0_thirds << "/3) * ["
     << out.normalized.to_string({"xh", "zh", "uh", "vh"}) << "]";
  out.text = os.str();
  return out;
}

BracketAudit audit_scaling_brackets() {
  std::vector<ScaledPolynomial> quadratics;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) quadratics.push_back(ScaledPolynomial::variable(i) * ScaledPolynomial::variable(j));
  // Linear coordinates too, so the defining relations {zh, uh} = 1 are covered.
  for (int i = 0; i < 4; ++i) quadratics.push_back(ScaledPolynomial::variable(i));
  BracketAudit audit;
  for (const auto& a : quadratics)
    for (const auto& b : quadratics) {
      const auto direct = canonical_bracket(a, b);
      const auto pulled = chart_to_hat(canonical_bracket(hat_to_chart(a), hat_to_chart(b)));
      ++audit.pairs_checked;
      if (!(direct == pulled)) ++audit.mismatches;
    }
  return audit;
}

}  // namespace carnot::dynamics
