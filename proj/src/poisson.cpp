#include "carnot/poisson.hpp"

#include "carnot/errors.hpp"

namespace carnot {

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
  const AlgebraPtr& alg = f.algebra() ? f.algebra() : g.algebra();
  if (!alg) throw UsageError("Poisson bracket needs an algebra");
  if ((f.algebra() && !same_algebra(f.algebra(), alg)) || (g.algebra() && !same_algebra(g.algebra(), alg)) ||
      f.nvars() != alg->dim() || g.nvars() != alg->dim())
    throw UsageError("Poisson bracket operands belong to different algebras");

  const std::size_t n = alg->dim();
  std::vector<Polynomial> df, dg;
  df.reserve(n);
  dg.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i).with_algebra(alg));
    dg.push_back(g.derivative(i).with_algebra(alg));
  }

  Polynomial out(alg);
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dg[j].is_zero()) continue;
      const auto& b = alg->bracket_of_basis(i, j);
      if (b.empty()) continue;
      Polynomial linear(alg);
      for (const auto& [k, c] : b) linear.add_term(Monomial::unit(n, k), c);
      out += df[i] * dg[j] * linear;
    }
  }
  return out;
}

bool is_casimir(const Polynomial& f) {
  if (!f.algebra()) throw UsageError("Casimir check needs an algebra");
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (!poisson_bracket(f, Polynomial::variable(f.algebra(), i)).is_zero()) return false;
  return true;
}

std::vector<Polynomial> hamiltonian_vector_field(const Polynomial& h) {
  if (!h.algebra()) throw UsageError("vector field needs an algebra");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < h.nvars(); ++i)
    out.push_back(poisson_bracket(Polynomial::variable(h.algebra(), i), h));
  return out;
}

Polynomial subriemannian_hamiltonian(const AlgebraPtr& algebra) {
  const auto& gen = algebra->generating_indices();
  const std::size_t k = gen.size();
  // Gauss-Jordan inverse of the Gram matrix.
  auto a = algebra->inner_product();
  std::vector<std::vector<Rational>> inv(k, std::vector<Rational>(k, 0));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t piv = p;
    while (piv < k && a[piv][p] == 0) ++piv;
    if (piv == k) throw UsageError("inner product is singular");
    std::swap(a[p], a[piv]);
    std::swap(inv[p], inv[piv]);
    const Rational d = a[p][p];
    for (std::size_t c = 0; c < k; ++c) {
      a[p][c] /= d;
      inv[p][c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == p || a[r][p] == 0) continue;
      const Rational f = a[r][p];
      for (std::size_t c = 0; c < k; ++c) {
        a[r][c] -= f * a[p][c];
        inv[r][c] -= f * inv[p][c];
      }
    }
  }
  Polynomial h(algebra);
  const std::size_t n = algebra->dim();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (inv[i][j] == 0) continue;
      Monomial m(n);
      m.increment(gen[i]);
      m.increment(gen[j]);
      h.add_term(m, inv[i][j] / 2);
    }
  return h;
}

std::vector<Polynomial> declared_casimirs(const AlgebraPtr& algebra) {
  std::vector<Polynomial> out;
  for (const auto& text : algebra->casimirs()) out.push_back(parse_polynomial(algebra, text));
  return out;
}

}  // namespace carnot
