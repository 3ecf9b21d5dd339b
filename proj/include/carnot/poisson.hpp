#pragma once

#include <vector>

#include "carnot/polynomial.hpp"

namespace carnot {

// Kirillov-Kostant-Souriau bracket {F,G}(p) = <p, [dF(p), dG(p)]>. On
// coordinate functions {e_i, e_j} = sum_k c_ij^k e_k, which for the 4x4
// triangular algebra reproduces {z,u} = w, {v,x} = w, {y,x} = u, {z,y} = v.
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g);

// True iff {F, e_i} = 0 for every coordinate function (enough by Leibniz).
bool is_casimir(const Polynomial& f);

// Right-hand sides e_i' = {e_i, H}, one per coordinate.
std::vector<Polynomial> hamiltonian_vector_field(const Polynomial& h);

// H = 1/2 sum_ab (G^-1)_ab e_a e_b over the layer-1 indices, where G is the
// inner product; for an orthonormal basis this is 1/2 (x^2 + y^2 + ...).
Polynomial subriemannian_hamiltonian(const AlgebraPtr& algebra);

// The algebra's declared Casimir expressions, parsed.
std::vector<Polynomial> declared_casimirs(const AlgebraPtr& algebra);

}  // namespace carnot
