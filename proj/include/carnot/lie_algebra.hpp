#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// One supplied structure constant: [e_i, e_j] has coefficient `value` on e_k.
// Indices are zero-based.
struct StructureConstant {
  std::size_t i, j, k;
  Rational value;
};

using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

// Finite-dimensional graded nilpotent Lie algebra given by exact structure
// constants over a fixed ordered basis.
//
// Constants may be supplied for either orientation of a pair. The canonical
// table keeps one entry per i < j and derives the other orientation by
// antisymmetry; the supplied list is retained so that validation can report
// inconsistent input.
class LieAlgebra {
 public:
  LieAlgebra(std::vector<std::string> names, std::vector<int> layers,
             std::vector<StructureConstant> constants,
             std::vector<std::vector<Rational>> inner_product = {},
             std::vector<std::string> casimirs = {});

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  int layer(std::size_t i) const { return layers_[i]; }
  const std::vector<int>& layers() const { return layers_; }
  int depth() const;

  // Indices of the layer-1 basis elements, in basis order.
  const std::vector<std::size_t>& generating_indices() const { return generating_; }
  // Inner product on the generating layer, indexed like generating_indices().
  const std::vector<std::vector<Rational>>& inner_product() const { return inner_product_; }

  // [e_i, e_j] as a sparse combination of basis elements.
  const SparseVector& bracket_of_basis(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }
  Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

  const std::vector<StructureConstant>& supplied_constants() const { return supplied_; }

  // Known Casimir expressions in the polynomial grammar (may be empty).
  const std::vector<std::string>& casimirs() const { return casimirs_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  std::vector<std::string> names_;
  std::vector<int> layers_;
  std::vector<StructureConstant> supplied_;
  std::vector<SparseVector> table_;
  std::vector<std::size_t> generating_;
  std::vector<std::vector<Rational>> inner_product_;
  std::vector<std::string> casimirs_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, std::vector<Rational> coords);
  static AlgebraElement basis(AlgebraPtr algebra, std::size_t i);
  static AlgebraElement zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Rational& s, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  AlgebraPtr algebra_;
  std::vector<Rational> coords_;
};

std::string to_string(const AlgebraElement& a);

// Bilinear extension of the structure constants. Throws UsageError when the
// operands live in different algebras.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

enum class ViolationKind { index_range, antisymmetry, jacobi, grading, generation, inner_product };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> indices;  // offending index triple (zero-based), may be shorter
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks antisymmetry of the supplied constants, the Jacobi identity, the
// grading rule [V_i, V_j] in V_{i+j}, generation by layer 1 and positive
// definiteness of the layer-1 inner product. All checks are exact.
ValidationReport validate_algebra(const LieAlgebra& algebra);

enum class BuiltinAlgebra { n4_lower_triangular, heisenberg3 };

std::optional<BuiltinAlgebra> parse_builtin_name(std::string_view name);

// n4_lower_triangular: strictly lower-triangular 4x4 matrices, basis
// (X, Y, Z, U, V, W) = (E21, E32, E43, E31, E42, E41), layers (1,1,1,2,2,3).
// heisenberg3: basis (X, Y, W), [X, Y] = W, layers (1,1,2).
AlgebraPtr builtin(BuiltinAlgebra which);
AlgebraPtr builtin(std::string_view name);

}  // namespace carnot
