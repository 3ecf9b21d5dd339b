#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// Sparse rational vector: column index -> nonzero value.
using SparseRow = std::map<std::size_t, Rational>;

// Row-echelon basis of a subspace of Q^n, grown one vector at a time.
// Stored rows have leading coefficient 1 and distinct leading columns.
class EchelonBasis {
 public:
  // Returns true when `v` was independent of the rows already present.
  bool insert(SparseRow v);
  bool contains(SparseRow v) const;
  std::size_t rank() const { return rows_.size(); }

  // Fully reduced rows (each pivot column zero in every other row), ordered
  // by pivot column.
  std::vector<SparseRow> reduced_rows() const;
  std::vector<std::size_t> pivot_columns() const;

 private:
  void reduce(SparseRow& v) const;

  std::map<std::size_t, SparseRow> rows_;  // keyed by pivot column
};

// Basis of {c : A c = 0} for the matrix whose rows are `rows` and which has
// `cols` columns. One vector per free column f, with entry 1 at f; the basis
// is therefore determined by the column order alone.
std::vector<SparseRow> nullspace(const std::vector<SparseRow>& rows, std::size_t cols);

// Some solution of A c = b with all free variables set to zero, or nullopt
// when the system is inconsistent. `rhs` is indexed by row.
std::optional<SparseRow> solve(const std::vector<SparseRow>& rows, std::size_t cols,
                               const SparseRow& rhs);

std::size_t rank(const std::vector<SparseRow>& rows);

}  // namespace carnot
