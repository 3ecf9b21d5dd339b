#include "carnot/exact_linear.hpp"

namespace carnot {

namespace {

void axpy(SparseRow& v, const Rational& a, const SparseRow& row) {
  for (const auto& [col, val] : row) {
    auto [it, inserted] = v.try_emplace(col, 0);
    it->second -= a * val;
    if (it->second == 0) v.erase(it);
  }
}

void normalize(SparseRow& v) {
  const Rational lead = v.begin()->second;
  if (lead == 1) return;
  for (auto& [col, val] : v) val /= lead;
}

}  // namespace

void EchelonBasis::reduce(SparseRow& v) const {
  // Walk v's support left to right, clearing every pivot column.
  auto it = v.begin();
  while (it != v.end()) {
    auto p = rows_.find(it->first);
    if (p == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Rational a = it->second;
    axpy(v, a, p->second);
    it = v.upper_bound(col);
  }
}

bool EchelonBasis::insert(SparseRow v) {
  reduce(v);
  if (v.empty()) return false;
  normalize(v);
  const std::size_t pivot = v.begin()->first;
  // Keep existing rows free of the new pivot so later reductions stay exact.
  for (auto& [p, row] : rows_) {
    auto hit = row.find(pivot);
    if (hit != row.end()) {
      const Rational a = hit->second;
      axpy(row, a, v);
    }
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

bool EchelonBasis::contains(SparseRow v) const {
  reduce(v);
  return v.empty();
}

std::vector<SparseRow> EchelonBasis::reduced_rows() const {
  std::vector<SparseRow> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

std::vector<std::size_t> EchelonBasis::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseRow> nullspace(const std::vector<SparseRow>& rows, std::size_t cols) {
  EchelonBasis basis;
  for (const auto& r : rows) basis.insert(r);
  const auto reduced = basis.reduced_rows();
  const auto pivots = basis.pivot_columns();

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<SparseRow> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    v.emplace(f, 1);
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      auto hit = reduced[r].find(f);
      if (hit != reduced[r].end()) v.emplace(pivots[r], -hit->second);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<SparseRow> solve(const std::vector<SparseRow>& rows, std::size_t cols,
                               const SparseRow& rhs) {
  EchelonBasis basis;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseRow aug = rows[r];
    auto hit = rhs.find(r);
    if (hit != rhs.end() && hit->second != 0) aug.emplace(cols, hit->second);
    basis.insert(std::move(aug));
  }
  for (const auto& [row_index, value] : rhs) {
    if (row_index >= rows.size() && value != 0) return std::nullopt;
  }
  const auto reduced = basis.reduced_rows();
  const auto pivots = basis.pivot_columns();
  SparseRow x;
  for (std::size_t r = 0; r < reduced.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    auto hit = reduced[r].find(cols);
    if (hit != reduced[r].end()) x.emplace(pivots[r], hit->second);
  }
  return x;
}

std::size_t rank(const std::vector<SparseRow>& rows) {
  EchelonBasis basis;
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

}  // namespace carnot
