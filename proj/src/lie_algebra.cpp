#include "carnot/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "carnot/errors.hpp"
#include "carnot/exact_linear.hpp"

namespace carnot {

namespace {

void accumulate(SparseVector& v, std::size_t k, const Rational& c) {
  for (auto& [idx, val] : v) {
    if (idx == k) {
      val += c;
      if (val == 0) v.erase(std::find_if(v.begin(), v.end(), [k](const auto& e) { return e.first == k; }));
      return;
    }
  }
  if (c != 0) v.emplace_back(k, c);
}

std::vector<Rational> bracket_coords(const LieAlgebra& alg, const std::vector<Rational>& a,
                                     const std::vector<Rational>& b) {
  const std::size_t n = alg.dim();
  std::vector<Rational> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0 || i == j) continue;
      const Rational s = a[i] * b[j];
      for (const auto& [k, c] : alg.bracket_of_basis(i, j)) out[k] += s * c;
    }
  }
  return out;
}

SparseRow to_row(const std::vector<Rational>& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r.emplace(i, v[i]);
  return r;
}

std::string triple_text(const LieAlgebra& alg, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + alg.name(i) + "," + alg.name(j) + "," + alg.name(k) + ")";
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> names, std::vector<int> layers,
                       std::vector<StructureConstant> constants,
                       std::vector<std::vector<Rational>> inner_product,
                       std::vector<std::string> casimirs)
    : names_(std::move(names)),
      layers_(std::move(layers)),
      supplied_(std::move(constants)),
      casimirs_(std::move(casimirs)) {
  const std::size_t n = names_.size();
  if (n == 0) throw UsageError("algebra dimension must be positive");
  if (layers_.size() != n) throw UsageError("layers must have one entry per basis element");
  for (int l : layers_)
    if (l < 1) throw UsageError("layers must be positive integers");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (names_[a] == names_[b]) throw UsageError("duplicate basis name '" + names_[a] + "'");

  for (const auto& c : supplied_)
    if (c.i >= n || c.j >= n || c.k >= n)
      throw UsageError("structure constant index out of range");

  // Canonical table: entries with i < j win; i > j entries only fill gaps.
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Rational>> canon;
  std::map<std::pair<std::size_t, std::size_t>, bool> has_forward;
  for (const auto& c : supplied_)
    if (c.i < c.j) has_forward[{c.i, c.j}] = true;
  for (const auto& c : supplied_) {
    if (c.i == c.j || c.value == 0) continue;
    if (c.i < c.j) {
      canon[{c.i, c.j}][c.k] += c.value;
    } else if (!has_forward.count({c.j, c.i})) {
      canon[{c.j, c.i}][c.k] -= c.value;
    }
  }
  table_.assign(n * n, {});
  for (const auto& [key, entries] : canon) {
    for (const auto& [k, val] : entries) {
      if (val == 0) continue;
      accumulate(table_[key.first * n + key.second], k, val);
      accumulate(table_[key.second * n + key.first], k, -val);
    }
  }
  for (auto& v : table_) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  for (std::size_t i = 0; i < n; ++i)
    if (layers_[i] == 1) generating_.push_back(i);

  const std::size_t g = generating_.size();
  if (inner_product.empty()) {
    inner_product_.assign(g, std::vector<Rational>(g, 0));
    for (std::size_t a = 0; a < g; ++a) inner_product_[a][a] = 1;
  } else {
    if (inner_product.size() != g)
      throw UsageError("inner product must be square on the layer-1 indices");
    for (const auto& row : inner_product)
      if (row.size() != g) throw UsageError("inner product must be square on the layer-1 indices");
    inner_product_ = std::move(inner_product);
  }
}

std::optional<std::size_t> LieAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

int LieAlgebra::depth() const { return *std::max_element(layers_.begin(), layers_.end()); }

Rational LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& [idx, val] : bracket_of_basis(i, j))
    if (idx == k) return val;
  return 0;
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  return a.names_ == b.names_ && a.layers_ == b.layers_ && a.table_ == b.table_ &&
         a.inner_product_ == b.inner_product_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<Rational> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw UsageError("algebra element needs an algebra");
  if (coords_.size() != algebra_->dim())
    throw UsageError("coordinate vector length does not match algebra dimension");
}

AlgebraElement AlgebraElement::basis(AlgebraPtr algebra, std::size_t i) {
  std::vector<Rational> c(algebra->dim(), 0);
  c.at(i) = 1;
  return AlgebraElement(std::move(algebra), std::move(c));
}

AlgebraElement AlgebraElement::zero(AlgebraPtr algebra) {
  std::vector<Rational> c(algebra->dim(), 0);
  return AlgebraElement(std::move(algebra), std::move(c));
}

bool AlgebraElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

namespace {
void require_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (!same_algebra(a.algebra(), b.algebra()))
    throw UsageError("operands belong to different algebras");
}
}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  auto c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return AlgebraElement(a.algebra_, std::move(c));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  auto c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
  return AlgebraElement(a.algebra_, std::move(c));
}

AlgebraElement operator*(const Rational& s, const AlgebraElement& a) {
  auto c = a.coords_;
  for (auto& x : c) x *= s;
  return AlgebraElement(a.algebra_, std::move(c));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.coords_ == b.coords_;
}

std::string to_string(const AlgebraElement& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    Rational c = a[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (c != 1) os << to_string(c) << "*";
    os << a.algebra()->name(i);
    first = false;
  }
  return first ? "0" : os.str();
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  return AlgebraElement(a.algebra(), bracket_coords(*a.algebra(), a.coords(), b.coords()));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::index_range: return "index_range";
    case ViolationKind::antisymmetry: return "antisymmetry";
    case ViolationKind::jacobi: return "jacobi";
    case ViolationKind::grading: return "grading";
    case ViolationKind::generation: return "generation";
    case ViolationKind::inner_product: return "inner_product";
  }
  return "unknown";
}

ValidationReport validate_algebra(const LieAlgebra& alg) {
  ValidationReport report;
  const std::size_t n = alg.dim();

  // Antisymmetry on the supplied constants.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> supplied;
  for (const auto& c : alg.supplied_constants()) supplied[{c.i, c.j, c.k}] += c.value;
  for (const auto& [key, value] : supplied) {
    const auto [i, j, k] = key;
    if (i == j) {
      if (value != 0)
        report.violations.push_back({ViolationKind::antisymmetry, {i, j, k},
                                     "[e,e] must vanish: " + triple_text(alg, i, j, k)});
      continue;
    }
    auto other = supplied.find({j, i, k});
    if (other == supplied.end()) continue;
    if (i > j) continue;  // report each unordered pair once
    if (value != -other->second)
      report.violations.push_back({ViolationKind::antisymmetry, {i, j, k},
                                   "c_ij^k != -c_ji^k at " + triple_text(alg, i, j, k)});
  }

  // Grading.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& [k, c] : alg.bracket_of_basis(i, j))
        if (alg.layer(k) != alg.layer(i) + alg.layer(j))
          report.violations.push_back({ViolationKind::grading, {i, j, k},
                                       "bracket leaves the grading at " + triple_text(alg, i, j, k)});

  // Jacobi.
  auto unit = [n](std::size_t i) {
    std::vector<Rational> v(n, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto t1 = bracket_coords(alg, unit(i), bracket_coords(alg, unit(j), unit(k)));
        auto t2 = bracket_coords(alg, unit(j), bracket_coords(alg, unit(k), unit(i)));
        auto t3 = bracket_coords(alg, unit(k), bracket_coords(alg, unit(i), unit(j)));
        for (std::size_t m = 0; m < n; ++m) {
          if (t1[m] + t2[m] + t3[m] != 0) {
            report.violations.push_back({ViolationKind::jacobi, {i, j, k},
                                         "Jacobi identity fails at " + triple_text(alg, i, j, k)});
            break;
          }
        }
      }

  // Generation: iterated brackets of layer 1 must span everything.
  if (alg.generating_indices().empty()) {
    report.violations.push_back({ViolationKind::generation, {}, "no layer-1 basis elements"});
  } else {
    EchelonBasis span;
    std::vector<std::vector<Rational>> frontier;
    for (auto g : alg.generating_indices()) {
      span.insert(to_row(unit(g)));
      frontier.push_back(unit(g));
    }
    while (!frontier.empty()) {
      std::vector<std::vector<Rational>> next;
      for (const auto& f : frontier)
        for (auto g : alg.generating_indices()) {
          auto b = bracket_coords(alg, unit(g), f);
          if (span.insert(to_row(b))) next.push_back(std::move(b));
        }
      frontier = std::move(next);
    }
    if (span.rank() != n) {
      for (std::size_t i = 0; i < n; ++i)
        if (!span.contains(to_row(unit(i))))
          report.violations.push_back({ViolationKind::generation, {i},
                                       alg.name(i) + " is not generated by layer 1"});
    }
  }

  // Inner product: symmetric, positive definite (leading principal minors).
  const auto& ip = alg.inner_product();
  const std::size_t g = ip.size();
  bool symmetric = true;
  for (std::size_t a = 0; a < g && symmetric; ++a)
    for (std::size_t b = 0; b < g; ++b)
      if (ip[a][b] != ip[b][a]) {
        symmetric = false;
        report.violations.push_back({ViolationKind::inner_product, {a, b},
                                     "inner product is not symmetric"});
        break;
      }
  if (symmetric) {
    // Cholesky-free check: Gaussian elimination without pivoting keeps all
    // pivots positive iff the matrix is positive definite.
    auto m = ip;
    for (std::size_t p = 0; p < g; ++p) {
      if (m[p][p] <= 0) {
        report.violations.push_back({ViolationKind::inner_product, {p},
                                     "inner product is not positive definite"});
        break;
      }
      for (std::size_t r = p + 1; r < g; ++r) {
        const Rational f = m[r][p] / m[p][p];
        for (std::size_t c = p; c < g; ++c) m[r][c] -= f * m[p][c];
      }
    }
  }

  return report;
}

std::optional<BuiltinAlgebra> parse_builtin_name(std::string_view name) {
  if (name == "n4" || name == "n4_lower_triangular") return BuiltinAlgebra::n4_lower_triangular;
  if (name == "heisenberg3" || name == "heisenberg") return BuiltinAlgebra::heisenberg3;
  return std::nullopt;
}

AlgebraPtr builtin(BuiltinAlgebra which) {
  switch (which) {
    case BuiltinAlgebra::n4_lower_triangular: {
      // Commutators of E21, E32, E43, E31, E42, E41:
      //   [X,Y] = -U, [Y,Z] = -V, [X,V] = -W, [Z,U] = W.
      enum { X, Y, Z, U, V, W };
      std::vector<StructureConstant> c{
          {X, Y, U, -1}, {Y, Z, V, -1}, {X, V, W, -1}, {Z, U, W, 1}};
      return std::make_shared<const LieAlgebra>(
          std::vector<std::string>{"X", "Y", "Z", "U", "V", "W"},
          std::vector<int>{1, 1, 1, 2, 2, 3}, std::move(c),
          std::vector<std::vector<Rational>>{},
          std::vector<std::string>{"w", "u*v - y*w"});
    }
    case BuiltinAlgebra::heisenberg3: {
      std::vector<StructureConstant> c{{0, 1, 2, 1}};
      return std::make_shared<const LieAlgebra>(std::vector<std::string>{"X", "Y", "W"},
                                                std::vector<int>{1, 1, 2}, std::move(c),
                                                std::vector<std::vector<Rational>>{},
                                                std::vector<std::string>{"w"});
    }
  }
  throw UsageError("unknown builtin algebra");
}

AlgebraPtr builtin(std::string_view name) {
  auto which = parse_builtin_name(name);
  if (!which) throw UsageError("unknown builtin algebra '" + std::string(name) + "'");
  return builtin(*which);
}

}  // namespace carnot
