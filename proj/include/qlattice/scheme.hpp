#ifndef QLATTICE_SCHEME_HPP
#define QLATTICE_SCHEME_HPP

#include "qlattice/lattice.hpp"
#include "qlattice/parallel.hpp"
#include "qlattice/qcombinatorics.hpp"
#include "qlattice/report.hpp"
#include "qlattice/sjb.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qlattice {

namespace detail {

inline void require_half(unsigned n, unsigned m) {
  if (2 * m > n) throw ArgumentError("m must satisfy 0 <= m <= n/2");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Grassmann scheme

/// The m-subspaces of F_q^n with the relations R_i = {(X, Y) : dim(X cap Y) = m - i},
/// 0 <= i <= m. Relation indices are tabulated once on construction.
class GrassmannScheme {
 public:
  GrassmannScheme(unsigned n, unsigned m, unsigned q)
      : n_(n), m_(m), q_(q), vertices_(enumerate_rank(static_cast<int>(n), static_cast<int>(m), q)) {
    if (m > n) throw ArgumentError("GrassmannScheme: m exceeds n");
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
    const std::size_t count = vertices_.size();
    relation_.assign(count * count, 0);
    parallel_for(count, [&](std::size_t a) {
      for (std::size_t b = 0; b < count; ++b) {
        relation_[a * count + b] = static_cast<std::uint8_t>(m_ - intersection_dim(vertices_[a], vertices_[b]));
      }
    });
  }

  [[nodiscard]] unsigned n() const { return n_; }
  [[nodiscard]] unsigned m() const { return m_; }
  [[nodiscard]] unsigned field() const { return q_; }
  [[nodiscard]] const std::vector<Subspace>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] unsigned relation(std::size_t a, std::size_t b) const { return relation_[a * size() + b]; }

  [[nodiscard]] std::size_t index_of(const Subspace& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw ArgumentError("GrassmannScheme: " + x.str() + " is not a vertex");
    return it->second;
  }

  /// A_0 v, ..., A_m v in one pass over the support of v.
  [[nodiscard]] std::vector<LatticeVector> apply_all(const LatticeVector& v) const {
    check_input(v);
    std::vector<std::size_t> support;
    std::vector<const CycInt*> coeffs;
    for (const auto& [x, c] : v.terms()) {
      support.push_back(index_of(x));
      coeffs.push_back(&c);
    }
    std::vector<LatticeVector> out(m_ + 1, LatticeVector(q_, n_));
    for (std::size_t a = 0; a < size(); ++a) {
      std::vector<CycInt> acc(m_ + 1, CycInt(q_));
      for (std::size_t s = 0; s < support.size(); ++s) acc[relation(a, support[s])] += *coeffs[s];
      for (unsigned i = 0; i <= m_; ++i) {
        if (!acc[i].is_zero()) out[i].mutable_terms().emplace_hint(out[i].mutable_terms().end(), vertices_[a], acc[i]);
      }
    }
    return out;
  }

  /// (A_i v)(X) = sum of v(Y) over Y with dim(X cap Y) = m - i.
  [[nodiscard]] LatticeVector apply(unsigned i, const LatticeVector& v) const {
    if (i > m_) throw ArgumentError("adjacency_apply: relation index exceeds m");
    return apply_all(v)[i];
  }

  /// Number of Y related to a fixed X by R_i.
  [[nodiscard]] std::size_t valency(unsigned i) const {
    std::size_t count = 0;
    for (std::size_t b = 0; b < size(); ++b) count += relation(0, b) == i ? 1 : 0;
    return count;
  }

 private:
  void check_input(const LatticeVector& v) const {
    if (v.field() != q_ || v.ambient() != n_) throw ArgumentError("adjacency_apply: vector over the wrong lattice");
    if (!v.homogeneous() || (!v.is_zero() && *v.rank() != m_)) {
      throw ArgumentError("adjacency_apply: vector must be homogeneous of rank m");
    }
  }

  unsigned n_;
  unsigned m_;
  unsigned q_;
  std::vector<Subspace> vertices_;
  std::map<Subspace, std::size_t> index_;
  std::vector<std::uint8_t> relation_;
};

inline LatticeVector adjacency_apply(unsigned n, unsigned m, unsigned i, const LatticeVector& v) {
  return GrassmannScheme(n, m, v.field()).apply(i, v);
}

/// Eigenvalues (lambda_0, ..., lambda_m) of A_0..A_m on the vectors of
/// J_q(n, m) whose chain starts at `start_rank`.
struct EigenRow {
  unsigned start_rank = 0;
  std::vector<BigInt> eigenvalues;
};

struct EigenTable {
  std::vector<EigenRow> rows;
  Report report;
};

/// Reads off A_i v = lambda v for every rank-m vector v of the basis,
/// confirming the eigen-equation at every coordinate and that lambda only
/// depends on the start rank of v's chain.
inline EigenTable eigentable(unsigned n, unsigned m, const SymmetricJordanBasis& b) {
  detail::require_half(n, m);
  if (b.n != n) throw ArgumentError("eigentable: basis is for a different n");
  const GrassmannScheme scheme(n, m, b.q);
  const auto slice = b.slice(m);

  struct Extracted {
    bool ok = true;
    std::string failure;
    std::vector<BigInt> values;
  };
  std::vector<Extracted> extracted(slice.size());
  parallel_for(slice.size(), [&](std::size_t s) {
    const LatticeVector& v = *slice[s].second;
    Extracted& e = extracted[s];
    if (v.is_zero() || !v.homogeneous() || *v.rank() != m) {
      e.ok = false;
      e.failure = "slice vector " + std::to_string(s) + " is not a nonzero rank-m vector";
      return;
    }
    const auto images = scheme.apply_all(v);
    const auto& [probe, probe_coeff] = *v.terms().begin();
    for (unsigned i = 0; i <= m; ++i) {
      const auto lambda = divide_exact(images[i].coeff(probe), probe_coeff);
      const auto as_int = lambda ? lambda->as_integer() : std::nullopt;
      if (!as_int || images[i] != CycInt(b.q, *as_int) * v) {
        e.ok = false;
        e.failure = "slice vector " + std::to_string(s) + " is not an eigenvector of A_" + std::to_string(i);
        return;
      }
      e.values.push_back(*as_int);
    }
  });

  EigenTable table;
  std::map<unsigned, std::vector<BigInt>> rows;
  for (std::size_t s = 0; s < slice.size(); ++s) {
    const Extracted& e = extracted[s];
    table.report.expect("common_eigenvector", e.ok, [&] { return e.failure; });
    if (!e.ok) continue;
    const unsigned k = slice[s].first;
    auto [it, inserted] = rows.try_emplace(k, e.values);
    table.report.expect("eigenvalue_depends_on_start_rank_only", inserted || it->second == e.values,
                        [&] { return "start rank " + std::to_string(k) + " has two different rows"; });
  }
  for (auto& [k, values] : rows) table.rows.push_back(EigenRow{k, values});

  table.report.expect("row_count", table.rows.size() == m + 1,
                      [&] { return std::to_string(table.rows.size()) + " rows, expected m+1"; });
  bool distinct = true;
  for (std::size_t a = 0; a < table.rows.size(); ++a) {
    for (std::size_t c = a + 1; c < table.rows.size(); ++c) {
      if (table.rows[a].eigenvalues == table.rows[c].eigenvalues) distinct = false;
    }
  }
  table.report.record("rows_distinct", distinct, "two start ranks share an eigenvalue row");
  return table;
}

/// Laplacian eigenvalues D - lambda_1 read from an eigentable (D = valency of
/// A_1, which is lambda_1 on the start-rank-0 row).
inline std::vector<std::pair<unsigned, BigInt>> laplacian_from_table(const EigenTable& table) {
  std::vector<std::pair<unsigned, BigInt>> out;
  if (table.rows.empty()) return out;
  // m = 0 is a single vertex with no relation 1
  auto adjacency = [](const EigenRow& row) { return row.eigenvalues.size() < 2 ? BigInt(0) : row.eigenvalues[1]; };
  const BigInt degree = adjacency(table.rows.front());
  for (const auto& row : table.rows) out.emplace_back(row.start_rank, degree - adjacency(row));
  return out;
}

/// {(eigenvalue, multiplicity)} of the Laplacian of C_q(n, m):
/// [k]_q [n-k+1]_q with multiplicity [n,k] - [n,k-1], k = 0..m.
inline std::vector<std::pair<BigInt, BigInt>> laplacian_spectrum(unsigned n, unsigned m, unsigned q) {
  detail::require_half(n, m);
  std::vector<std::pair<BigInt, BigInt>> out;
  for (unsigned k = 0; k <= m; ++k) {
    out.emplace_back(q_int(k, q) * q_int(n - k + 1, q),
                     q_binomial(n, k, q) - q_binomial(n, static_cast<long long>(k) - 1, q));
  }
  return out;
}

/// Rooted spanning trees of C_q(n, m) from the spectrum.
inline BigInt rooted_tree_count(unsigned n, unsigned m, unsigned q) {
  detail::require_half(n, m);
  BigInt product = 1;
  for (unsigned k = 1; k <= m; ++k) {
    const BigInt base = q_int(k, q) * q_int(n - k + 1, q);
    const BigInt exponent = q_binomial(n, k, q) - q_binomial(n, static_cast<long long>(k) - 1, q);
    product *= ipow(base, exponent.convert_to<unsigned>());
  }
  return product;
}

// ---------------------------------------------------------------------------
// Graphs and the matrix-tree theorem

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

/// The Grassmann graph C_q(n, m): m-subspaces, adjacent when they meet in
/// dimension m - 1.
inline Graph grassmann_graph(unsigned n, unsigned m, unsigned q) {
  const GrassmannScheme scheme(n, m, q);
  Graph g{scheme.size(), {}};
  for (std::size_t a = 0; a < scheme.size(); ++a) {
    for (std::size_t b = a + 1; b < scheme.size(); ++b) {
      if (scheme.relation(a, b) == 1) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

/// An m-subset of {1..n} as a bitmask.
struct SubsetValue {
  unsigned n = 0;
  std::uint32_t mask = 0;

  [[nodiscard]] unsigned size() const { return static_cast<unsigned>(std::popcount(mask)); }
};

inline std::vector<SubsetValue> enumerate_subsets(unsigned n, unsigned m) {
  if (n > 24) throw UnsupportedError("enumerate_subsets: n too large");
  std::vector<SubsetValue> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) == m) out.push_back(SubsetValue{n, mask});
  }
  return out;
}

/// The Johnson graph C(n, m): m-subsets, adjacent when they share m - 1 points.
inline Graph johnson_graph(unsigned n, unsigned m) {
  const auto vs = enumerate_subsets(n, m);
  Graph g{vs.size(), {}};
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (static_cast<unsigned>(std::popcount(vs[a].mask & vs[b].mask)) + 1 == m) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

inline IntMatrix laplacian_matrix(const Graph& g) {
  IntMatrix lap(g.vertices, std::vector<BigInt>(g.vertices, 0));
  for (const auto& [a, b] : g.edges) {
    if (a == b) throw ArgumentError("laplacian_matrix: loops are not allowed");
    lap[a][a] += 1;
    lap[b][b] += 1;
    lap[a][b] -= 1;
    lap[b][a] -= 1;
  }
  return lap;
}

/// Determinant by Bareiss fraction-free elimination.
inline BigInt bareiss_determinant(IntMatrix m) {
  const std::size_t size = m.size();
  if (size == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < size && m[swap_with][k] == 0) ++swap_with;
      if (swap_with == size) return 0;
      std::swap(m[k], m[swap_with]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[size - 1][size - 1];
}

/// |V| times any cofactor of the Laplacian: the number of rooted spanning
/// trees.
inline BigInt matrix_tree_oracle(const Graph& g) {
  if (g.vertices == 0) throw ArgumentError("matrix_tree_oracle: empty graph");
  IntMatrix lap = laplacian_matrix(g);
  lap.pop_back();
  for (auto& row : lap) row.pop_back();
  return BigInt(g.vertices) * bareiss_determinant(std::move(lap));
}

// ---------------------------------------------------------------------------
// Up-down counts and the cardinality identities

/// |UD(X)| = |DU(X')| = [k]_q [n-k+1]_q.
inline BigInt ud_du_count(unsigned n, unsigned k, unsigned q) {
  if (k < 1 || k > n) throw ArgumentError("ud_du_count: need 1 <= k <= n");
  return q_int(k, q) * q_int(n - k + 1, q);
}

/// Pairs (Y, Z) with X >= Y <= Z, dim Y = dim X - 1, dim Z = dim X.
inline BigInt enumerate_ud(const Subspace& x) {
  if (x.dim() == 0) throw ArgumentError("enumerate_ud: X must be nonzero");
  BigInt count = 0;
  for (const auto& y : enumerate_rank(static_cast<int>(x.ambient()), static_cast<int>(x.dim()) - 1, x.field())) {
    if (contains(x, y)) count += covers_of(y).size();
  }
  return count;
}

/// Pairs (Y', Z') with X' <= Y' >= Z', dim Y' = dim X' + 1, dim Z' = dim X'.
inline BigInt enumerate_du(const Subspace& x) {
  if (x.dim() >= x.ambient()) throw ArgumentError("enumerate_du: X must be proper");
  BigInt count = 0;
  const auto same_dim = enumerate_rank(static_cast<int>(x.ambient()), static_cast<int>(x.dim()), x.field());
  for (const auto& y : covers_of(x)) {
    for (const auto& z : same_dim) count += contains(y, z) ? 1 : 0;
  }
  return count;
}

inline std::uint64_t enumerate_ud(const SubsetValue& x) {
  std::uint64_t count = 0;
  for (unsigned i = 0; i < x.n; ++i) {
    if (!(x.mask >> i & 1U)) continue;
    const std::uint32_t y = x.mask & ~(1U << i);
    for (unsigned j = 0; j < x.n; ++j) count += (y >> j & 1U) ? 0 : 1;
  }
  return count;
}

inline std::uint64_t enumerate_du(const SubsetValue& x) {
  std::uint64_t count = 0;
  for (unsigned i = 0; i < x.n; ++i) {
    if (x.mask >> i & 1U) continue;
    const std::uint32_t y = x.mask | (1U << i);
    count += static_cast<std::uint64_t>(std::popcount(y));
  }
  return count;
}

/// Both sides of a cardinality identity, as exact integers.
struct CardinalityCheck {
  BigInt lhs;
  BigInt rhs;

  [[nodiscard]] bool holds() const { return lhs == rhs; }
};

/// |T_q(n,m)| * prod_{X in B_q(n)_{m-1}} |DU(X)|  versus
/// |T_q(n,m-1)| * prod_{X in B_q(n)_m} |UD(X)|, with tree counts from the
/// matrix-tree theorem and up-down counts from enumeration.
inline CardinalityCheck theorem_gg_sides(unsigned n, unsigned m, unsigned q) {
  if (m < 1) throw ArgumentError("theorem_gg_sides: m must be at least 1");
  detail::require_half(n, m);
  CardinalityCheck check;
  check.lhs = matrix_tree_oracle(grassmann_graph(n, m, q));
  for (const auto& x : enumerate_rank(static_cast<int>(n), static_cast<int>(m) - 1, q)) check.lhs *= enumerate_du(x);
  check.rhs = matrix_tree_oracle(grassmann_graph(n, m - 1, q));
  for (const auto& x : enumerate_rank(static_cast<int>(n), static_cast<int>(m), q)) check.rhs *= enumerate_ud(x);
  return check;
}

inline bool check_theorem_gg(unsigned n, unsigned m, unsigned q) { return theorem_gg_sides(n, m, q).holds(); }

/// The same identity for the Johnson graphs and subsets.
inline CardinalityCheck theorem_jg_sides(unsigned n, unsigned m) {
  if (m < 1) throw ArgumentError("theorem_jg_sides: m must be at least 1");
  detail::require_half(n, m);
  CardinalityCheck check;
  check.lhs = matrix_tree_oracle(johnson_graph(n, m));
  for (const auto& x : enumerate_subsets(n, m - 1)) check.lhs *= enumerate_du(x);
  check.rhs = matrix_tree_oracle(johnson_graph(n, m - 1));
  for (const auto& x : enumerate_subsets(n, m)) check.rhs *= enumerate_ud(x);
  return check;
}

inline bool check_theorem_jg(unsigned n, unsigned m) { return theorem_jg_sides(n, m).holds(); }

/// Johnson analogues of the spectrum and tree formula (q = 1):
/// k(n-k+1) with multiplicity C(n,k) - C(n,k-1).
inline std::vector<std::pair<BigInt, BigInt>> johnson_laplacian_spectrum(unsigned n, unsigned m) {
  detail::require_half(n, m);
  auto binom = [](unsigned a, long long b) -> BigInt {
    if (b < 0 || b > static_cast<long long>(a)) return 0;
    BigInt r = 1;
    for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  std::vector<std::pair<BigInt, BigInt>> out;
  for (unsigned k = 0; k <= m; ++k) {
    out.emplace_back(BigInt(k) * (n - k + 1), binom(n, k) - binom(n, static_cast<long long>(k) - 1));
  }
  return out;
}

inline BigInt johnson_rooted_tree_count(unsigned n, unsigned m) {
  BigInt product = 1;
  for (const auto& [value, mult] : johnson_laplacian_spectrum(n, m)) {
    if (value != 0) product *= ipow(value, mult.convert_to<unsigned>());
  }
  return product;
}

}  // namespace qlattice

#endif  // QLATTICE_SCHEME_HPP
