#ifndef QLATTICE_GFLINALG_HPP
#define QLATTICE_GFLINALG_HPP

#include "qlattice/common.hpp"

#include <boost/container/small_vector.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qlattice {

/// Largest ambient dimension a Subspace can live in. Subspaces are stored
/// inline (no heap) so they can be used as cheap map keys.
inline constexpr unsigned kMaxAmbient = 8;

/// A vector of F_q^n, n <= kMaxAmbient; coordinates past n are zero.
using Coords = std::array<std::uint8_t, kMaxAmbient>;

inline Coords make_coords(std::initializer_list<unsigned> values) {
  if (values.size() > kMaxAmbient) throw ArgumentError("make_coords: too many coordinates");
  Coords c{};
  std::size_t i = 0;
  for (unsigned v : values) c[i++] = static_cast<std::uint8_t>(v);
  return c;
}

inline bool is_zero(const Coords& v) {
  for (auto x : v) {
    if (x != 0) return false;
  }
  return true;
}

namespace detail {

inline void require_field(unsigned q) {
  require_prime(q);
  if (q > 251) throw UnsupportedError("q must be below 256");
}

inline void require_ambient(unsigned n) {
  if (n > kMaxAmbient) {
    throw UnsupportedError("ambient dimension " + std::to_string(n) + " exceeds the supported maximum " +
                           std::to_string(kMaxAmbient));
  }
}

inline unsigned inv_mod(unsigned x, unsigned q) {
  // q prime: x^{q-2}
  unsigned result = 1;
  unsigned base = x % q;
  for (unsigned e = q - 2; e > 0; e >>= 1) {
    if (e & 1U) result = result * base % q;
    base = base * base % q;
  }
  return result;
}

// v <- v - s*w (mod q) over the first n coordinates.
inline void axpy_neg(Coords& v, unsigned s, const Coords& w, unsigned n, unsigned q) {
  for (unsigned r = 0; r < n; ++r) {
    v[r] = static_cast<std::uint8_t>((v[r] + (q - s) * w[r]) % q);
  }
}

using VectorList = boost::container::small_vector<Coords, 2 * kMaxAmbient>;

}  // namespace detail

/// Dense n x k matrix over F_q, row-major.
class FqMatrix {
 public:
  FqMatrix(unsigned rows, unsigned cols, unsigned q)
      : rows_(rows), cols_(cols), q_(q), entries_(static_cast<std::size_t>(rows) * cols, 0) {
    detail::require_field(q);
  }

  FqMatrix(unsigned rows, unsigned cols, unsigned q, std::vector<std::uint8_t> row_major)
      : rows_(rows), cols_(cols), q_(q), entries_(std::move(row_major)) {
    detail::require_field(q);
    if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
      throw ArgumentError("FqMatrix: entry count does not match dimensions");
    }
    for (auto& e : entries_) {
      if (e >= q) throw ArgumentError("FqMatrix: entry out of range for F_q");
    }
  }

  [[nodiscard]] unsigned rows() const { return rows_; }
  [[nodiscard]] unsigned cols() const { return cols_; }
  [[nodiscard]] unsigned field() const { return q_; }
  [[nodiscard]] std::uint8_t at(unsigned r, unsigned c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }

  void set(unsigned r, unsigned c, unsigned v) {
    if (v >= q_) throw ArgumentError("FqMatrix::set: entry out of range for F_q");
    entries_[static_cast<std::size_t>(r) * cols_ + c] = static_cast<std::uint8_t>(v);
  }

  [[nodiscard]] Coords column(unsigned c) const {
    detail::require_ambient(rows_);
    Coords v{};
    for (unsigned r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

 private:
  unsigned rows_;
  unsigned cols_;
  unsigned q_;
  std::vector<std::uint8_t> entries_;
};

/// A subspace of F_q^n held as its Schubert normal form: the unique n x k
/// column-reduced echelon matrix whose column space it is. Columns are
/// nonzero, column j has a leading 1 in row pivot(j), pivots strictly
/// increase and the rows at the pivots form an identity block.
///
/// Equality is equality of the canonical matrices. The ordering compares
/// pivot rows first, then the entries column-major, which is the order used
/// by enumerate_rank.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(unsigned n, unsigned q) {
    detail::require_field(q);
    detail::require_ambient(n);
    Subspace s;
    s.q_ = static_cast<std::uint8_t>(q);
    s.n_ = static_cast<std::uint8_t>(n);
    return s;
  }

  static Subspace full(unsigned n, unsigned q) {
    Subspace s = zero(n, q);
    s.k_ = static_cast<std::uint8_t>(n);
    for (unsigned j = 0; j < n; ++j) {
      s.piv_[j] = static_cast<std::uint8_t>(j);
      s.e_[j * n + j] = 1;
    }
    return s;
  }

  /// Canonical form of the span of `vectors` in F_q^n.
  static Subspace span(unsigned n, unsigned q, std::span<const Coords> vectors) {
    Subspace s = zero(n, q);
    detail::VectorList work(vectors.begin(), vectors.end());
    for (auto& v : work) {
      for (unsigned r = 0; r < kMaxAmbient; ++r) {
        if (r >= n) {
          if (v[r] != 0) throw ArgumentError("Subspace::span: coordinate beyond ambient dimension");
        } else {
          v[r] = static_cast<std::uint8_t>(v[r] % q);
        }
      }
    }
    s.reduce_into(work);
    return s;
  }

  static Subspace span(unsigned n, unsigned q, std::initializer_list<Coords> vectors) {
    return span(n, q, std::span<const Coords>(vectors.begin(), vectors.size()));
  }

  [[nodiscard]] unsigned ambient() const { return n_; }
  [[nodiscard]] unsigned dim() const { return k_; }
  [[nodiscard]] unsigned field() const { return q_; }
  [[nodiscard]] unsigned pivot(unsigned j) const { return piv_[j]; }
  [[nodiscard]] std::uint8_t entry(unsigned row, unsigned col) const { return e_[col * n_ + row]; }

  [[nodiscard]] Coords column(unsigned j) const {
    Coords v{};
    for (unsigned r = 0; r < n_; ++r) v[r] = e_[j * n_ + r];
    return v;
  }

  [[nodiscard]] std::vector<Coords> columns() const {
    std::vector<Coords> out;
    out.reserve(k_);
    for (unsigned j = 0; j < k_; ++j) out.push_back(column(j));
    return out;
  }

  [[nodiscard]] FqMatrix matrix() const {
    FqMatrix m(n_, k_, q_);
    for (unsigned j = 0; j < k_; ++j) {
      for (unsigned r = 0; r < n_; ++r) m.set(r, j, entry(r, j));
    }
    return m;
  }

  [[nodiscard]] bool is_pivot_row(unsigned r) const {
    for (unsigned j = 0; j < k_; ++j) {
      if (piv_[j] == r) return true;
    }
    return false;
  }

  /// v minus the combination of columns matching v on the pivot rows; zero
  /// exactly when v lies in the subspace.
  [[nodiscard]] Coords reduce(Coords v) const {
    for (unsigned j = 0; j < k_; ++j) {
      const unsigned s = v[piv_[j]];
      if (s != 0) detail::axpy_neg(v, s, column(j), n_, q_);
    }
    return v;
  }

  [[nodiscard]] bool contains(const Coords& v) const { return is_zero(reduce(v)); }

  /// Span of this subspace together with extra vectors.
  [[nodiscard]] Subspace extended(std::span<const Coords> extra) const {
    detail::VectorList work;
    for (unsigned j = 0; j < k_; ++j) work.push_back(column(j));
    work.insert(work.end(), extra.begin(), extra.end());
    Subspace s = zero(n_, q_);
    s.reduce_into(work);
    return s;
  }

  [[nodiscard]] Subspace extended(const Coords& v) const {
    return extended(std::span<const Coords>(&v, 1));
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = (static_cast<std::size_t>(q_) << 16) ^ (static_cast<std::size_t>(n_) << 8) ^ k_;
    for (unsigned i = 0; i < static_cast<unsigned>(n_) * k_; ++i) h = h * 1099511628211ULL ^ e_[i];
    return h;
  }

  [[nodiscard]] std::string str() const {
    std::string out = "<";
    for (unsigned j = 0; j < k_; ++j) {
      if (j) out += ",";
      for (unsigned r = 0; r < n_; ++r) out += std::to_string(entry(r, j));
    }
    return out + ">/F" + std::to_string(q_) + "^" + std::to_string(n_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Subspace& x) { return os << x.str(); }

  friend auto operator<=>(const Subspace&, const Subspace&) = default;
  friend bool operator==(const Subspace&, const Subspace&) = default;

  // Builds from columns already in Schubert normal form. Used by the
  // enumerators, which generate canonical matrices directly.
  static Subspace from_canonical_columns(unsigned n, unsigned q, std::span<const Coords> cols) {
    Subspace s = zero(n, q);
    s.k_ = static_cast<std::uint8_t>(cols.size());
    for (unsigned j = 0; j < cols.size(); ++j) {
      unsigned r = 0;
      while (r < n && cols[j][r] == 0) ++r;
      s.piv_[j] = static_cast<std::uint8_t>(r);
      for (unsigned i = 0; i < n; ++i) s.e_[j * n + i] = cols[j][i];
    }
    return s;
  }

 private:
  // Row-reduces the vectors (as rows) with pivots scanned top-down; the
  // surviving rows, read as columns, are the Schubert normal form.
  void reduce_into(detail::VectorList& work) {
    const unsigned n = n_;
    const unsigned q = q_;
    unsigned rank = 0;
    for (unsigned r = 0; r < n && rank < work.size(); ++r) {
      std::size_t found = work.size();
      for (std::size_t i = rank; i < work.size(); ++i) {
        if (work[i][r] != 0) {
          found = i;
          break;
        }
      }
      if (found == work.size()) continue;
      std::swap(work[rank], work[found]);
      Coords& row = work[rank];
      const unsigned inv = detail::inv_mod(row[r], q);
      for (unsigned c = r; c < n; ++c) row[c] = static_cast<std::uint8_t>(row[c] * inv % q);
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i != rank && work[i][r] != 0) detail::axpy_neg(work[i], work[i][r], row, n, q);
      }
      piv_[rank] = static_cast<std::uint8_t>(r);
      ++rank;
    }
    k_ = static_cast<std::uint8_t>(rank);
    e_.fill(0);
    for (unsigned j = 0; j < rank; ++j) {
      for (unsigned i = 0; i < n; ++i) e_[j * n + i] = work[j][i];
    }
    for (unsigned j = rank; j < kMaxAmbient; ++j) piv_[j] = 0;
  }

  // Member order fixes the comparison order used by operator<=>.
  std::uint8_t q_ = 2;
  std::uint8_t n_ = 0;
  std::uint8_t k_ = 0;
  std::array<std::uint8_t, kMaxAmbient> piv_{};
  std::array<std::uint8_t, kMaxAmbient * kMaxAmbient> e_{};
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// Schubert normal form of the column space of M.
inline Subspace schubert_normal_form(const FqMatrix& m) {
  detail::require_ambient(m.rows());
  std::vector<Coords> cols;
  cols.reserve(m.cols());
  for (unsigned c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.rows(), m.field(), cols);
}

namespace detail {

inline void require_compatible(const Subspace& x, const Subspace& y, const char* what) {
  if (x.ambient() != y.ambient() || x.field() != y.field()) {
    throw ArgumentError(std::string(what) + ": subspaces live in different ambient spaces");
  }
}

}  // namespace detail

/// X + Y.
inline Subspace subspace_sum(const Subspace& x, const Subspace& y) {
  detail::require_compatible(x, y, "subspace_sum");
  const auto cols = y.columns();
  return x.extended(cols);
}

/// {w : w . x = 0 for all x in X} under the standard dot product.
inline Subspace annihilator(const Subspace& x) {
  const unsigned n = x.ambient();
  const unsigned q = x.field();
  std::vector<Coords> gens;
  for (unsigned r = 0; r < n; ++r) {
    if (x.is_pivot_row(r)) continue;
    // w_r = e_r - sum_j M[r][j] e_{pivot j}
    Coords w{};
    w[r] = 1;
    for (unsigned j = 0; j < x.dim(); ++j) {
      w[x.pivot(j)] = static_cast<std::uint8_t>((q - x.entry(r, j)) % q);
    }
    gens.push_back(w);
  }
  return Subspace::span(n, q, gens);
}

inline Subspace intersect(const Subspace& x, const Subspace& y) {
  detail::require_compatible(x, y, "intersect");
  return annihilator(subspace_sum(annihilator(x), annihilator(y)));
}

/// dim(X cap Y) via dim X + dim Y - dim(X + Y).
inline unsigned intersection_dim(const Subspace& x, const Subspace& y) {
  return x.dim() + y.dim() - subspace_sum(x, y).dim();
}

/// Y subset of X.
inline bool contains(const Subspace& x, const Subspace& y) {
  detail::require_compatible(x, y, "contains");
  if (y.dim() > x.dim()) return false;
  for (unsigned j = 0; j < y.dim(); ++j) {
    if (!x.contains(y.column(j))) return false;
  }
  return true;
}

/// Y covers X: X subset of Y and dim Y = dim X + 1.
inline bool covers(const Subspace& y, const Subspace& x) {
  return y.dim() == x.dim() + 1 && contains(y, x);
}

/// The same subspace viewed inside F_q^{n+1} (a zero coordinate appended).
inline Subspace embed(const Subspace& x) {
  detail::require_ambient(x.ambient() + 1);
  const auto cols = x.columns();
  return Subspace::from_canonical_columns(x.ambient() + 1, x.field(), cols);
}

/// span(X, e_{n+1}) inside F_q^{n+1}.
inline Subspace hat(const Subspace& x) {
  detail::require_ambient(x.ambient() + 1);
  auto cols = x.columns();
  Coords last{};
  last[x.ambient()] = 1;
  cols.push_back(last);
  return Subspace::from_canonical_columns(x.ambient() + 1, x.field(), cols);
}

/// Image of Y under the map F_q^{n-1} -> X sending e_j to column j of the
/// Schubert matrix of the hyperplane X.
inline Subspace mu_apply(const Subspace& x, const Subspace& y) {
  if (x.ambient() == 0 || x.dim() + 1 != x.ambient()) {
    throw ArgumentError("mu_apply: X must be a hyperplane");
  }
  if (y.ambient() + 1 != x.ambient() || y.field() != x.field()) {
    throw ArgumentError("mu_apply: Y must live in F_q^{n-1}");
  }
  const unsigned n = x.ambient();
  const unsigned q = x.field();
  std::vector<Coords> image;
  image.reserve(y.dim());
  for (unsigned c = 0; c < y.dim(); ++c) {
    Coords v{};
    for (unsigned i = 0; i < y.ambient(); ++i) {
      const unsigned s = y.entry(i, c);
      if (s == 0) continue;
      for (unsigned r = 0; r < n; ++r) v[r] = static_cast<std::uint8_t>((v[r] + s * x.entry(r, i)) % q);
    }
    image.push_back(v);
  }
  return Subspace::span(n, q, image);
}

/// Every vector of F_q^n in lexicographic order (first coordinate most
/// significant).
inline std::vector<Coords> all_vectors(unsigned n, unsigned q) {
  detail::require_ambient(n);
  std::vector<Coords> out;
  Coords v{};
  while (true) {
    out.push_back(v);
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && v[i] + 1U == q) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

inline unsigned dot(const Coords& a, const Coords& b, unsigned n, unsigned q) {
  unsigned s = 0;
  for (unsigned i = 0; i < n; ++i) s = (s + a[i] * b[i]) % q;
  return s;
}

}  // namespace qlattice

template <>
struct std::hash<qlattice::Subspace> {
  std::size_t operator()(const qlattice::Subspace& s) const { return s.hash(); }
};

#endif  // QLATTICE_GFLINALG_HPP
