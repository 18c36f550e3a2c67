#ifndef QLATTICE_LATTICE_HPP
#define QLATTICE_LATTICE_HPP

#include "qlattice/cyclotomic.hpp"
#include "qlattice/gflinalg.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlattice {

/// All k-dimensional subspaces of F_q^n, each once. Ordered by pivot-row set
/// (lexicographic), then by the free entries read column-major.
inline std::vector<Subspace> enumerate_rank(int n, int k, unsigned q) {
  detail::require_field(q);
  if (n < 0) throw ArgumentError("enumerate_rank: n must be nonnegative");
  detail::require_ambient(static_cast<unsigned>(n));
  std::vector<Subspace> out;
  if (k < 0 || k > n) return out;
  const unsigned un = static_cast<unsigned>(n);
  const unsigned uk = static_cast<unsigned>(k);

  std::vector<unsigned> pivots(uk);
  for (unsigned j = 0; j < uk; ++j) pivots[j] = j;
  while (true) {
    std::vector<bool> is_pivot(un, false);
    for (unsigned p : pivots) is_pivot[p] = true;
    // (column, row) slots that are free in Schubert normal form
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned j = 0; j < uk; ++j) {
      for (unsigned r = pivots[j] + 1; r < un; ++r) {
        if (!is_pivot[r]) free.emplace_back(j, r);
      }
    }
    std::vector<Coords> cols(uk, Coords{});
    for (unsigned j = 0; j < uk; ++j) cols[j][pivots[j]] = 1;
    std::vector<unsigned> digits(free.size(), 0);
    while (true) {
      for (std::size_t f = 0; f < free.size(); ++f) {
        cols[free[f].first][free[f].second] = static_cast<std::uint8_t>(digits[f]);
      }
      out.push_back(Subspace::from_canonical_columns(un, q, cols));
      int f = static_cast<int>(free.size()) - 1;
      while (f >= 0 && digits[f] + 1 == q) digits[f--] = 0;
      if (f < 0) break;
      ++digits[f];
    }
    // next combination
    int j = static_cast<int>(uk) - 1;
    while (j >= 0 && pivots[j] == un - uk + static_cast<unsigned>(j)) --j;
    if (j < 0) break;
    ++pivots[j];
    for (unsigned t = static_cast<unsigned>(j) + 1; t < uk; ++t) pivots[t] = pivots[t - 1] + 1;
  }
  return out;
}

/// Every subspace of F_q^n, rank by rank.
inline std::vector<Subspace> enumerate_all(int n, unsigned q) {
  std::vector<Subspace> out;
  for (int k = 0; k <= n; ++k) {
    auto level = enumerate_rank(n, k, q);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace detail {

// Covers of X are span(X, v) for v running over the lines of the coordinate
// complement of X (the non-pivot rows), so no deduplication is needed.
inline std::vector<Subspace> compute_covers(const Subspace& x) {
  const unsigned n = x.ambient();
  const unsigned q = x.field();
  std::vector<unsigned> rows;
  for (unsigned r = 0; r < n; ++r) {
    if (!x.is_pivot_row(r)) rows.push_back(r);
  }
  std::vector<Subspace> out;
  for (std::size_t lead = 0; lead < rows.size(); ++lead) {
    const std::size_t tail = rows.size() - lead - 1;
    std::vector<unsigned> digits(tail, 0);
    while (true) {
      Coords v{};
      v[rows[lead]] = 1;
      for (std::size_t t = 0; t < tail; ++t) v[rows[lead + 1 + t]] = static_cast<std::uint8_t>(digits[t]);
      out.push_back(x.extended(v));
      int t = static_cast<int>(tail) - 1;
      while (t >= 0 && digits[t] + 1 == q) digits[t--] = 0;
      if (t < 0) break;
      ++digits[t];
    }
  }
  return out;
}

}  // namespace detail

/// Subspaces covering X. Results are memoised in a process-wide table that
/// is safe for concurrent use.
inline const std::vector<Subspace>& covers_of(const Subspace& x) {
  static std::unordered_map<Subspace, std::vector<Subspace>> cache;
  static std::shared_mutex mutex;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(x); it != cache.end()) return it->second;
  }
  auto computed = detail::compute_covers(x);
  std::unique_lock lock(mutex);
  return cache.try_emplace(x, std::move(computed)).first->second;
}

/// A finite formal sum of subspaces of F_q^n with coefficients in Z[omega_q].
/// Zero coefficients are never stored.
class LatticeVector {
 public:
  using Terms = std::map<Subspace, CycInt>;

  LatticeVector() = default;

  LatticeVector(unsigned q, unsigned n) : q_(q), n_(n) {
    detail::require_field(q);
    detail::require_ambient(n);
  }

  static LatticeVector basis(const Subspace& x) {
    LatticeVector v(x.field(), x.ambient());
    v.terms_.emplace(x, CycInt(x.field(), 1));
    return v;
  }

  [[nodiscard]] unsigned field() const { return q_; }
  [[nodiscard]] unsigned ambient() const { return n_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t support_size() const { return terms_.size(); }

  [[nodiscard]] CycInt coeff(const Subspace& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? CycInt(q_) : it->second;
  }

  void add_term(const Subspace& x, const CycInt& c) {
    if (x.ambient() != n_ || x.field() != q_) {
      throw ArgumentError("LatticeVector: term " + x.str() + " has the wrong ambient space");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// True when all terms share one dimension (the zero vector included).
  [[nodiscard]] bool homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = terms_.begin()->first.dim();
    for (const auto& [x, c] : terms_) {
      if (x.dim() != d) return false;
    }
    return true;
  }

  /// Rank of a nonzero homogeneous vector.
  [[nodiscard]] std::optional<unsigned> rank() const {
    if (terms_.empty() || !homogeneous()) return std::nullopt;
    return terms_.begin()->first.dim();
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check_compatible(o);
    for (const auto& [x, c] : o.terms_) add_term(x, c);
    return *this;
  }

  LatticeVector& operator-=(const LatticeVector& o) {
    check_compatible(o);
    for (const auto& [x, c] : o.terms_) add_term(x, -c);
    return *this;
  }

  LatticeVector& operator*=(const BigInt& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [x, c] : terms_) c *= s;
    return *this;
  }

  LatticeVector& operator*=(const CycInt& s) {
    if (s.prime() != q_) throw ArgumentError("LatticeVector: scalar from the wrong cyclotomic ring");
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * s;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const BigInt& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator*(const CycInt& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator-(LatticeVector a) { return a *= BigInt(-1); }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // Mutable access for the basis importer and negative-control tests.
  [[nodiscard]] Terms& mutable_terms() { return terms_; }

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")" + x.str();
    }
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }

 private:
  void check_compatible(const LatticeVector& o) const {
    if (o.q_ != q_ || o.n_ != n_) throw ArgumentError("LatticeVector: ambient or field mismatch");
  }

  unsigned q_ = 2;
  unsigned n_ = 0;
  Terms terms_;
};

/// Coerces a vector over B_q(n) into B_q(n+1).
inline LatticeVector embed(const LatticeVector& v) {
  LatticeVector out(v.field(), v.ambient() + 1);
  for (const auto& [x, c] : v.terms()) out.mutable_terms().emplace_hint(out.mutable_terms().end(), embed(x), c);
  return out;
}

/// The up operator: X -> sum of the subspaces covering X, extended linearly.
inline LatticeVector up_apply(const LatticeVector& v) {
  LatticeVector out(v.field(), v.ambient());
  for (const auto& [x, c] : v.terms()) {
    for (const auto& y : covers_of(x)) out.add_term(y, c);
  }
  return out;
}

/// Hermitian inner product sum_X v(X) conj(w(X)).
inline CycInt inner(const LatticeVector& v, const LatticeVector& w) {
  if (v.field() != w.field() || v.ambient() != w.ambient()) {
    throw ArgumentError("inner: ambient or field mismatch");
  }
  CycInt sum(v.field());
  auto i = v.terms().begin();
  auto j = w.terms().begin();
  while (i != v.terms().end() && j != w.terms().end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      sum += i->second * conj(j->second);
      ++i;
      ++j;
    }
  }
  return sum;
}

inline BigInt norm_sq(const LatticeVector& v) {
  BigInt total = 0;
  CycInt rest(v.field());
  for (const auto& [x, c] : v.terms()) {
    // |m omega^j|^2 = m^2 avoids a full product in the common case
    if (auto mono = as_monomial(c)) {
      total += mono->m * mono->m;
    } else {
      rest += c * conj(c);
    }
  }
  // for p >= 5 a sum of |c|^2 can leave the rationals
  const auto r = rest.as_integer();
  if (!r) throw ArgumentError("norm_sq: inner(v, v) = " + rest.str() + " is not a rational integer");
  return total + *r;
}

/// Rank over Q(omega) of a list of vectors, by fraction-free (Bareiss)
/// elimination with exact division in Z[omega].
inline std::size_t exact_rank(const std::vector<LatticeVector>& vectors) {
  if (vectors.empty()) return 0;
  const unsigned p = vectors.front().field();
  std::map<Subspace, std::size_t> column_of;
  for (const auto& v : vectors) {
    if (v.field() != p || v.ambient() != vectors.front().ambient()) {
      throw ArgumentError("exact_rank: vectors from different spaces");
    }
    for (const auto& [x, c] : v.terms()) column_of.emplace(x, 0);
  }
  std::size_t idx = 0;
  for (auto& [x, col] : column_of) col = idx++;
  const std::size_t rows = vectors.size();
  const std::size_t cols = column_of.size();
  std::vector<std::vector<CycInt>> m(rows, std::vector<CycInt>(cols, CycInt(p)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& [x, c] : vectors[r].terms()) m[r][column_of.at(x)] = c;
  }

  std::size_t rank = 0;
  CycInt prev(p, 1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (!m[r][c].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const CycInt& piv = m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const CycInt factor = m[r][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        CycInt numer = piv * m[r][j] - factor * m[rank][j];
        if (numer.is_zero()) {
          m[r][j] = std::move(numer);
          continue;
        }
        auto quotient = divide_exact(numer, prev);
        if (!quotient) throw std::logic_error("exact_rank: inexact Bareiss division");
        m[r][j] = std::move(*quotient);
      }
      m[r][c] = CycInt(p);
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

}  // namespace qlattice

#endif  // QLATTICE_LATTICE_HPP
