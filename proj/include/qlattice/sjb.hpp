#ifndef QLATTICE_SJB_HPP
#define QLATTICE_SJB_HPP

#include "qlattice/haction.hpp"
#include "qlattice/parallel.hpp"
#include "qlattice/qcombinatorics.hpp"
#include "qlattice/report.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qlattice {

/// x_k, ..., x_{n-k} with U x_u = x_{u+1} and U x_{n-k} = 0.
struct JordanChain {
  unsigned start_rank = 0;
  std::vector<LatticeVector> vectors;

  [[nodiscard]] unsigned end_rank() const { return start_rank + static_cast<unsigned>(vectors.size()) - 1; }
  [[nodiscard]] const LatticeVector& at_rank(unsigned u) const { return vectors.at(u - start_rank); }
};

/// An orthogonal symmetric Jordan basis of V(B_q(n)). Vectors are kept
/// unnormalised, with coefficients of the form m * omega^j.
struct SymmetricJordanBasis {
  unsigned q = 2;
  unsigned n = 0;
  std::vector<JordanChain> chains;

  [[nodiscard]] std::size_t vector_count() const {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.vectors.size();
    return total;
  }

  /// Vectors of rank m with the start rank of their chain, in chain order.
  [[nodiscard]] std::vector<std::pair<unsigned, const LatticeVector*>> slice(unsigned m) const {
    std::vector<std::pair<unsigned, const LatticeVector*>> out;
    for (const auto& c : chains) {
      if (c.start_rank <= m && m <= c.end_rank()) out.emplace_back(c.start_rank, &c.at_rank(m));
    }
    return out;
  }
};

/// Squared ratio |x_{u+1}|^2 / |x_u|^2 along a chain starting at rank k:
/// q^k [u+1-k]_q [n-k-u]_q.
inline BigInt singular_value_sq(unsigned q, unsigned n, unsigned k, unsigned u) {
  if (!(k <= u && u + k < n)) {
    throw ArgumentError("singular_value_sq: need 0 <= k <= u < n-k");
  }
  return ipow(BigInt(q), k) * q_int(u + 1 - k, q) * q_int(n - k - u, q);
}

namespace detail {

inline SymmetricJordanBasis base_basis(unsigned n, unsigned q) {
  SymmetricJordanBasis b{q, n, {}};
  JordanChain chain{0, {LatticeVector::basis(Subspace::zero(n, q))}};
  if (n == 1) chain.vectors.push_back(LatticeVector::basis(Subspace::full(1, q)));
  b.chains.push_back(std::move(chain));
  return b;
}

// Chains of V(B_q(n)) + W(0) obtained from one chain of J_q(n).
inline std::vector<JordanChain> splice_chain(const JordanChain& parent, unsigned n, unsigned q) {
  const unsigned k = parent.start_rank;
  const unsigned top = parent.end_rank();  // n - k
  std::vector<LatticeVector> x;     // x_u embedded in F_q^{n+1}
  std::vector<LatticeVector> xbar;  // theta(x_u)
  for (const auto& v : parent.vectors) {
    x.push_back(embed(v));
    xbar.push_back(theta(v));
  }
  auto x_at = [&](unsigned u) -> const LatticeVector& { return x[u - k]; };
  auto xbar_at = [&](unsigned u) -> const LatticeVector& { return xbar[u - k]; };

  std::vector<JordanChain> out;
  if (k == top) {
    out.push_back(JordanChain{k, {x_at(k), xbar_at(k)}});
    return out;
  }
  const BigInt qn = ipow(BigInt(q), n);

  // y_l = x_l + [l-k] xbar_{l-1},  k <= l <= n+1-k
  JordanChain y{k, {}};
  for (unsigned l = k; l <= n + 1 - k; ++l) {
    LatticeVector v(q, n + 1);
    if (l <= top) v += x_at(l);
    if (l >= k + 1) v += q_int(l - k, q) * xbar_at(l - 1);
    y.vectors.push_back(std::move(v));
  }
  out.push_back(std::move(y));

  // z_l = -q^n x_l + q^{l+k-1} [n-l-k+1] xbar_{l-1},  k+1 <= l <= n-k
  JordanChain z{k + 1, {}};
  for (unsigned l = k + 1; l <= top; ++l) {
    LatticeVector v = BigInt(-qn) * x_at(l);
    v += BigInt(ipow(BigInt(q), l + k - 1) * q_int(n - l - k + 1, q)) * xbar_at(l - 1);
    z.vectors.push_back(std::move(v));
  }
  out.push_back(std::move(z));
  return out;
}

// J_q(n+1) from J_q(n) and J_q(n-1).
inline SymmetricJordanBasis next_level(const SymmetricJordanBasis& current, const SymmetricJordanBasis& previous) {
  const unsigned n = current.n;
  const unsigned q = current.q;

  std::vector<std::vector<JordanChain>> spliced(current.chains.size());
  parallel_for(current.chains.size(), [&](std::size_t i) { spliced[i] = splice_chain(current.chains[i], n, q); });

  const auto characters = nontrivial_characters(n, q);
  std::vector<std::vector<JordanChain>> lifted(characters.size());
  parallel_for(characters.size(), [&](std::size_t ci) {
    GammaMap g(characters[ci]);
    for (const auto& chain : previous.chains) {
      JordanChain image{chain.start_rank + 1, {}};
      for (const auto& v : chain.vectors) image.vectors.push_back(g(v));
      lifted[ci].push_back(std::move(image));
    }
  });

  SymmetricJordanBasis next{q, n + 1, {}};
  for (auto& group : spliced) {
    for (auto& c : group) next.chains.push_back(std::move(c));
  }
  for (auto& group : lifted) {
    for (auto& c : group) next.chains.push_back(std::move(c));
  }
  std::stable_sort(next.chains.begin(), next.chains.end(),
                   [](const JordanChain& a, const JordanChain& b) { return a.start_rank < b.start_rank; });
  return next;
}

}  // namespace detail

/// Builds J_q(n) inductively: J_q(n+1) is assembled from the splice of each
/// chain of J_q(n) with its theta-image, followed by the gamma-images of
/// J_q(n-1) for every nontrivial character of H(n+1, q).
inline SymmetricJordanBasis construct_sjb(unsigned n, unsigned q) {
  require_prime(q);
  detail::require_field(q);
  detail::require_ambient(n);
  SymmetricJordanBasis previous = detail::base_basis(0, q);
  if (n == 0) return previous;
  SymmetricJordanBasis current = detail::base_basis(1, q);
  for (unsigned level = 1; level < n; ++level) {
    SymmetricJordanBasis next = detail::next_level(current, previous);
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

enum class VerifyMode { full, spot, none };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::full;
  // spot mode only
  std::size_t sample_chains = 48;
  std::size_t sample_pairs = 4000;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

inline std::string chain_label(std::size_t index, const JordanChain& c) {
  return "chain " + std::to_string(index) + " (start rank " + std::to_string(c.start_rank) + ")";
}

inline Report check_chain(const SymmetricJordanBasis& b, std::size_t index) {
  const JordanChain& chain = b.chains[index];
  Report r;
  const std::string label = chain_label(index, chain);
  for (unsigned u = chain.start_rank; u <= chain.end_rank(); ++u) {
    const LatticeVector& x = chain.at_rank(u);
    const LatticeVector up = up_apply(x);
    if (u < chain.end_rank()) {
      r.expect("chain_condition", up == chain.at_rank(u + 1),
               [&] { return label + " rank " + std::to_string(u) + ": U(x_u) != x_{u+1}"; });
      const BigInt lhs = norm_sq(chain.at_rank(u + 1));
      const BigInt rhs = singular_value_sq(b.q, b.n, chain.start_rank, u) * norm_sq(x);
      r.expect("singular_values", lhs == rhs, [&] {
        return label + " rank " + std::to_string(u) + ": |x_{u+1}|^2 = " + lhs.str() + ", expected " + rhs.str();
      });
    } else {
      r.expect("chain_condition", up.is_zero(),
               [&] { return label + " rank " + std::to_string(u) + ": U(x_top) != 0"; });
    }
  }
  return r;
}

}  // namespace detail

/// Squared norm ratios |x_{u+1}|^2 / |x_u|^2 observed on the first chain
/// with each start rank.
inline std::map<unsigned, std::vector<BigInt>> ratio_table(const SymmetricJordanBasis& b) {
  std::map<unsigned, std::vector<BigInt>> table;
  for (const auto& c : b.chains) {
    if (table.count(c.start_rank) || c.vectors.size() < 2) continue;
    auto& row = table[c.start_rank];
    for (unsigned u = c.start_rank; u < c.end_rank(); ++u) {
      const BigInt a = norm_sq(c.at_rank(u + 1));
      const BigInt d = norm_sq(c.at_rank(u));
      row.push_back(d != 0 && a % d == 0 ? a / d : BigInt(-1));
    }
  }
  return table;
}

/// Checks every defining property of an orthogonal SJB of V(B_q(n)) with
/// the expected singular values. In spot mode the chain and orthogonality
/// checks run on a seeded sample; counting and coefficient checks always run
/// on everything.
inline Report verify_sjb(const SymmetricJordanBasis& b, const VerifyOptions& options = {}) {
  Report report;
  if (options.mode == VerifyMode::none) return report;
  const unsigned n = b.n;
  const unsigned q = b.q;

  // Shape: symmetry, homogeneity, monomial coefficients.
  std::map<unsigned, std::size_t> chains_by_start;
  for (std::size_t i = 0; i < b.chains.size(); ++i) {
    const JordanChain& c = b.chains[i];
    const std::string label = detail::chain_label(i, c);
    report.expect("chain_nonempty", !c.vectors.empty(), [&] { return label + " is empty"; });
    if (c.vectors.empty()) continue;
    report.expect("chain_symmetry", c.start_rank + c.end_rank() == n,
                  [&] { return label + " ends at rank " + std::to_string(c.end_rank()); });
    ++chains_by_start[c.start_rank];
    for (unsigned u = c.start_rank; u <= c.end_rank(); ++u) {
      const LatticeVector& x = c.at_rank(u);
      const bool space_ok = x.field() == q && x.ambient() == n;
      const auto rank = x.rank();
      report.expect("homogeneous_nonzero", space_ok && rank && *rank == u,
                    [&] { return label + " rank " + std::to_string(u) + " is zero, mixed or misplaced"; });
      for (const auto& [subspace, coeff] : x.terms()) {
        report.expect("monomial_coefficients", as_monomial(coeff).has_value(), [&] {
          return label + " rank " + std::to_string(u) + " coefficient " + coeff.str() + " at " + subspace.str();
        });
      }
    }
  }

  // Counts.
  for (unsigned k = 0; 2 * k <= n; ++k) {
    const BigInt expected = q_binomial(n, k, q) - q_binomial(n, static_cast<long long>(k) - 1, q);
    const BigInt actual = chains_by_start.count(k) ? BigInt(chains_by_start[k]) : BigInt(0);
    report.expect("chain_counts", actual == expected, [&] {
      return "start rank " + std::to_string(k) + ": " + actual.str() + " chains, expected " + expected.str();
    });
  }
  for (const auto& [k, count] : chains_by_start) {
    report.expect("chain_counts", 2 * k <= n, [&] { return "chain starts above n/2 at rank " + std::to_string(k); });
  }
  const BigInt total = BigInt(b.vector_count());
  report.expect("total_vectors", total == galois_number(n, q),
                [&] { return total.str() + " vectors, expected " + galois_number(n, q).str(); });
  if (!report.passed()) return report;

  // Chain condition and singular values.
  std::vector<std::size_t> chain_ids(b.chains.size());
  for (std::size_t i = 0; i < chain_ids.size(); ++i) chain_ids[i] = i;
  std::mt19937_64 rng(options.seed);
  if (options.mode == VerifyMode::spot && chain_ids.size() > options.sample_chains) {
    std::shuffle(chain_ids.begin(), chain_ids.end(), rng);
    chain_ids.resize(options.sample_chains);
    std::sort(chain_ids.begin(), chain_ids.end());
  }
  std::vector<Report> chain_reports(chain_ids.size());
  parallel_for(chain_ids.size(), [&](std::size_t i) { chain_reports[i] = detail::check_chain(b, chain_ids[i]); });
  for (const auto& r : chain_reports) report.merge(r);

  // Orthogonality. Vectors of different ranks have disjoint supports, so
  // only same-rank pairs need an inner product.
  for (unsigned m = 0; m <= n; ++m) {
    const auto vectors = b.slice(m);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t count = vectors.size();
    const std::size_t all_pairs = count * (count - (count ? 1 : 0)) / 2;
    if (options.mode == VerifyMode::spot && all_pairs > options.sample_pairs) {
      std::uniform_int_distribution<std::size_t> pick(0, count - 1);
      while (pairs.size() < options.sample_pairs) {
        const std::size_t a = pick(rng);
        const std::size_t c = pick(rng);
        if (a != c) pairs.emplace_back(std::min(a, c), std::max(a, c));
      }
    } else {
      for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t c = a + 1; c < count; ++c) pairs.emplace_back(a, c);
      }
    }
    std::vector<char> ok(pairs.size(), 1);
    parallel_for(pairs.size(), [&](std::size_t i) {
      ok[i] = inner(*vectors[pairs[i].first].second, *vectors[pairs[i].second].second).is_zero() ? 1 : 0;
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      report.expect("orthogonality", ok[i] != 0, [&] {
        return "rank " + std::to_string(m) + ": slice vectors " + std::to_string(pairs[i].first) + " and " +
               std::to_string(pairs[i].second) + " are not orthogonal";
      });
    }
  }
  report.record("orthogonality", true);

  std::string table;
  for (const auto& [k, row] : ratio_table(b)) {
    table += (table.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + ": (";
    for (std::size_t i = 0; i < row.size(); ++i) table += (i ? ", " : "") + row[i].str();
    table += ")";
  }
  report.note("singular_values", table);
  return report;
}

}  // namespace qlattice

#endif  // QLATTICE_SJB_HPP
