#ifndef QLATTICE_QCOMBINATORICS_HPP
#define QLATTICE_QCOMBINATORICS_HPP

#include "qlattice/common.hpp"
#include "qlattice/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace qlattice {

namespace detail {

inline void require_field_size(long long q) {
  if (q < 2) throw ArgumentError("q must be at least 2 (got " + std::to_string(q) + ")");
}

// Rows of the q-Pascal triangle, grown on demand. One table per thread, so
// no locking is needed.
inline const std::vector<BigInt>& pascal_row(unsigned q, unsigned n) {
  thread_local std::map<unsigned, std::vector<std::vector<BigInt>>> tables;
  auto& rows = tables[q];
  if (rows.empty()) rows.push_back({BigInt(1)});
  while (rows.size() <= n) {
    const auto& prev = rows.back();
    const unsigned m = static_cast<unsigned>(rows.size());
    std::vector<BigInt> row(m + 1);
    row[0] = 1;
    row[m] = 1;
    BigInt qk = q;  // q^k
    for (unsigned k = 1; k < m; ++k, qk *= q) {
      // [m, k] = [m-1, k-1] + q^k [m-1, k]
      row[k] = prev[k - 1] + qk * prev[k];
    }
    rows.push_back(std::move(row));
  }
  return rows[n];
}

}  // namespace detail

/// [k]_q = 1 + q + ... + q^{k-1}.
inline BigInt q_int(long long k, long long q) {
  detail::require_field_size(q);
  if (k < 0) throw ArgumentError("q_int: k must be nonnegative");
  BigInt sum = 0;
  BigInt term = 1;
  for (long long j = 0; j < k; ++j) {
    sum += term;
    term *= q;
  }
  return sum;
}

/// Gaussian binomial coefficient. Zero outside 0 <= k <= n.
inline BigInt q_binomial(long long n, long long k, long long q) {
  detail::require_field_size(q);
  if (n < 0 || k < 0 || k > n) return 0;
  return detail::pascal_row(static_cast<unsigned>(q), static_cast<unsigned>(n))[k];
}

/// G_q(n): the total number of subspaces of F_q^n.
inline BigInt galois_number(long long n, long long q) {
  detail::require_field_size(q);
  if (n < 0) throw ArgumentError("galois_number: n must be nonnegative");
  BigInt total = 0;
  for (const auto& v : detail::pascal_row(static_cast<unsigned>(q), static_cast<unsigned>(n))) total += v;
  return total;
}

/// Checks the Goldman-Rota recurrence, its refinement by dimension and the
/// q-Pascal rule for every n up to n_max.
inline Report verify_identities(long long n_max, long long q) {
  detail::require_field_size(q);
  if (n_max < 1) throw ArgumentError("verify_identities: n_max must be at least 1");
  Report report;
  report.record("galois_initial_values",
                galois_number(0, q) == 1 && galois_number(1, q) == 2);

  // G(n+1) = 2 G(n) + (q^n - 1) G(n-1)
  for (long long n = 1; n <= n_max; ++n) {
    const BigInt lhs = galois_number(n + 1, q);
    const BigInt rhs = 2 * galois_number(n, q) + (ipow(BigInt(q), n) - 1) * galois_number(n - 1, q);
    report.expect("goldman_rota", lhs == rhs, [&] {
      return "n=" + std::to_string(n) + ": " + lhs.str() + " != " + rhs.str();
    });
  }

  // [n+1, k] = [n, k] + [n, k-1] + (q^n - 1) [n-1, k-1], 1 <= k <= n+1
  for (long long n = 1; n <= n_max; ++n) {
    for (long long k = 1; k <= n + 1; ++k) {
      const BigInt lhs = q_binomial(n + 1, k, q);
      const BigInt rhs = q_binomial(n, k, q) + q_binomial(n, k - 1, q) +
                         (ipow(BigInt(q), n) - 1) * q_binomial(n - 1, k - 1, q);
      report.expect("refined_recursion", lhs == rhs, [&] {
        return "n=" + std::to_string(n) + " k=" + std::to_string(k);
      });
    }
  }

  // [n, k-1] = [n-1, k-2] + q^{k-1} [n-1, k-1]
  for (long long n = 1; n <= n_max; ++n) {
    for (long long k = 1; k <= n + 1; ++k) {
      const BigInt lhs = q_binomial(n, k - 1, q);
      const BigInt rhs = q_binomial(n - 1, k - 2, q) + ipow(BigInt(q), k - 1) * q_binomial(n - 1, k - 1, q);
      report.expect("q_pascal", lhs == rhs, [&] {
        return "n=" + std::to_string(n) + " k=" + std::to_string(k);
      });
    }
  }
  return report;
}

}  // namespace qlattice

#endif  // QLATTICE_QCOMBINATORICS_HPP
