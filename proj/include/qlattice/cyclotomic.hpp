#ifndef QLATTICE_CYCLOTOMIC_HPP
#define QLATTICE_CYCLOTOMIC_HPP

#include "qlattice/common.hpp"

#include <boost/container/small_vector.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qlattice {

/// m * omega^j, with 0 <= j < p.
struct Monomial {
  BigInt m;
  unsigned j = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// An element of Z[omega], omega a primitive p-th root of unity, stored in the
/// power basis 1, omega, ..., omega^{p-2}. The representation is unique, so
/// equality is coefficientwise. For p = 2 this is just an integer (omega = -1).
class CycInt {
 public:
  using Coeffs = boost::container::small_vector<BigInt, 4>;

  CycInt() : p_(2), a_(1) {}

  explicit CycInt(unsigned p) : p_(p), a_(p - 1) { require_prime(p); }

  CycInt(unsigned p, BigInt value) : CycInt(p) { a_[0] = std::move(value); }

  static CycInt from_coeffs(unsigned p, const std::vector<BigInt>& coeffs) {
    CycInt r(p);
    if (coeffs.size() != r.a_.size()) {
      throw ArgumentError("CycInt: expected " + std::to_string(p - 1) + " coefficients");
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.a_[i] = coeffs[i];
    return r;
  }

  /// m * omega^j for any integer j.
  static CycInt monomial(unsigned p, const BigInt& m, long long j) {
    CycInt r(p);
    const unsigned e = reduce_exponent(j, p);
    if (e + 1 < p) {
      r.a_[e] = m;
    } else {
      for (auto& c : r.a_) c = -m;
    }
    return r;
  }

  static CycInt root(unsigned p, long long j) { return monomial(p, 1, j); }

  [[nodiscard]] unsigned prime() const { return p_; }
  [[nodiscard]] const Coeffs& coeffs() const { return a_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : a_) {
      if (c != 0) return false;
    }
    return true;
  }

  [[nodiscard]] std::optional<BigInt> as_integer() const {
    for (std::size_t i = 1; i < a_.size(); ++i) {
      if (a_[i] != 0) return std::nullopt;
    }
    return a_[0];
  }

  /// Multiplication by omega^j; cheaper than a general product.
  [[nodiscard]] CycInt times_root(long long j) const {
    const unsigned shift = reduce_exponent(j, p_);
    if (shift == 0) return *this;
    // Work with p coefficients (omega^0..omega^{p-1}), rotate, then fold the
    // top one back using 1 + omega + ... + omega^{p-1} = 0.
    Coeffs full(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) full[(i + shift) % p_] = a_[i];
    return fold(full);
  }

  CycInt& operator+=(const CycInt& o) {
    check_same_prime(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }

  CycInt& operator-=(const CycInt& o) {
    check_same_prime(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }

  CycInt& operator*=(const BigInt& s) {
    for (auto& c : a_) c *= s;
    return *this;
  }

  CycInt& operator*=(const CycInt& o) {
    *this = *this * o;
    return *this;
  }

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const BigInt& s) { return a *= s; }
  friend CycInt operator*(const BigInt& s, CycInt a) { return a *= s; }

  friend CycInt operator-(CycInt a) {
    for (auto& c : a.a_) c = -c;
    return a;
  }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check_same_prime(b);
    const unsigned p = a.p_;
    if (p == 2) return CycInt(2, a.a_[0] * b.a_[0]);
    Coeffs full(p);
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (a.a_[i] == 0) continue;
      for (unsigned j = 0; j + 1 < p; ++j) {
        if (b.a_[j] == 0) continue;
        full[(i + j) % p] += a.a_[i] * b.a_[j];
      }
    }
    return fold(full);
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.p_ == b.p_ && a.a_ == b.a_;
  }

  /// The Galois automorphism omega -> omega^t, gcd(t, p) = 1.
  [[nodiscard]] CycInt galois(unsigned t) const {
    if (t % p_ == 0) throw ArgumentError("CycInt::galois: exponent divisible by p");
    Coeffs full(p_);
    for (unsigned i = 0; i + 1 < p_; ++i) full[(static_cast<unsigned long long>(i) * t) % p_] += a_[i];
    return fold(full);
  }

  /// Field norm down to Q, a rational integer.
  [[nodiscard]] BigInt norm() const {
    CycInt prod = *this;
    for (unsigned t = 2; t < p_; ++t) prod *= galois(t);
    return *prod.as_integer();
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] == 0) continue;
      if (!out.empty()) out += a_[i] > 0 ? "+" : "";
      out += a_[i].str();
      if (i == 1) out += "w";
      if (i > 1) out += "w^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycInt& a) { return os << a.str(); }

 private:
  static unsigned reduce_exponent(long long j, unsigned p) {
    const long long r = j % static_cast<long long>(p);
    return static_cast<unsigned>(r < 0 ? r + p : r);
  }

  static CycInt fold(const Coeffs& full) {
    const unsigned p = static_cast<unsigned>(full.size());
    CycInt r(p);
    for (unsigned i = 0; i + 1 < p; ++i) r.a_[i] = full[i] - full[p - 1];
    return r;
  }

  void check_same_prime(const CycInt& o) const {
    if (p_ != o.p_) {
      throw ArgumentError("CycInt: mismatched primes " + std::to_string(p_) + " and " +
                          std::to_string(o.p_));
    }
  }

  unsigned p_;
  Coeffs a_;
};

/// Complex conjugation, omega -> omega^{p-1}.
inline CycInt conj(const CycInt& a) {
  return a.prime() == 2 ? a : a.galois(a.prime() - 1);
}

/// Recognises m * omega^j, returning the smallest such j (and (0, 0) for zero).
inline std::optional<Monomial> as_monomial(const CycInt& a) {
  const auto& c = a.coeffs();
  std::size_t nonzero = 0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) {
      ++nonzero;
      where = i;
    }
  }
  if (nonzero == 0) return Monomial{0, 0};
  if (nonzero == 1) return Monomial{c[where], static_cast<unsigned>(where)};
  // omega^{p-1} = -(1 + omega + ... + omega^{p-2})
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] != c[0]) return std::nullopt;
  }
  return Monomial{-c[0], a.prime() - 1};
}

/// a / b when the quotient lies in Z[omega]; nullopt otherwise (or b = 0).
inline std::optional<CycInt> divide_exact(const CycInt& a, const CycInt& b) {
  if (b.is_zero()) return std::nullopt;
  // a / b = a * (prod of the other conjugates of b) / N(b)
  CycInt cofactor(b.prime(), 1);
  for (unsigned t = 2; t < b.prime(); ++t) cofactor *= b.galois(t);
  const BigInt n = *(b * cofactor).as_integer();
  const CycInt num = a * cofactor;
  std::vector<BigInt> out;
  out.reserve(num.coeffs().size());
  for (const auto& c : num.coeffs()) {
    if (c % n != 0) return std::nullopt;
    out.push_back(c / n);
  }
  return CycInt::from_coeffs(a.prime(), out);
}

}  // namespace qlattice

#endif  // QLATTICE_CYCLOTOMIC_HPP
