#ifndef QLATTICE_COMMON_HPP
#define QLATTICE_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlattice {

using BigInt = boost::multiprecision::cpp_int;

/// Raised on malformed arguments: negative sizes, ambient mismatches,
/// operations applied outside their domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for inputs the library deliberately does not handle (non-prime q).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline bool is_prime(unsigned value) {
  if (value < 2) return false;
  for (unsigned d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

inline void require_prime(unsigned q) {
  if (!is_prime(q)) {
    throw UnsupportedError("q must be prime (got " + std::to_string(q) + ")");
  }
}

}  // namespace qlattice

#endif  // QLATTICE_COMMON_HPP
