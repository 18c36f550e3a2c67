#ifndef QLATTICE_JSON_IO_HPP
#define QLATTICE_JSON_IO_HPP

#include "qlattice/lattice.hpp"
#include "qlattice/report.hpp"
#include "qlattice/sjb.hpp"

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

namespace qlattice {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw ArgumentError("malformed JSON: " + what); }

inline unsigned read_unsigned(const Json& j, const char* key, unsigned max_value) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) malformed(std::string("missing integer '") + key + "'");
  const auto value = j.at(key).get<long long>();
  if (value < 0 || value > static_cast<long long>(max_value)) malformed(std::string("'") + key + "' out of range");
  return static_cast<unsigned>(value);
}

}  // namespace detail

/// Integers that fit in 64 bits are written as JSON numbers, larger ones as
/// decimal strings.
inline Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return Json(x.convert_to<long long>());
  }
  return Json(x.str());
}

inline BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t digits_from = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == digits_from || s.find_first_not_of("0123456789", digits_from) != std::string::npos) {
      detail::malformed("bad integer string '" + s + "'");
    }
    return BigInt(s);
  }
  detail::malformed("expected an integer");
}

inline Json to_json(const Subspace& x) {
  Json cols = Json::array();
  for (const auto& c : x.columns()) {
    Json col = Json::array();
    for (unsigned r = 0; r < x.ambient(); ++r) col.push_back(c[r]);
    cols.push_back(std::move(col));
  }
  return Json{{"n", x.ambient()}, {"k", x.dim()}, {"cols", std::move(cols)}};
}

/// Reads {"n","k","cols"} and re-canonicalizes, so any basis of the subspace
/// is accepted as long as its columns are independent.
inline Subspace subspace_from_json(const Json& j, unsigned q) {
  const unsigned n = detail::read_unsigned(j, "n", kMaxAmbient);
  const unsigned k = detail::read_unsigned(j, "k", n);
  if (!j.contains("cols") || !j.at("cols").is_array() || j.at("cols").size() != k) detail::malformed("'cols' must hold k columns");
  std::vector<Coords> cols;
  for (const auto& col : j.at("cols")) {
    if (!col.is_array() || col.size() != n) detail::malformed("column of the wrong length");
    Coords c{};
    for (unsigned r = 0; r < n; ++r) {
      if (!col[r].is_number_integer()) detail::malformed("non-integer entry");
      const auto e = col[r].get<long long>();
      if (e < 0 || e >= static_cast<long long>(q)) detail::malformed("entry outside 0..q-1");
      c[r] = static_cast<std::uint8_t>(e);
    }
    cols.push_back(c);
  }
  Subspace x = Subspace::span(n, q, cols);
  if (x.dim() != k) detail::malformed("columns are linearly dependent");
  return x;
}

inline Json to_json(const CycInt& a) {
  if (auto mono = as_monomial(a)) return Json{{"m", to_json(mono->m)}, {"j", mono->j}};
  Json coeffs = Json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"coeffs", std::move(coeffs)}};
}

inline CycInt cycint_from_json(const Json& j, unsigned p) {
  if (j.is_object() && j.contains("m") && j.contains("j")) {
    const unsigned e = detail::read_unsigned(j, "j", p - 1);
    return CycInt::monomial(p, bigint_from_json(j.at("m")), e);
  }
  if (j.is_object() && j.contains("coeffs") && j.at("coeffs").is_array()) {
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(bigint_from_json(c));
    if (coeffs.size() != p - 1) detail::malformed("'coeffs' must have length p-1");
    return CycInt::from_coeffs(p, coeffs);
  }
  detail::malformed("coefficient must be {m, j} or {coeffs}");
}

inline Json to_json(const LatticeVector& v) {
  Json terms = Json::array();
  for (const auto& [x, c] : v.terms()) terms.push_back(Json{{"subspace", to_json(x)}, {"coeff", to_json(c)}});
  return Json{{"n", v.ambient()}, {"q", v.field()}, {"terms", std::move(terms)}};
}

/// Duplicate subspace keys (after canonicalization) have their coefficients
/// summed; zero sums drop out.
inline LatticeVector lattice_vector_from_json(const Json& j) {
  const unsigned q = detail::read_unsigned(j, "q", 255);
  require_prime(q);
  const unsigned n = detail::read_unsigned(j, "n", kMaxAmbient);
  if (!j.contains("terms") || !j.at("terms").is_array()) detail::malformed("missing 'terms'");
  LatticeVector v(q, n);
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("subspace") || !t.contains("coeff")) detail::malformed("term needs 'subspace' and 'coeff'");
    const Subspace x = subspace_from_json(t.at("subspace"), q);
    if (x.ambient() != n) detail::malformed("term ambient differs from vector ambient");
    v.add_term(x, cycint_from_json(t.at("coeff"), q));
  }
  return v;
}

inline Json to_json(const SymmetricJordanBasis& b) {
  Json chains = Json::array();
  for (const auto& chain : b.chains) {
    Json vectors = Json::array();
    for (const auto& v : chain.vectors) vectors.push_back(to_json(v));
    chains.push_back(Json{{"start_rank", chain.start_rank}, {"vectors", std::move(vectors)}});
  }
  return Json{{"q", b.q}, {"n", b.n}, {"chains", std::move(chains)}};
}

/// Parses a basis without verifying it; run verify_sjb on the result.
inline SymmetricJordanBasis basis_from_json(const Json& j) {
  SymmetricJordanBasis b;
  b.q = detail::read_unsigned(j, "q", 255);
  require_prime(b.q);
  b.n = detail::read_unsigned(j, "n", kMaxAmbient);
  if (!j.contains("chains") || !j.at("chains").is_array()) detail::malformed("missing 'chains'");
  for (const auto& c : j.at("chains")) {
    JordanChain chain;
    chain.start_rank = detail::read_unsigned(c, "start_rank", b.n);
    if (!c.contains("vectors") || !c.at("vectors").is_array()) detail::malformed("chain without 'vectors'");
    for (const auto& v : c.at("vectors")) {
      LatticeVector lv = lattice_vector_from_json(v);
      if (lv.field() != b.q || lv.ambient() != b.n) detail::malformed("vector over a different lattice");
      chain.vectors.push_back(std::move(lv));
    }
    b.chains.push_back(std::move(chain));
  }
  return b;
}

inline Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    Json entry{{"name", c.name}, {"passed", c.passed}, {"instances", c.instances}};
    if (!c.detail.empty()) entry[c.passed ? "note" : "counterexample"] = c.detail;
    checks.push_back(std::move(entry));
  }
  return Json{{"passed", r.passed()}, {"checks", std::move(checks)}};
}

}  // namespace qlattice

#endif  // QLATTICE_JSON_IO_HPP
