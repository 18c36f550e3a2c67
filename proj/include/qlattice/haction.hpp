#ifndef QLATTICE_HACTION_HPP
#define QLATTICE_HACTION_HPP

#include "qlattice/lattice.hpp"
#include "qlattice/qcombinatorics.hpp"
#include "qlattice/report.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace qlattice {

// The group H(n+1, q) of unitriangular matrices [[I, a], [0, 1]] is
// identified with (F_q^n, +) through its last column a. It acts on the
// subspaces of F_q^{n+1} that are not contained in F_q^n.

struct GroupElement {
  unsigned q = 2;
  unsigned n = 0;
  Coords a{};

  [[nodiscard]] bool is_identity() const { return is_zero(a); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// chi_c(a) = omega^{c . a}.
struct Character {
  unsigned q = 2;
  unsigned n = 0;
  Coords c{};

  [[nodiscard]] bool trivial() const { return is_zero(c); }
  [[nodiscard]] unsigned exponent(const GroupElement& g) const { return dot(c, g.a, n, q); }
  [[nodiscard]] CycInt value(const GroupElement& g) const { return CycInt::root(q, exponent(g)); }

  [[nodiscard]] std::string str() const {
    std::string out = "(";
    for (unsigned i = 0; i < n; ++i) out += (i ? "," : "") + std::to_string(c[i]);
    return out + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Character& chi) { return os << chi.str(); }
};

/// All q^n group elements, in lexicographic order of a.
inline std::vector<GroupElement> group_elements(unsigned n, unsigned q) {
  std::vector<GroupElement> out;
  for (const auto& a : all_vectors(n, q)) out.push_back(GroupElement{q, n, a});
  return out;
}

/// The q^n - 1 nontrivial characters, in lexicographic order of c.
inline std::vector<Character> nontrivial_characters(unsigned n, unsigned q) {
  std::vector<Character> out;
  for (const auto& c : all_vectors(n, q)) {
    if (!is_zero(c)) out.push_back(Character{q, n, c});
  }
  return out;
}

/// X in F_q^{n+1} is not contained in F_q^n.
inline bool in_affine_part(const Subspace& x) {
  if (x.ambient() == 0) return false;
  const unsigned last = x.ambient() - 1;
  for (unsigned j = 0; j < x.dim(); ++j) {
    if (x.entry(last, j) != 0) return true;
  }
  return false;
}

namespace detail {

inline void require_affine(const Subspace& x, const char* what) {
  if (!in_affine_part(x)) {
    throw ArgumentError(std::string(what) + ": " + x.str() + " lies inside the hyperplane F_q^n");
  }
}

// Drops the last coordinate of a subspace already inside F_q^n.
inline Subspace truncate(const Subspace& x) {
  const auto cols = x.columns();
  return Subspace::from_canonical_columns(x.ambient() - 1, x.field(), cols);
}

}  // namespace detail

/// phi(a) X.
inline Subspace act(const GroupElement& g, const Subspace& x) {
  detail::require_affine(x, "act");
  if (g.n + 1 != x.ambient() || g.q != x.field()) throw ArgumentError("act: group element does not match X");
  const unsigned n = g.n;
  const unsigned q = g.q;
  std::vector<Coords> cols;
  cols.reserve(x.dim());
  for (unsigned j = 0; j < x.dim(); ++j) {
    Coords v = x.column(j);
    const unsigned t = v[n];
    if (t != 0) {
      for (unsigned i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>((v[i] + t * g.a[i]) % q);
    }
    cols.push_back(v);
  }
  return Subspace::span(n + 1, q, cols);
}

/// X cap F_q^n, returned as a subspace of F_q^n. Its dimension is dim X - 1.
inline Subspace h_map(const Subspace& x) {
  detail::require_affine(x, "h_map");
  const unsigned n = x.ambient() - 1;
  const unsigned q = x.field();
  auto cols = x.columns();
  std::size_t lead = cols.size();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j][n] != 0) {
      lead = j;
      break;
    }
  }
  const unsigned inv = detail::inv_mod(cols[lead][n], q);
  std::vector<Coords> rest;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (j == lead) continue;
    Coords v = cols[j];
    if (v[n] != 0) detail::axpy_neg(v, v[n] * inv % q, cols[lead], n + 1, q);
    rest.push_back(v);
  }
  return detail::truncate(Subspace::span(n + 1, q, rest));
}

/// All Y in A_q(n+1) with h_map(Y) = h_map(X), sorted. There are
/// q^{(n+1) - dim X} of them.
inline std::vector<Subspace> eq_class(const Subspace& x) {
  const Subspace base = h_map(x);
  const unsigned n = base.ambient();
  const unsigned q = base.field();
  const Subspace lifted = embed(base);
  std::vector<unsigned> free_rows;
  for (unsigned r = 0; r < n; ++r) {
    if (!base.is_pivot_row(r)) free_rows.push_back(r);
  }
  std::vector<Subspace> out;
  std::vector<unsigned> digits(free_rows.size(), 0);
  while (true) {
    Coords v{};
    v[n] = 1;
    for (std::size_t i = 0; i < free_rows.size(); ++i) v[free_rows[i]] = static_cast<std::uint8_t>(digits[i]);
    out.push_back(lifted.extended(v));
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0 && digits[i] + 1 == q) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Group elements fixing X, found by direct search.
inline std::vector<GroupElement> stabilizer(const Subspace& x) {
  detail::require_affine(x, "stabilizer");
  std::vector<GroupElement> out;
  for (const auto& g : group_elements(x.ambient() - 1, x.field())) {
    if (act(g, x) == x) out.push_back(g);
  }
  return out;
}

/// p(chi)(X) = sum_a conj(chi(a)) [phi(a) X], left unnormalised.
inline LatticeVector p_chi(const Character& chi, const Subspace& x) {
  detail::require_affine(x, "p_chi");
  if (chi.n + 1 != x.ambient() || chi.q != x.field()) throw ArgumentError("p_chi: character does not match X");
  LatticeVector out(x.field(), x.ambient());
  for (const auto& g : group_elements(chi.n, chi.q)) {
    out.add_term(act(g, x), CycInt::root(chi.q, -static_cast<long long>(chi.exponent(g))));
  }
  return out;
}

/// theta_n: V(B_q(n)) -> V(B_q(n+1)), X -> sum of the class of hat(X).
inline LatticeVector theta(const LatticeVector& v) {
  LatticeVector out(v.field(), v.ambient() + 1);
  for (const auto& [x, c] : v.terms()) {
    for (const auto& y : eq_class(hat(x))) out.add_term(y, c);
  }
  return out;
}

/// The unique hyperplane X of F_q^n with p(chi)(hat X) != 0, chi nontrivial.
/// Hyperplanes whose stabiliser is not killed by chi are skipped before the
/// projection is formed.
inline Subspace find_hyperplane(const Character& chi) {
  if (chi.trivial()) throw ArgumentError("find_hyperplane: the character must be nontrivial");
  std::vector<Subspace> found;
  for (const auto& x : enumerate_rank(static_cast<int>(chi.n), static_cast<int>(chi.n) - 1, chi.q)) {
    const Subspace lifted = hat(x);
    bool trivial_on_stabilizer = true;
    for (const auto& g : stabilizer(lifted)) {
      if (chi.exponent(g) != 0) {
        trivial_on_stabilizer = false;
        break;
      }
    }
    if (!trivial_on_stabilizer) continue;
    if (!p_chi(chi, lifted).is_zero()) found.push_back(x);
  }
  if (found.size() != 1) {
    throw std::logic_error("find_hyperplane: expected exactly one hyperplane for chi" + chi.str() + ", found " +
                           std::to_string(found.size()));
  }
  return found.front();
}

/// gamma_{n-1}(chi) = lambda(chi) o mu(X(chi)), mapping V(B_q(n-1)) into the
/// chi-isotypic part of V(B_q(n+1)). Images of basis subspaces are cached,
/// so one instance should be reused across many vectors.
class GammaMap {
 public:
  explicit GammaMap(const Character& chi) : chi_(chi), hyperplane_(find_hyperplane(chi)) {}

  GammaMap(const Character& chi, Subspace hyperplane) : chi_(chi), hyperplane_(std::move(hyperplane)) {}

  [[nodiscard]] const Character& character() const { return chi_; }
  [[nodiscard]] const Subspace& hyperplane() const { return hyperplane_; }

  const LatticeVector& image(const Subspace& y) {
    auto it = cache_.find(y);
    if (it == cache_.end()) {
      it = cache_.emplace(y, p_chi(chi_, hat(mu_apply(hyperplane_, y)))).first;
    }
    return it->second;
  }

  LatticeVector operator()(const LatticeVector& v) {
    if (v.ambient() + 1 != chi_.n || v.field() != chi_.q) {
      throw ArgumentError("gamma: input must live in V(B_q(n-1))");
    }
    LatticeVector out(chi_.q, chi_.n + 1);
    for (const auto& [y, c] : v.terms()) {
      for (const auto& [z, d] : image(y).terms()) out.add_term(z, c * d);
    }
    return out;
  }

 private:
  Character chi_;
  Subspace hyperplane_;
  std::map<Subspace, LatticeVector> cache_;
};

inline LatticeVector gamma(const Character& chi, const LatticeVector& v) {
  GammaMap map(chi);
  return map(v);
}

/// psi_k(a): the number of k-dimensional X in A_q(n+1) fixed by a.
inline BigInt perm_character(unsigned n, unsigned k, const GroupElement& g) {
  if (k < 1 || k > n + 1) throw ArgumentError("perm_character: k must satisfy 1 <= k <= n+1");
  if (g.n != n) throw ArgumentError("perm_character: group element has the wrong length");
  BigInt count = 0;
  for (const auto& x : enumerate_rank(static_cast<int>(n + 1), static_cast<int>(k), g.q)) {
    if (in_affine_part(x) && act(g, x) == x) ++count;
  }
  return count;
}

/// [chi, psi_k] = q^{-n} sum_a conj(chi(a)) psi_k(a), which must be a
/// rational integer.
inline BigInt character_multiplicity(const Character& chi, unsigned k) {
  CycInt sum(chi.q);
  for (const auto& g : group_elements(chi.n, chi.q)) {
    sum += CycInt::root(chi.q, -static_cast<long long>(chi.exponent(g))) * perm_character(chi.n, k, g);
  }
  const auto value = sum.as_integer();
  const BigInt order = ipow(BigInt(chi.q), chi.n);
  if (!value || *value % order != 0) {
    throw std::logic_error("character_multiplicity: inner product is not an integer");
  }
  return *value / order;
}

/// Checks the orthogonal decomposition
///   V(B_q(n+1)) = V(B_q(n)) + theta(V(B_q(n))) + sum_chi gamma_chi(V(B_q(n-1)))
/// element by element.
inline Report verify_decomposition(unsigned n, unsigned q) {
  detail::require_field(q);
  if (n < 1) throw ArgumentError("verify_decomposition: n must be at least 1");
  detail::require_ambient(n + 1);
  Report report;
  const BigInt qq = q;

  const auto lower = enumerate_all(static_cast<int>(n), q);
  const auto lower2 = enumerate_all(static_cast<int>(n) - 1, q);
  const auto top = enumerate_all(static_cast<int>(n + 1), q);
  const auto characters = nontrivial_characters(n, q);

  // Block-tagged images of the standard bases.
  struct Image {
    int block;  // -1 = V(B_q(n)), 0 = W(0), i > 0 = character i-1
    const Subspace* source;
    LatticeVector vec;
  };
  std::vector<Image> images;
  for (const auto& x : lower) images.push_back({-1, &x, embed(LatticeVector::basis(x))});

  std::set<unsigned> ranks_w0;
  for (const auto& x : lower) {
    const LatticeVector base = LatticeVector::basis(x);
    LatticeVector t = theta(base);
    const auto r = t.rank();
    report.expect("theta_homogeneous_rank_plus_one", r && *r == x.dim() + 1,
                  [&] { return "theta(" + x.str() + ") is not homogeneous of rank dim+1"; });
    if (r) ranks_w0.insert(*r);

    // U_{n+1}(v) = U_n(v) + theta_n(v)
    const LatticeVector lhs = up_apply(embed(base));
    const LatticeVector rhs = embed(up_apply(base)) + t;
    report.expect("up_operator_splitting", lhs == rhs, [&] { return "fails at X = " + x.str(); });

    // theta(q U_n v) = U_{n+1} theta(v)
    report.expect("theta_intertwines_qU", theta(qq * up_apply(base)) == up_apply(t),
                  [&] { return "fails at X = " + x.str(); });
    images.push_back({0, &x, std::move(t)});
  }
  std::set<unsigned> expected_w0;
  for (unsigned r = 1; r <= n + 1; ++r) expected_w0.insert(r);
  report.record("rankset_W0", ranks_w0 == expected_w0, "rankset(W(0)) differs from {1..n+1}");

  std::map<Subspace, unsigned> hyperplane_hits;
  for (std::size_t ci = 0; ci < characters.size(); ++ci) {
    const Character& chi = characters[ci];
    GammaMap g(chi);
    ++hyperplane_hits[g.hyperplane()];
    // the hyperplane is the kernel of the functional c
    bool is_kernel = true;
    for (unsigned j = 0; j < g.hyperplane().dim(); ++j) {
      if (dot(chi.c, g.hyperplane().column(j), n, q) != 0) is_kernel = false;
    }
    report.expect("hyperplane_is_kernel_of_c", is_kernel,
                  [&] { return "chi" + chi.str() + " -> " + g.hyperplane().str(); });

    std::set<unsigned> ranks;
    for (const auto& y : lower2) {
      const LatticeVector base = LatticeVector::basis(y);
      LatticeVector image = g(base);
      const auto r = image.rank();
      report.expect("gamma_homogeneous_rank_plus_one", r && *r == y.dim() + 1,
                    [&] { return "gamma_chi" + chi.str() + "(" + y.str() + ")"; });
      if (r) ranks.insert(*r);
      report.expect("gamma_intertwines_U", g(up_apply(base)) == up_apply(image),
                    [&] { return "chi" + chi.str() + " at Y = " + y.str(); });
      images.push_back({static_cast<int>(ci) + 1, &y, std::move(image)});
    }
    std::set<unsigned> expected;
    for (unsigned r = 1; r <= n; ++r) expected.insert(r);
    report.expect("rankset_Wchi", ranks == expected, [&] { return "chi" + chi.str(); });
  }

  // Each hyperplane is X(chi) for exactly q - 1 characters.
  for (const auto& x : enumerate_rank(static_cast<int>(n), static_cast<int>(n) - 1, q)) {
    unsigned count = 0;
    for (const auto& chi : characters) {
      if (!p_chi(chi, hat(x)).is_zero()) ++count;
    }
    report.expect("characters_per_hyperplane", count == q - 1 && hyperplane_hits[x] == q - 1,
                  [&] { return x.str() + " hit by " + std::to_string(count) + " characters"; });
  }

  // Dimension count, compared with the enumeration and with Goldman-Rota.
  const BigInt pieces = BigInt(images.size());
  const BigInt gr = 2 * galois_number(n, q) + (ipow(qq, n) - 1) * galois_number(static_cast<long long>(n) - 1, q);
  report.expect("dimension_count", pieces == BigInt(top.size()) && pieces == gr, [&] {
    return "pieces " + pieces.str() + ", |B_q(n+1)| " + std::to_string(top.size()) + ", recurrence " + gr.str();
  });

  // Inner products: orthogonality across and within blocks, plus the two
  // scaling laws on the diagonal.
  report.declare("orthogonal_within_block");
  report.declare("orthogonal_across_blocks");
  std::map<unsigned, std::vector<std::size_t>> by_rank;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (auto r = images[i].vec.rank()) by_rank[*r].push_back(i);
  }
  for (const auto& [rank, members] : by_rank) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      const Image& u = images[members[a]];
      const BigInt self = norm_sq(u.vec);
      const unsigned k = u.source->dim();
      if (u.block == 0) {
        report.expect("theta_scaling", self == ipow(qq, n - k),
                      [&] { return "|theta(" + u.source->str() + ")|^2 = " + self.str(); });
      } else if (u.block > 0) {
        report.expect("gamma_scaling", self == ipow(qq, n + k),
                      [&] { return "|gamma(" + u.source->str() + ")|^2 = " + self.str(); });
      }
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const Image& w = images[members[b]];
        const bool ok = inner(u.vec, w.vec).is_zero();
        const std::string name = u.block == w.block ? "orthogonal_within_block" : "orthogonal_across_blocks";
        report.expect(name, ok, [&] {
          return "blocks " + std::to_string(u.block) + "/" + std::to_string(w.block) + " at " + u.source->str() +
                 ", " + w.source->str();
        });
      }
    }
  }
  return report;
}

}  // namespace qlattice

#endif  // QLATTICE_HACTION_HPP
