#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qlattice;

namespace {

Subspace line(unsigned q, std::initializer_list<unsigned> v) {
  return Subspace::span(static_cast<unsigned>(v.size()), q, {make_coords(v)});
}

std::vector<Subspace> affine_part(unsigned n, unsigned q) {
  std::vector<Subspace> out;
  for (const auto& x : enumerate_all(static_cast<int>(n + 1), q)) {
    if (in_affine_part(x)) out.push_back(x);
  }
  return out;
}

// Orbit of X computed directly from the action.
std::set<Subspace> orbit(const Subspace& x) {
  std::set<Subspace> out;
  for (const auto& g : group_elements(x.ambient() - 1, x.field())) out.insert(act(g, x));
  return out;
}

Subspace kernel_of(const Character& chi) {
  std::vector<Coords> vs;
  for (const auto& v : all_vectors(chi.n, chi.q)) {
    if (dot(chi.c, v, chi.n, chi.q) == 0) vs.push_back(v);
  }
  return Subspace::span(chi.n, chi.q, vs);
}

}  // namespace

TEST(Action, Examples) {
  const Subspace e2 = line(2, {0, 1});
  EXPECT_EQ(act(GroupElement{2, 1, make_coords({0})}, e2), e2);
  EXPECT_EQ(act(GroupElement{2, 1, make_coords({1})}, e2), line(2, {1, 1}));
  EXPECT_THROW(act(GroupElement{2, 1, make_coords({1})}, line(2, {1, 0})), ArgumentError);
}

TEST(Action, OrbitOfHatHasSizeQToTheCodim) {
  for (unsigned q : {2U, 3U}) {
    for (unsigned n = 0; n <= 3; ++n) {
      for (const auto& x : enumerate_all(static_cast<int>(n), q)) {
        EXPECT_EQ(BigInt(orbit(hat(x)).size()), ipow(BigInt(q), n - x.dim()));
      }
    }
  }
}

TEST(Action, IsAGroupAction) {
  for (unsigned q : {2U, 3U}) {
    const unsigned n = 2;
    const auto gs = group_elements(n, q);
    for (const auto& x : affine_part(n, q)) {
      for (const auto& g : gs) {
        const Subspace gx = act(g, x);
        EXPECT_EQ(gx.dim(), x.dim());
        EXPECT_TRUE(in_affine_part(gx));
        for (const auto& h : gs) {
          GroupElement gh{q, n, {}};
          for (unsigned i = 0; i < n; ++i) gh.a[i] = static_cast<std::uint8_t>((g.a[i] + h.a[i]) % q);
          EXPECT_EQ(act(h, gx), act(gh, x));
        }
      }
    }
  }
}

TEST(EquivalenceClass, MatchesOrbitAndHMap) {
  for (unsigned q : {2U, 3U}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (const auto& x : affine_part(n, q)) {
        const auto cls = eq_class(x);
        const std::set<Subspace> as_set(cls.begin(), cls.end());
        EXPECT_EQ(as_set, orbit(x));
        EXPECT_EQ(BigInt(cls.size()), ipow(BigInt(q), n + 1 - x.dim()));
        EXPECT_EQ(h_map(x).dim() + 1, x.dim());
        for (const auto& y : cls) EXPECT_EQ(h_map(y), h_map(x));
        EXPECT_EQ(BigInt(cls.size() * stabilizer(x).size()), ipow(BigInt(q), n));
      }
      for (const auto& z : enumerate_all(static_cast<int>(n), q)) EXPECT_EQ(h_map(hat(z)), z);
    }
  }
  EXPECT_EQ(eq_class(line(2, {0, 0, 1})).size(), 4U);
}

TEST(Projection, TrivialCharacterSumsTheOrbit) {
  for (unsigned q : {2U, 3U}) {
    const unsigned n = 2;
    const Character trivial{q, n, {}};
    for (const auto& x : affine_part(n, q)) {
      LatticeVector expected(q, n + 1);
      for (const auto& y : orbit(x)) expected.add_term(y, CycInt(q, static_cast<long long>(stabilizer(x).size())));
      EXPECT_EQ(p_chi(trivial, x), expected);
    }
  }
}

TEST(Projection, ZeroExactlyWhenCharacterNontrivialOnStabilizer) {
  for (unsigned q : {2U, 3U}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (const auto& chi : nontrivial_characters(n, q)) {
        for (const auto& x : affine_part(n, q)) {
          const auto stab = stabilizer(x);
          bool killed = false;
          for (const auto& g : stab) killed = killed || chi.exponent(g) != 0;
          const LatticeVector p = p_chi(chi, x);
          EXPECT_EQ(p.is_zero(), killed);
          if (killed) continue;
          const auto cls = eq_class(x);
          EXPECT_EQ(p.support_size(), cls.size());
          for (const auto& [y, c] : p.terms()) {
            EXPECT_TRUE(std::binary_search(cls.begin(), cls.end(), y));
            const auto mono = as_monomial(c);
            ASSERT_TRUE(mono);
            EXPECT_EQ(abs(mono->m), BigInt(stab.size()));
          }
        }
      }
    }
  }
}

// q = 3, n = 2, c = (1, 2): among the four lines of F_3^2 only span{(1,1)}
// survives the projection of its hat.
TEST(Projection, WorkedExampleOverF3) {
  const Character chi{3, 2, make_coords({1, 2})};
  const Subspace x1 = line(3, {1, 0});
  const Subspace x2 = line(3, {0, 1});
  const Subspace x3 = line(3, {1, 1});
  const Subspace x4 = line(3, {2, 1});
  EXPECT_TRUE(p_chi(chi, hat(x1)).is_zero());
  EXPECT_TRUE(p_chi(chi, hat(x2)).is_zero());
  EXPECT_TRUE(p_chi(chi, hat(x4)).is_zero());
  const LatticeVector p3 = p_chi(chi, hat(x3));
  EXPECT_FALSE(p3.is_zero());
  EXPECT_EQ(norm_sq(p3), 27);
  EXPECT_EQ(find_hyperplane(chi), x3);
  // coefficient of phi(a) hat(X_3) is conj(chi(a))
  for (const auto& g : group_elements(2, 3)) {
    if (g.a[0] != 0) continue;  // distinct representatives of the orbit
    EXPECT_EQ(p3.coeff(act(g, hat(x3))), CycInt(3, 3) * conj(chi.value(g)));
  }
}

TEST(Theta, Examples) {
  const LatticeVector t0 = theta(LatticeVector::basis(Subspace::zero(1, 2)));
  LatticeVector expected(2, 2);
  expected.add_term(line(2, {0, 1}), CycInt(2, 1));
  expected.add_term(line(2, {1, 1}), CycInt(2, 1));
  EXPECT_EQ(t0, expected);
  EXPECT_EQ(theta(LatticeVector::basis(Subspace::full(1, 2))), LatticeVector::basis(Subspace::full(2, 2)));
  EXPECT_EQ(norm_sq(t0), 2);
}

TEST(Hyperplane, Examples) {
  EXPECT_EQ(find_hyperplane(Character{2, 1, make_coords({1})}), Subspace::zero(1, 2));
  EXPECT_EQ(find_hyperplane(Character{2, 2, make_coords({1, 0})}), line(2, {0, 1}));
  EXPECT_THROW(find_hyperplane(Character{2, 2, {}}), ArgumentError);
}

TEST(Hyperplane, IsKernelAndHitByQMinusOneCharacters) {
  for (unsigned q : {2U, 3U}) {
    for (unsigned n = 1; n <= 3; ++n) {
      std::map<Subspace, unsigned> hits;
      for (const auto& chi : nontrivial_characters(n, q)) {
        const Subspace h = find_hyperplane(chi);
        EXPECT_EQ(h, kernel_of(chi)) << chi.str();
        ++hits[h];
      }
      EXPECT_EQ(BigInt(hits.size()), q_int(n, q));
      for (const auto& [h, count] : hits) EXPECT_EQ(count, q - 1);
    }
  }
}

TEST(Gamma, Examples) {
  const Character chi{2, 1, make_coords({1})};
  const LatticeVector g = gamma(chi, LatticeVector::basis(Subspace::zero(0, 2)));
  LatticeVector expected(2, 2);
  expected.add_term(line(2, {0, 1}), CycInt(2, 1));
  expected.add_term(line(2, {1, 1}), CycInt(2, -1));
  EXPECT_EQ(g, expected);
  EXPECT_EQ(norm_sq(g), 2);
  EXPECT_TRUE(up_apply(g).is_zero());
  EXPECT_THROW(gamma(Character{2, 1, {}}, LatticeVector::basis(Subspace::zero(0, 2))), ArgumentError);
}

TEST(Intertwining, ThetaAndGammaOnBasisVectors) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}}) {
    for (const auto& x : enumerate_all(static_cast<int>(n), q)) {
      const LatticeVector v = LatticeVector::basis(x);
      EXPECT_EQ(theta(BigInt(q) * up_apply(v)), up_apply(theta(v)));
      EXPECT_EQ(up_apply(embed(v)), embed(up_apply(v)) + theta(v));
      EXPECT_EQ(norm_sq(theta(v)), ipow(BigInt(q), n - x.dim()));
    }
    for (const auto& chi : nontrivial_characters(n, q)) {
      GammaMap g(chi);
      for (const auto& y : enumerate_all(static_cast<int>(n) - 1, q)) {
        const LatticeVector v = LatticeVector::basis(y);
        EXPECT_EQ(g(up_apply(v)), up_apply(g(v)));
        EXPECT_EQ(norm_sq(g(v)), ipow(BigInt(q), n + y.dim()));
      }
    }
  }
}

TEST(PermutationCharacter, Examples) {
  EXPECT_EQ(perm_character(1, 1, GroupElement{2, 1, make_coords({1})}), 0);
  EXPECT_EQ(perm_character(2, 2, GroupElement{2, 2, make_coords({1, 0})}), 2);
  EXPECT_THROW(perm_character(2, 0, GroupElement{2, 2, {}}), ArgumentError);
  EXPECT_THROW(perm_character(2, 4, GroupElement{2, 2, {}}), ArgumentError);
}

TEST(PermutationCharacter, ClosedFormsAndMultiplicities) {
  for (unsigned q : {2U, 3U}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned k = 1; k <= n + 1; ++k) {
        const BigInt scale = ipow(BigInt(q), n - k + 1);
        std::size_t affine_k = 0;
        for (const auto& x : affine_part(n, q)) affine_k += x.dim() == k ? 1 : 0;
        for (const auto& g : group_elements(n, q)) {
          const BigInt expected = g.is_identity() ? scale * q_binomial(n, k - 1, q) : scale * q_binomial(n - 1, static_cast<long long>(k) - 2, q);
          EXPECT_EQ(perm_character(n, k, g), expected);
          if (g.is_identity()) {
            EXPECT_EQ(perm_character(n, k, g), BigInt(affine_k));
          }
        }
        EXPECT_EQ(character_multiplicity(Character{q, n, {}}, k), q_binomial(n, k - 1, q));
        for (const auto& chi : nontrivial_characters(n, q)) {
          EXPECT_EQ(character_multiplicity(chi, k), q_binomial(n - 1, k - 1, q));
        }
      }
    }
  }
}

TEST(Decomposition, ReportPasses) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}, {1, 5}, {2, 5}}) {
    const Report r = verify_decomposition(n, q);
    EXPECT_TRUE(r.passed()) << n << " " << q << " " << (r.first_failure() ? r.first_failure()->name : "");
    for (const char* name : {"dimension_count", "up_operator_splitting", "theta_scaling", "gamma_scaling",
                             "orthogonal_across_blocks", "characters_per_hyperplane", "rankset_W0", "rankset_Wchi"}) {
      ASSERT_NE(r.find(name), nullptr) << name;
      EXPECT_GT(r.find(name)->instances, 0U) << name;
    }
    const Check* within = r.find("orthogonal_within_block");
    ASSERT_NE(within, nullptr);
    EXPECT_TRUE(within->passed);
    EXPECT_EQ(within->instances == 0, n == 1);
  }
}
