#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qlattice;

namespace {

LatticeVector term(const Subspace& x, long long c) {
  LatticeVector v(x.field(), x.ambient());
  v.add_term(x, CycInt(x.field(), c));
  return v;
}

Subspace line2(std::initializer_list<unsigned> v) { return Subspace::span(2, 2, {make_coords(v)}); }

const std::vector<std::pair<unsigned, unsigned>> kSmallCases{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2},
                                                              {1, 3}, {2, 3}, {3, 3}, {4, 3},
                                                              {1, 5}, {2, 5}, {3, 5}};

}  // namespace

TEST(Construct, BaseCases) {
  const auto b0 = construct_sjb(0, 3);
  ASSERT_EQ(b0.chains.size(), 1U);
  EXPECT_EQ(b0.chains[0].vectors, std::vector<LatticeVector>{LatticeVector::basis(Subspace::zero(0, 3))});
  const auto b1 = construct_sjb(1, 2);
  ASSERT_EQ(b1.chains.size(), 1U);
  EXPECT_EQ(b1.chains[0].start_rank, 0U);
  EXPECT_EQ(b1.chains[0].vectors, (std::vector<LatticeVector>{LatticeVector::basis(Subspace::zero(1, 2)),
                                                              LatticeVector::basis(Subspace::full(1, 2))}));
}

TEST(Construct, TwoDimensionalBinaryCase) {
  const auto b = construct_sjb(2, 2);
  const Subspace e1 = line2({1, 0});
  const Subspace e2 = line2({0, 1});
  const Subspace e12 = line2({1, 1});
  ASSERT_EQ(b.chains.size(), 3U);
  EXPECT_EQ(b.chains[0].start_rank, 0U);
  EXPECT_EQ(b.chains[0].vectors, (std::vector<LatticeVector>{LatticeVector::basis(Subspace::zero(2, 2)),
                                                             term(e1, 1) + term(e2, 1) + term(e12, 1),
                                                             term(Subspace::full(2, 2), 3)}));
  std::vector<LatticeVector> singles;
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(b.chains[i].start_rank, 1U);
    ASSERT_EQ(b.chains[i].vectors.size(), 1U);
    singles.push_back(b.chains[i].vectors[0]);
  }
  EXPECT_EQ(singles[0], term(e1, -2) + term(e2, 1) + term(e12, 1));
  EXPECT_EQ(singles[1], term(e2, 1) - term(e12, 1));
}

TEST(Construct, ChainCountProfile) {
  const auto b = construct_sjb(3, 2);
  std::map<unsigned, int> profile;
  for (const auto& c : b.chains) ++profile[c.start_rank];
  EXPECT_EQ(profile, (std::map<unsigned, int>{{0, 1}, {1, 6}}));
  EXPECT_EQ(b.vector_count(), 16U);
}

TEST(Construct, RejectsNonPrime) {
  EXPECT_THROW(construct_sjb(2, 4), UnsupportedError);
  EXPECT_THROW(construct_sjb(2, 1), UnsupportedError);
}

TEST(Construct, Deterministic) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{4, 2}, {3, 3}}) {
    EXPECT_EQ(to_json(construct_sjb(n, q)).dump(), to_json(construct_sjb(n, q)).dump());
  }
}

TEST(SingularValues, Examples) {
  EXPECT_EQ(singular_value_sq(2, 2, 0, 0), 3);
  EXPECT_EQ(singular_value_sq(2, 2, 0, 1), 3);
  EXPECT_EQ(singular_value_sq(2, 3, 1, 1), 2);
  EXPECT_EQ(singular_value_sq(3, 2, 0, 0), 4);
  EXPECT_THROW(singular_value_sq(2, 2, 0, 2), ArgumentError);
  EXPECT_THROW(singular_value_sq(2, 4, 2, 2), ArgumentError);
  EXPECT_THROW(singular_value_sq(2, 4, 2, 1), ArgumentError);
}

TEST(Verify, ConstructedBasesPass) {
  for (auto [n, q] : kSmallCases) {
    const Report r = verify_sjb(construct_sjb(n, q), {});
    EXPECT_TRUE(r.passed()) << n << " " << q << " " << (r.first_failure() ? r.first_failure()->detail : "");
  }
}

TEST(Verify, RatioTableForTernaryPlane) {
  const Report r = verify_sjb(construct_sjb(2, 3), {});
  ASSERT_TRUE(r.passed());
  ASSERT_NE(r.find("singular_values"), nullptr);
  EXPECT_EQ(r.find("singular_values")->detail, "k=0: (4, 4)");
}

TEST(Verify, SpotModePassesOnLargerCase) {
  const Report r = verify_sjb(construct_sjb(6, 2), VerifyOptions{.mode = VerifyMode::spot});
  EXPECT_TRUE(r.passed());
}

// Every single-coefficient perturbation of a small basis is detected, and the
// report names a structural identity.
TEST(Verify, EveryPerturbationIsCaught) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {2, 3}}) {
    const auto good = construct_sjb(n, q);
    for (std::size_t c = 0; c < good.chains.size(); ++c) {
      for (std::size_t v = 0; v < good.chains[c].vectors.size(); ++v) {
        for (const auto& [x, coeff] : good.chains[c].vectors[v].terms()) {
          auto bad = good;
          bad.chains[c].vectors[v].add_term(x, CycInt(q, 1));
          const Report r = verify_sjb(bad, {});
          ASSERT_FALSE(r.passed());
          const std::string name = r.first_failure()->name;
          EXPECT_TRUE(name == "chain_condition" || name == "orthogonality" || name == "singular_values" ||
                      name == "monomial_coefficients" || name == "homogeneous_nonzero")
              << name;
        }
      }
    }
  }
}

TEST(Verify, StructuralDamageIsCaught) {
  auto b = construct_sjb(3, 2);
  b.chains.pop_back();
  Report r = verify_sjb(b, {});
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.find("chain_counts")->passed);

  b = construct_sjb(3, 3);
  b.chains[1].vectors.pop_back();
  r = verify_sjb(b, {});
  EXPECT_FALSE(r.find("chain_symmetry")->passed);

  b = construct_sjb(2, 3);
  auto& terms = b.chains[1].vectors[0].mutable_terms();
  terms.begin()->second = CycInt::from_coeffs(3, {1, 2});
  r = verify_sjb(b, {});
  EXPECT_FALSE(r.find("monomial_coefficients")->passed);
}

TEST(Basis, RankSlicesSpan) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {4, 3}}) {
    const auto b = construct_sjb(n, q);
    for (unsigned m = 0; m <= n; ++m) {
      std::vector<LatticeVector> slice;
      for (const auto& [k, v] : b.slice(m)) slice.push_back(*v);
      EXPECT_EQ(BigInt(slice.size()), q_binomial(n, m, q));
      EXPECT_EQ(BigInt(exact_rank(slice)), q_binomial(n, m, q)) << n << " " << q << " m=" << m;
    }
  }
}

// Identities used while splicing a chain of J_q(n) with its theta-image.
TEST(Basis, SpliceIdentities) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    const BigInt qq = q;
    for (const auto& chain : construct_sjb(n, q).chains) {
      const unsigned k = chain.start_rank;
      for (unsigned u = k; u <= chain.end_rank(); ++u) {
        const LatticeVector& x = chain.at_rank(u);
        const LatticeVector xbar = theta(x);
        const LatticeVector next = u < chain.end_rank() ? chain.at_rank(u + 1) : LatticeVector(q, n);
        const LatticeVector xbar_next = theta(next);
        EXPECT_EQ(up_apply(xbar), qq * xbar_next);
        EXPECT_EQ(norm_sq(xbar), ipow(qq, n - u) * norm_sq(x));
        EXPECT_EQ(up_apply(embed(x)), embed(next) + xbar);
        const LatticeVector lifted = embed(x);
        for (const auto& [s, c] : lifted.terms()) EXPECT_EQ(xbar.coeff(s), CycInt(q));
      }
      const auto spliced = detail::splice_chain(chain, n, q);
      if (spliced.size() == 2) {
        const JordanChain& y = spliced[0];
        const JordanChain& z = spliced[1];
        for (unsigned l = z.start_rank; l <= z.end_rank(); ++l) {
          EXPECT_TRUE(inner(y.at_rank(l), z.at_rank(l)).is_zero());
        }
      }
    }
  }
}

TEST(Basis, JsonRoundTrip) {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {3, 3}, {2, 5}}) {
    const auto b = construct_sjb(n, q);
    const Json j = to_json(b);
    const auto back = basis_from_json(Json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump());
    ASSERT_EQ(back.chains.size(), b.chains.size());
    for (std::size_t c = 0; c < b.chains.size(); ++c) EXPECT_EQ(back.chains[c].vectors, b.chains[c].vectors);
  }
}

TEST(Basis, ImportCanonicalizesAndMerges) {
  // Both terms name span{(1,0,1),(0,1,1)} over F_2 through different bases.
  const Json v = Json::parse(R"({"n": 3, "q": 2, "terms": [
      {"subspace": {"n": 3, "k": 2, "cols": [[1,1,0],[1,0,1]]}, "coeff": {"m": 2, "j": 0}},
      {"subspace": {"n": 3, "k": 2, "cols": [[1,0,1],[0,1,1]]}, "coeff": {"m": 3, "j": 0}}]})");
  const LatticeVector lv = lattice_vector_from_json(v);
  ASSERT_EQ(lv.support_size(), 1U);
  const Subspace x = Subspace::span(3, 2, {make_coords({1, 0, 1}), make_coords({0, 1, 1})});
  EXPECT_EQ(lv.coeff(x), CycInt(2, 5));

  EXPECT_THROW(lattice_vector_from_json(Json::parse(R"({"n": 2, "q": 4, "terms": []})")), UnsupportedError);
  EXPECT_THROW(lattice_vector_from_json(Json::parse(
                   R"({"n": 2, "q": 2, "terms": [{"subspace": {"n": 2, "k": 2, "cols": [[1,1],[1,1]]}, "coeff": {"m": 1, "j": 0}}]})")),
               ArgumentError);
  EXPECT_THROW(basis_from_json(Json::parse(R"({"q": 2, "n": 2})")), ArgumentError);
}

TEST(Basis, CoefficientJsonForms) {
  EXPECT_EQ(to_json(CycInt::monomial(3, -4, 2)).dump(), R"({"m":-4,"j":2})");
  EXPECT_EQ(to_json(CycInt::from_coeffs(3, {1, 2})).dump(), R"({"coeffs":[1,2]})");
  EXPECT_EQ(cycint_from_json(Json::parse(R"({"coeffs":[1,2]})"), 3), CycInt::from_coeffs(3, {1, 2}));
  const BigInt huge = ipow(BigInt(10), 30);
  EXPECT_EQ(to_json(CycInt(2, huge)).dump(), R"({"m":")" + huge.str() + R"(","j":0})");
  EXPECT_EQ(cycint_from_json(to_json(CycInt(2, huge)), 2), CycInt(2, huge));
}
