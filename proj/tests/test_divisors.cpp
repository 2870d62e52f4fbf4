#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_fans.hpp"
#include "toriclift/divisors.hpp"
#include "toriclift/errors.hpp"

using namespace toriclift;
using namespace toriclift::testing;

TEST(Principal, Examples) {
  EXPECT_EQ(principal_divisor(quadric(), v({0, 1})).coefficients, v({0, 2}));
  EXPECT_EQ(principal_divisor(projective_plane(), v({0, 0})).coefficients, v({0, 0, 0}));
  EXPECT_EQ(principal_divisor(projective_plane(), v({1, 0})).coefficients, v({1, 0, -1}));
}

TEST(Cartier, Examples) {
  EXPECT_FALSE(cartier_data(quadric(), TDivisor{v({0, 1})}));
  EXPECT_EQ(first_non_cartier_cone(quadric(), TDivisor{v({0, 1})}), 0u);
  auto c = cartier_data(quadric(), TDivisor{v({0, 2})});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->local_characters[0], v({0, 1}));
  for (auto d : {v({1, 0, 0}), v({3, -1, 2}), v({0, 0, 5})}) EXPECT_TRUE(cartier_data(projective_plane(), TDivisor{d}));
}

TEST(Cartier, LocalCharactersPairToCoefficients) {
  std::mt19937 rng(61);
  for (int i = 0; i < 30; ++i) {
    Fan f = random_fan(rng);
    TDivisor d{zero_vector(f.num_rays())};
    for (auto& x : d.coefficients) x = static_cast<long>(rng() % 7) - 3;
    auto data = cartier_data(f, d);
    EXPECT_EQ(data.has_value(), smoothness_profile(f).smooth || data.has_value());
    if (smoothness_profile(f).smooth) EXPECT_TRUE(data);
    if (!data) continue;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c)
      for (auto rho : f.max_cones()[c]) EXPECT_EQ(dot(data->local_characters[c], f.ray(rho)), d.coefficients[rho]);
  }
}

TEST(Cartier, EveryDivisorCartierIffSmooth) {
  std::mt19937 rng(67);
  for (int i = 0; i < 40; ++i) {
    Fan f = random_fan(rng);
    bool all = true;
    for (std::size_t rho = 0; rho < f.num_rays(); ++rho) all = all && cartier_data(f, prime_divisor(f, rho)).has_value();
    EXPECT_EQ(all, smoothness_profile(f).smooth);
  }
  // Q-factorial: twice each prime divisor on the quadric cone is Cartier.
  for (std::size_t rho = 0; rho < 2; ++rho) {
    TDivisor twice{scale(Integer(2), prime_divisor(quadric(), rho).coefficients)};
    EXPECT_TRUE(cartier_data(quadric(), twice));
  }
}

TEST(ClassGroup, Examples) {
  EXPECT_EQ(class_group(quadric()).group().to_string(), "Z/2");
  EXPECT_EQ(class_group(projective_plane()).group().to_string(), "Z");
  EXPECT_TRUE(class_group(affine_plane()).group().is_trivial());
  EXPECT_EQ(class_group(projective_plane_blowup()).group().to_string(), "Z ⊕ Z");
  EXPECT_THROW(class_group(make_fan(2, {v({1, 0})}, {{0}})), DomainError);
}

TEST(ClassGroup, VanishesExactlyOnPrincipalDivisors) {
  std::mt19937 rng(71);
  for (int i = 0; i < 30; ++i) {
    Fan f = random_fan(rng, {3, 8, false, true});
    if (f.is_degenerate()) continue;
    auto cl = class_group(f);
    for (int k = 0; k < 5; ++k) {
      IntVector m;
      for (std::size_t j = 0; j < f.rank(); ++j) m.emplace_back(static_cast<long>(rng() % 11) - 5);
      EXPECT_TRUE(cl.group().is_zero_element(cl.class_of(principal_divisor(f, m))));
      TDivisor d{zero_vector(f.num_rays())};
      for (auto& x : d.coefficients) x = static_cast<long>(rng() % 5) - 2;
      const bool zero = cl.group().is_zero_element(cl.class_of(d));
      const bool principal = solve_integer_linear(f.ray_matrix().transposed(), d.coefficients).has_value();
      EXPECT_EQ(zero, principal);
    }
  }
}

TEST(Subgroup, ValidationReportsEachFailure) {
  try {
    DivisorSubgroup::create(quadric(), IntMatrix{{1, 0}, {2, 0}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.issues().at(0)).find("dependent"), std::string::npos);
  }
  try {
    DivisorSubgroup::create(quadric(), IntMatrix{{1, 0}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.issues().at(0)).find("principal divisor"), std::string::npos);
  }
  // ⟨(1,-1),(0,2)⟩ contains M = ⟨(1,1),(0,2)⟩ but its effective part does not generate it.
  auto fan = make_fan(2, {v({1, 0}), v({0, 1})}, {{0}, {1}});
  EXPECT_NO_THROW(DivisorSubgroup::create(fan, IntMatrix{{1, 0}, {0, 1}}));
}

TEST(Subgroup, ContainsPrincipalAndGeneratorsAreEffectiveMembers) {
  std::mt19937 rng(73);
  for (int i = 0; i < 25; ++i) {
    Fan f = random_fan(rng, {3, 7, false, true});
    for (const auto& sub : {DivisorSubgroup::cox(f), cartier_subgroup(DivisorSubgroup::cox(f))}) {
      for (std::size_t k = 0; k < f.rank(); ++k)
        EXPECT_TRUE(sub.contains(principal_divisor(f, unit_vector(f.rank(), k))));
      for (const auto& g : effective_generators(sub)) {
        EXPECT_TRUE(g.is_effective());
        EXPECT_TRUE(sub.contains(g));
      }
    }
  }
}

TEST(Effective, Examples) {
  auto p2 = effective_generators(DivisorSubgroup::cox(projective_plane()));
  EXPECT_EQ(p2.size(), 3u);
  auto q = effective_generators(DivisorSubgroup::cox(quadric()));
  EXPECT_EQ(q.size(), 2u);
  auto m = effective_generators(DivisorSubgroup::principal(quadric()));
  std::set<IntVector> got;
  for (const auto& d : m) got.insert(d.coefficients);
  EXPECT_EQ(got, (std::set<IntVector>{v({1, 1}), v({0, 2}), v({2, 0})}));
}

TEST(EnoughDivisors, Examples) {
  std::mt19937 rng(79);
  for (int i = 0; i < 20; ++i) {
    Fan f = random_fan(rng);
    auto report = has_enough_divisors(DivisorSubgroup::cox(f));
    EXPECT_TRUE(report.passes);
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
      ASSERT_TRUE(report.witnesses[c]);
      const auto& d = *report.witnesses[c];
      EXPECT_TRUE(d.is_effective());
      for (std::size_t rho = 0; rho < f.num_rays(); ++rho) {
        const bool in_cone = std::find(f.max_cones()[c].begin(), f.max_cones()[c].end(), rho) != f.max_cones()[c].end();
        EXPECT_EQ(d.coefficients[rho] != 0, !in_cone);
      }
    }
  }
  auto affine = has_enough_divisors(DivisorSubgroup::principal(quadric()));
  EXPECT_TRUE(affine.passes);
  EXPECT_TRUE(is_zero(affine.witnesses[0]->coefficients));
  auto p2 = has_enough_divisors(DivisorSubgroup::principal(projective_plane()));
  EXPECT_FALSE(p2.passes);
  EXPECT_EQ(p2.failing_cones.size(), 3u);
}

TEST(CartierSubgroup, Examples) {
  EXPECT_EQ(cartier_subgroup(DivisorSubgroup::cox(projective_plane())).basis(), IntMatrix::identity(3));
  EXPECT_EQ(cartier_subgroup(DivisorSubgroup::cox(quadric())).basis(), (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(cartier_subgroup(DivisorSubgroup::principal(quadric())).basis(), (IntMatrix{{1, 1}, {0, 2}}));
}

TEST(CartierSubgroup, ContainsPrincipalAndOnlyCartier) {
  std::mt19937 rng(83);
  for (int i = 0; i < 25; ++i) {
    Fan f = random_fan(rng, {3, 7, true, true});
    auto c = cartier_subgroup(DivisorSubgroup::cox(f));
    for (std::size_t k = 0; k < f.rank(); ++k) EXPECT_TRUE(c.contains(principal_divisor(f, unit_vector(f.rank(), k))));
    for (std::size_t j = 0; j < c.rank(); ++j) EXPECT_TRUE(cartier_data(f, c.basis_divisor(j)));
    // index check: every Cartier prime-divisor combination with small coefficients is in C
    for (std::size_t rho = 0; rho < f.num_rays(); ++rho) {
      auto d = prime_divisor(f, rho);
      EXPECT_EQ(cartier_data(f, d).has_value(), c.contains(d));
    }
  }
}
