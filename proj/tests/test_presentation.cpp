#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_fans.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/presentation.hpp"

using namespace toriclift;
using namespace toriclift::testing;

namespace {

std::vector<std::vector<std::size_t>> families(const Presentation& p) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : p.exceptional) out.push_back(c.coordinates);
  return out;
}

}  // namespace

TEST(Presentation, ProjectivePlaneCox) {
  auto p = build_presentation(projective_plane(), PresentationMode::Cox);
  EXPECT_EQ(p.grading_group().to_string(), "Z");
  ASSERT_EQ(p.coordinates.size(), 3u);
  for (const auto& d : p.degrees) EXPECT_EQ(abs(d.at(0)), 1);
  EXPECT_EQ(p.degrees[0], p.degrees[1]);
  EXPECT_EQ(p.degrees[1], p.degrees[2]);
  EXPECT_EQ(families(p), (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
}

TEST(Presentation, QuadricCoxAndKajiwara) {
  auto cox = build_presentation(quadric(), PresentationMode::Cox);
  EXPECT_EQ(cox.grading_group().to_string(), "Z/2");
  ASSERT_EQ(cox.degrees.size(), 2u);
  for (const auto& d : cox.degrees) EXPECT_FALSE(cox.grading_group().is_zero_element(d));
  EXPECT_TRUE(cox.exceptional.empty());

  auto kaj = build_presentation(quadric(), PresentationMode::Kajiwara);
  EXPECT_TRUE(kaj.grading_group().is_trivial());
  EXPECT_EQ(kaj.coordinates.size(), 3u);
  EXPECT_TRUE(kaj.exceptional.empty());
}

TEST(Presentation, HirzebruchPairs) {
  auto p = build_presentation(projective_plane_blowup(), PresentationMode::Cox);
  EXPECT_EQ(p.grading_group().free_rank(), 2u);
  // rays (1,0),(0,1),(-1,-1),(1,1): the pairs not sharing a cone
  auto got = families(p);
  EXPECT_EQ(got.size(), 2u);
  for (const auto& f : got) EXPECT_EQ(f.size(), 2u);
}

TEST(Presentation, RejectsDegenerateAndPoorSubgroups) {
  EXPECT_THROW(build_presentation(make_fan(2, {v({1, 0})}, {{0}}), PresentationMode::Cox), DomainError);
  EXPECT_THROW(build_presentation(DivisorSubgroup::principal(projective_plane())), InputError);
  EXPECT_THROW(build_presentation(projective_plane(), PresentationMode::Custom), InputError);
}

TEST(Presentation, CodimensionOneExceptionalSetIsRejected) {
  // A coordinate avoiding every maximal cone is exceptional on its own.
  auto ex = exceptional_collections(projective_plane(), {TDivisor{v({0, 0, 0})}, TDivisor{v({0, 0, 1})}});
  EXPECT_FALSE(ex.codimension_ok);
  EXPECT_EQ(ex.collections.front().coordinates, (std::vector<std::size_t>{0}));
  auto ok = exceptional_collections(projective_plane(), {TDivisor{v({1, 1, 0})}, TDivisor{v({0, 0, 1})}});
  EXPECT_TRUE(ok.codimension_ok);
  EXPECT_TRUE(ok.collections.empty());
}

TEST(Presentation, ExceptionalGuard) {
  std::vector<TDivisor> many(31, TDivisor{v({1, 0, 0})});
  EXPECT_THROW(exceptional_collections(projective_plane(), many), ResourceError);
}

TEST(Presentation, DegreesMatchClassesOnRandomFans) {
  std::mt19937 rng(89);
  for (int i = 0; i < 25; ++i) {
    Fan f = random_fan(rng, {3, 7, false, true});
    auto p = build_presentation(f, PresentationMode::Cox);
    EXPECT_EQ(p.coordinates.size(), f.num_rays());
    EXPECT_EQ(p.grading_group(), class_group(f).group());
    for (const auto& c : p.exceptional) {
      EXPECT_GE(c.coordinates.size(), 2u);
      for (const auto& cone : f.max_cones()) {
        bool all_meet = true;
        for (auto k : c.coordinates) {
          bool meets = false;
          for (auto rho : cone) meets = meets || p.coordinates[k].coefficients[rho] != 0;
          all_meet = all_meet && meets;
        }
        EXPECT_FALSE(all_meet);
      }
    }
  }
}

TEST(Factorization, ExtremeSubgroups) {
  for (const Fan& f : {quadric(), projective_plane(), projective_plane_blowup()}) {
    auto full = grading_factorization(DivisorSubgroup::cox(f));
    EXPECT_TRUE(full.divisors_over_subgroup.group.is_trivial());
    EXPECT_EQ(full.subgroup_over_principal.group, full.divisors_over_principal.group);
    EXPECT_TRUE(full.composite_is_zero());
  }
  auto principal = grading_factorization(DivisorSubgroup::principal(quadric()));
  EXPECT_TRUE(principal.subgroup_over_principal.group.is_trivial());
  EXPECT_EQ(principal.divisors_over_subgroup.group.to_string(), "Z/2");
  auto cartier = grading_factorization(cartier_subgroup(DivisorSubgroup::cox(quadric())));
  EXPECT_EQ(cartier.divisors_over_subgroup.group.to_string(), "Z/2");
  EXPECT_EQ(cartier.cox_degrees.size(), 2u);
}

TEST(Factorization, ExactnessOnRandomFans) {
  std::mt19937 rng(97);
  for (int i = 0; i < 25; ++i) {
    Fan f = random_fan(rng, {3, 7, false, true});
    auto fact = grading_factorization(cartier_subgroup(DivisorSubgroup::cox(f)));
    EXPECT_TRUE(fact.composite_is_zero());
    EXPECT_TRUE(fact.ranks_balance());
    EXPECT_TRUE(fact.orders_balance());
    EXPECT_TRUE(fact.inclusion.is_injective());
    EXPECT_TRUE(fact.projection.is_surjective());
  }
}
