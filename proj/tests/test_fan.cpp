#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_fans.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/divisors.hpp"
#include "toriclift/lattice.hpp"

using namespace toriclift;
using namespace toriclift::testing;

namespace {

std::vector<std::string> issues_of(const FanData& data) {
  try {
    validate_fan(data);
  } catch (const InputError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  for (const auto& i : issues)
    if (i.find(needle) != std::string::npos) return true;
  return false;
}

FanData relabel(const FanData& fan, const std::vector<std::size_t>& perm) {
  FanData out{fan.rank, std::vector<LatticeVector>(fan.rays.size()), {}};
  for (std::size_t i = 0; i < perm.size(); ++i) out.rays[perm[i]] = fan.rays[i];
  for (const auto& c : fan.cones) {
    std::vector<std::size_t> nc;
    for (auto i : c) nc.push_back(perm[i]);
    out.cones.push_back(nc);
  }
  return out;
}

}  // namespace

TEST(Validate, AcceptsStandardFans) {
  EXPECT_NO_THROW(quadric());
  EXPECT_NO_THROW(projective_plane());
  EXPECT_NO_THROW(projective_plane_blowup());
  EXPECT_NO_THROW(square_cone());
}

TEST(Validate, ReportsNonPrimitiveRay) {
  auto issues = issues_of({2, {v({2, 0}), v({0, 1})}, {{0, 1}}});
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_TRUE(mentions(issues, "ray 0 (2,0) is not primitive"));
}

TEST(Validate, ReportsEveryStructuralIssue) {
  auto issues = issues_of({2, {v({1, 0}), v({1, 0}), v({0, 0}), v({1, 1})}, {{0, 7}, {0, 0}}});
  EXPECT_TRUE(mentions(issues, "rays 0 and 1 coincide"));
  EXPECT_TRUE(mentions(issues, "ray 2 is zero"));
  EXPECT_TRUE(mentions(issues, "index 7 out of range"));
  EXPECT_TRUE(mentions(issues, "lists a ray twice"));
}

TEST(Validate, ReportsBadFaceIntersection) {
  // Two overlapping cones in the plane.
  auto issues = issues_of({2, {v({1, 0}), v({0, 1}), v({1, 1}), v({1, 2})}, {{0, 3}, {1, 2}}});
  EXPECT_TRUE(mentions(issues, "do not meet in a common face"));
}

TEST(Validate, ReportsNonStronglyConvexAndContainedCones) {
  EXPECT_TRUE(mentions(issues_of({1, {v({1}), v({-1})}, {{0, 1}}}), "not strongly convex"));
  EXPECT_TRUE(mentions(issues_of({2, {v({1, 0}), v({0, 1})}, {{0, 1}, {0}}}), "is contained in cone"));
  EXPECT_TRUE(mentions(issues_of({2, {v({1, 0}), v({0, 1}), v({1, 1})}, {{0, 1, 2}}}), "not an extremal ray"));
}

TEST(Validate, RayGuard) {
  FanData big{1, {v({1})}, {{0}}};
  EXPECT_THROW(validate_fan(big, FanLimits{0}), ResourceError);
}

TEST(Validate, RelabelingPreservesAcceptance) {
  std::mt19937 rng(41);
  std::vector<FanData> samples = {projective_plane().data(), projective_plane_blowup().data(),
                                  {2, {v({1, 0}), v({0, 1}), v({1, 1}), v({1, 2})}, {{0, 3}, {1, 2}}},
                                  {2, {v({1, 0}), v({0, 1}), v({-1, 0})}, {{0, 1}, {1, 2}, {0, 2}}}};
  for (int i = 0; i < 20; ++i) samples.push_back(random_fan(rng).data());
  for (const auto& s : samples) {
    std::vector<std::size_t> perm(s.rays.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(issues_of(s).empty(), issues_of(relabel(s, perm)).empty());
  }
}

TEST(MinimalCone, Examples) {
  EXPECT_EQ(minimal_cone_containing(quadric(), v({1, 1})), (Cone{0, 1}));
  EXPECT_EQ(minimal_cone_containing(quadric(), v({0, 0})), Cone{});
  EXPECT_EQ(minimal_cone_containing(projective_plane(), v({5, 0})), (Cone{0}));
  EXPECT_FALSE(minimal_cone_containing(quadric(), v({-1, 0})));
  EXPECT_THROW(minimal_cone_containing(quadric(), v({1})), InputError);
}

TEST(MinimalCone, RaysGiveTheirOwnFace) {
  std::mt19937 rng(43);
  for (int i = 0; i < 30; ++i) {
    Fan f = random_fan(rng);
    for (std::size_t rho = 0; rho < f.num_rays(); ++rho) EXPECT_EQ(minimal_cone_containing(f, f.ray(rho)), (Cone{rho}));
  }
}

TEST(Smoothness, Examples) {
  auto q = smoothness_profile(quadric());
  EXPECT_TRUE(q.simplicial);
  EXPECT_FALSE(q.smooth);
  EXPECT_EQ(q.cones[0].multiplicity, 2);
  EXPECT_TRUE(smoothness_profile(projective_plane()).smooth);
  EXPECT_FALSE(smoothness_profile(square_cone()).simplicial);
}

TEST(Smoothness, AgreesWithDeterminantsOnRandomFans) {
  std::mt19937 rng(47);
  for (int i = 0; i < 40; ++i) {
    Fan f = random_fan(rng);
    auto prof = smoothness_profile(f);
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
      const IntMatrix m = f.ray_matrix(f.max_cones()[c]);
      const auto factors = invariant_factors_by_minors(m);
      const bool simplicial = factors.size() == f.max_cones()[c].size();
      EXPECT_EQ(prof.cones[c].simplicial, simplicial);
      if (simplicial) {
        Integer product = 1;
        for (const auto& x : factors) product *= x;
        EXPECT_EQ(prof.cones[c].smooth, product == 1);
        if (m.rows() == m.cols()) EXPECT_EQ(abs(determinant(m)), product);
      }
    }
  }
}

TEST(TorusSplit, Examples) {
  auto point = validate_fan(FanData{2, {}, {}});
  auto s0 = split_torus_factor(point);
  EXPECT_EQ(s0.torus_rank, 2u);
  EXPECT_EQ(s0.reduced_fan.rank(), 0u);
  auto embedded = make_fan(3, {v({1, 0, 0}), v({1, 2, 0})}, {{0, 1}});
  auto s1 = split_torus_factor(embedded);
  EXPECT_EQ(s1.torus_rank, 1u);
  EXPECT_EQ(class_group(s1.reduced_fan).group(), class_group(quadric()).group());
  auto s2 = split_torus_factor(projective_plane());
  EXPECT_EQ(s2.torus_rank, 0u);
  EXPECT_EQ(s2.change_of_basis, IntMatrix::identity(2));
}

TEST(TorusSplit, ChangeOfBasisReproducesReducedRays) {
  std::mt19937 rng(53);
  for (int i = 0; i < 40; ++i) {
    Fan f = random_fan(rng, {2, 6, true, true});
    const std::size_t extra = rng() % 3;
    Fan padded = add_torus_factor(f, extra);
    Fan moved = transform_fan(padded, random_unimodular(rng, padded.rank()));
    auto split = split_torus_factor(moved);
    EXPECT_EQ(split.torus_rank, moved.rank() - moved.ray_span_rank());
    EXPECT_EQ(split.torus_rank, split_torus_factor(padded).torus_rank);
    EXPECT_FALSE(split.reduced_fan.is_degenerate());
    const Integer det = determinant(split.change_of_basis);
    EXPECT_TRUE(det == 1 || det == -1);
    for (std::size_t rho = 0; rho < moved.num_rays(); ++rho) {
      IntVector image = split.change_of_basis * moved.ray(rho);
      for (std::size_t k = split.reduced_fan.rank(); k < image.size(); ++k) EXPECT_EQ(image[k], 0);
      image.resize(split.reduced_fan.rank());
      EXPECT_EQ(image, split.reduced_fan.ray(rho));
    }
  }
}
