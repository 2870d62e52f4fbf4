#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_fans.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/iso.hpp"

using namespace toriclift;
using namespace toriclift::testing;

namespace {

Fan relabeled(std::mt19937& rng, const Fan& f) {
  std::vector<std::size_t> perm(f.num_rays());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<LatticeVector> rays(f.num_rays());
  for (std::size_t i = 0; i < perm.size(); ++i) rays[perm[i]] = f.ray(i);
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    Cone nc;
    for (auto i : c) nc.push_back(perm[i]);
    cones.push_back(nc);
  }
  std::shuffle(cones.begin(), cones.end(), rng);
  return make_fan(f.rank(), rays, cones);
}

bool unimodular(const IntMatrix& m) {
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST(Iso, ConjugatedProjectivePlane) {
  auto b = make_fan(2, {v({1, 0}), v({1, 1}), v({-2, -1})}, {{0, 1}, {1, 2}, {0, 2}});
  auto iso = fan_isomorphic(projective_plane(), b);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(verify_fan_iso(projective_plane(), b, *iso));
  EXPECT_EQ(iso->matrix, (IntMatrix{{1, 1}, {0, 1}}));
}

TEST(Iso, NonIsomorphicPairs) {
  EXPECT_FALSE(fan_isomorphic(projective_plane(), projective_plane_blowup()));
  EXPECT_TRUE(isomorphism_prefilter(projective_plane(), projective_plane_blowup()));
  EXPECT_FALSE(fan_isomorphic(quadric(), affine_plane()));
  EXPECT_TRUE(isomorphism_prefilter(quadric(), affine_plane()));
  // Same prefilter data, different cones: the A_1 and A_3 singularities differ by multiplicity.
  auto a3 = make_fan(2, {v({1, 0}), v({1, 4})}, {{0, 1}});
  EXPECT_FALSE(fan_isomorphic(quadric(), a3));
  // Cyclic quotient cones: types (3,2) and (3,1) differ, (5,3) and (5,2) agree since 2·3 ≡ 1.
  auto x = make_fan(2, {v({1, 0}), v({1, 3})}, {{0, 1}});
  auto y = make_fan(2, {v({1, 0}), v({1, -3})}, {{0, 1}});
  auto z = make_fan(2, {v({0, 1}), v({3, -1})}, {{0, 1}});
  EXPECT_TRUE(fan_isomorphic(x, y));
  EXPECT_FALSE(fan_isomorphic(x, z));
  auto w = make_fan(2, {v({0, 1}), v({3, 1})}, {{0, 1}});
  auto t = make_fan(2, {v({1, 0}), v({1, 3})}, {{0, 1}});
  EXPECT_TRUE(fan_isomorphic(w, t));
  auto a = make_fan(2, {v({1, 0}), v({2, 5})}, {{0, 1}});
  auto b = make_fan(2, {v({1, 0}), v({3, 5})}, {{0, 1}});
  EXPECT_TRUE(fan_isomorphic(a, b));
  EXPECT_FALSE(fan_isomorphic(a, make_fan(2, {v({1, 0}), v({1, 5})}, {{0, 1}})));
}

TEST(Iso, DegenerateFansNeedTorusSplit) {
  auto embedded = make_fan(3, {v({1, 0, 0}), v({1, 2, 0})}, {{0, 1}});
  EXPECT_THROW(fan_isomorphic(embedded, embedded), DomainError);
  auto conjugated = make_fan(3, {v({1, 0, 1}), v({3, 2, -1})}, {{0, 1}});
  auto report = toric_isomorphism(embedded, conjugated);
  ASSERT_TRUE(report.isomorphic);
  EXPECT_EQ(report.split_a.torus_rank, 1u);
  EXPECT_EQ(report.reason, "isomorphic after cancelling a torus factor of rank 1");
  ASSERT_TRUE(report.full_matrix);
  EXPECT_TRUE(unimodular(*report.full_matrix));
  EXPECT_TRUE(verify_fan_iso(embedded, conjugated,
                             FanIso{*report.full_matrix, report.reduced_iso->ray_bijection,
                                    report.reduced_iso->cone_bijection}));
  // Different torus ranks.
  auto p2_torus = add_torus_factor(projective_plane(), 1);
  EXPECT_FALSE(toric_isomorphism(p2_torus, add_torus_factor(quadric(), 1)).isomorphic);
  EXPECT_FALSE(toric_isomorphism(add_torus_factor(quadric(), 1), quadric()).isomorphic);
}

TEST(Iso, GuardRaisesResourceError) {
  EXPECT_THROW(fan_isomorphic(projective_plane_blowup(), projective_plane_blowup(), IsoLimits{0}), ResourceError);
}

TEST(Iso, RandomUnimodularImagesAreIsomorphic) {
  std::mt19937 rng(101);
  for (int i = 0; i < 100; ++i) {
    Fan a = random_fan(rng, {3, 8, false, true});
    Fan b = relabeled(rng, transform_fan(a, random_unimodular(rng, a.rank())));
    auto ab = fan_isomorphic(a, b);
    auto ba = fan_isomorphic(b, a);
    ASSERT_TRUE(ab) << i;
    ASSERT_TRUE(ba) << i;
    EXPECT_TRUE(verify_fan_iso(a, b, *ab));
    EXPECT_TRUE(verify_fan_iso(b, a, *ba));
    EXPECT_TRUE(unimodular(ab->matrix));
    EXPECT_FALSE(isomorphism_prefilter(a, b));
  }
}

TEST(Iso, RandomTorusFactorsCancel) {
  std::mt19937 rng(103);
  for (int i = 0; i < 30; ++i) {
    Fan a = random_fan(rng, {2, 6, true, true});
    const std::size_t extra = 1 + rng() % 2;
    Fan big = add_torus_factor(a, extra);
    Fan moved = transform_fan(big, random_unimodular(rng, big.rank()));
    auto report = toric_isomorphism(big, moved);
    ASSERT_TRUE(report.isomorphic) << i;
    ASSERT_TRUE(report.full_matrix);
    EXPECT_TRUE(unimodular(*report.full_matrix));
    for (std::size_t rho = 0; rho < big.num_rays(); ++rho)
      EXPECT_EQ(*report.full_matrix * big.ray(rho), moved.ray(report.reduced_iso->ray_bijection[rho]));
  }
}

TEST(Iso, VerifyRejectsWrongData) {
  auto b = make_fan(2, {v({1, 0}), v({1, 1}), v({-2, -1})}, {{0, 1}, {1, 2}, {0, 2}});
  auto iso = *fan_isomorphic(projective_plane(), b);
  auto bad = iso;
  bad.matrix = IntMatrix::identity(2);
  EXPECT_FALSE(verify_fan_iso(projective_plane(), b, bad));
  bad = iso;
  std::swap(bad.ray_bijection[0], bad.ray_bijection[1]);
  EXPECT_FALSE(verify_fan_iso(projective_plane(), b, bad));
}
