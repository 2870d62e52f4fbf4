#pragma once

// Random valid fans: a base fan, star subdivisions of two-dimensional faces of
// simplicial cones, optional removal of a maximal cone, then a random
// unimodular change of coordinates.

#include <random>

#include "support/oracles.hpp"
#include "toriclift/fan.hpp"
#include "toriclift/lattice.hpp"

namespace toriclift::testing {

inline FanData base_fan(std::mt19937& rng, std::size_t max_rank) {
  auto v = [](std::initializer_list<long> xs) { return make_vector(xs); };
  std::vector<FanData> bases = {
      {1, {v({1}), v({-1})}, {{0}, {1}}},
      {1, {v({1})}, {{0}}},
      {2, {v({1, 0}), v({0, 1})}, {{0, 1}}},
      {2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}},
      {2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
      {2, {v({1, 0}), v({1, 2})}, {{0, 1}}},
      {2, {v({1, 0}), v({0, 1}), v({-1, 3})}, {{0, 1}, {1, 2}}},
      {3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}, {{0, 1, 2}}},
      {3,
       {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})},
       {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}},
      {3, {v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 2})}, {{0, 1, 2}}},
  };
  std::vector<FanData> eligible;
  for (auto& b : bases)
    if (b.rank <= max_rank) eligible.push_back(b);
  return eligible[rng() % eligible.size()];
}

// Star subdivision at v_a + v_b of every simplicial maximal cone containing a
// and b. Returns false (and leaves `fan` alone) when not applicable.
inline bool star_subdivide(FanData& fan, std::size_t a, std::size_t b) {
  LatticeVector w = primitive_part(add(fan.rays[a], fan.rays[b]));
  for (const auto& r : fan.rays)
    if (r == w) return false;
  std::vector<std::vector<std::size_t>> cones;
  bool touched = false;
  const std::size_t fresh = fan.rays.size();
  for (const auto& c : fan.cones) {
    bool has_a = std::find(c.begin(), c.end(), a) != c.end(), has_b = std::find(c.begin(), c.end(), b) != c.end();
    if (!(has_a && has_b)) {
      cones.push_back(c);
      continue;
    }
    IntMatrix m = IntMatrix::from_columns([&] {
      std::vector<IntVector> cols;
      for (auto i : c) cols.push_back(fan.rays[i]);
      return cols;
    }(), fan.rank);
    if (matrix_rank(m) != c.size()) return false;
    touched = true;
    for (auto drop : {a, b}) {
      std::vector<std::size_t> nc;
      for (auto i : c)
        if (i != drop) nc.push_back(i);
      nc.push_back(fresh);
      cones.push_back(nc);
    }
  }
  if (!touched) return false;
  fan.rays.push_back(w);
  fan.cones = cones;
  return true;
}

inline FanData drop_unused_rays(const FanData& fan) {
  std::vector<long> remap(fan.rays.size(), -1);
  FanData out{fan.rank, {}, {}};
  for (const auto& c : fan.cones)
    for (auto i : c)
      if (remap[i] < 0) remap[i] = 0;
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    if (remap[i] == 0) {
      remap[i] = static_cast<long>(out.rays.size());
      out.rays.push_back(fan.rays[i]);
    }
  for (const auto& c : fan.cones) {
    std::vector<std::size_t> nc;
    for (auto i : c) nc.push_back(static_cast<std::size_t>(remap[i]));
    out.cones.push_back(nc);
  }
  return out;
}

struct RandomFanOptions {
  std::size_t max_rank = 3;
  std::size_t max_rays = 8;
  bool allow_subfans = true;
  bool conjugate = true;
};

inline Fan random_fan(std::mt19937& rng, const RandomFanOptions& opt = {}) {
  FanData fan = base_fan(rng, opt.max_rank);
  const int steps = static_cast<int>(rng() % 4);
  for (int s = 0; s < steps && fan.rays.size() < opt.max_rays; ++s) {
    const auto& c = fan.cones[rng() % fan.cones.size()];
    if (c.size() < 2) continue;
    std::size_t i = rng() % c.size(), j = rng() % c.size();
    if (i == j) continue;
    star_subdivide(fan, c[i], c[j]);
  }
  if (opt.allow_subfans && fan.cones.size() > 1 && rng() % 3 == 0) {
    fan.cones.erase(fan.cones.begin() + static_cast<std::ptrdiff_t>(rng() % fan.cones.size()));
    fan = drop_unused_rays(fan);
  }
  if (opt.conjugate) {
    const IntMatrix u = random_unimodular(rng, fan.rank);
    for (auto& r : fan.rays) r = u * r;
  }
  return validate_fan(fan);
}

}  // namespace toriclift::testing
