#pragma once

#include "toriclift/fan.hpp"

namespace toriclift::testing {

inline Fan make_fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> cones) {
  return validate_fan(FanData{rank, std::move(rays), std::move(cones)});
}

inline LatticeVector v(std::initializer_list<long> xs) { return make_vector(xs); }

// Quadric cone: one cone over (1,0),(1,2).
inline Fan quadric() { return make_fan(2, {v({1, 0}), v({1, 2})}, {{0, 1}}); }
// Its blow-up at the origin.
inline Fan quadric_blowup() { return make_fan(2, {v({1, 0}), v({1, 1}), v({1, 2})}, {{0, 1}, {1, 2}}); }
inline Fan affine_plane() { return make_fan(2, {v({1, 0}), v({0, 1})}, {{0, 1}}); }
inline Fan plane_blowup() { return make_fan(2, {v({1, 0}), v({0, 1}), v({1, 1})}, {{0, 2}, {1, 2}}); }
inline Fan projective_plane() {
  return make_fan(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}
// P² blown up in a fixed point: the Hirzebruch surface F₁.
inline Fan projective_plane_blowup() {
  return make_fan(2, {v({1, 0}), v({0, 1}), v({-1, -1}), v({1, 1})}, {{0, 3}, {1, 3}, {1, 2}, {0, 2}});
}
// Cone over a square: non-simplicial.
inline Fan square_cone() {
  return make_fan(3, {v({1, 0, 1}), v({0, 1, 1}), v({-1, 0, 1}), v({0, -1, 1})}, {{0, 1, 2, 3}});
}

}  // namespace toriclift::testing
