#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toriclift/fan.hpp"

namespace toriclift {

/// Unimodular L with L·v_ρ = w_{ray_bijection[ρ]}, mapping maximal cone c of
/// the first fan onto maximal cone cone_bijection[c] of the second.
struct FanIso {
  IntMatrix matrix;
  std::vector<std::size_t> ray_bijection;
  std::vector<std::size_t> cone_bijection;
};

struct IsoLimits {
  std::size_t max_assignments = 2'000'000;
};

/// Checks every invariant of `iso` from scratch.
bool verify_fan_iso(const Fan& a, const Fan& b, const FanIso& iso);

/// Search over assignments of a fixed independent ray subset of `a`; the
/// lexicographically first valid assignment wins. Both fans must be
/// non-degenerate (DomainError otherwise). ResourceError past the guard.
std::optional<FanIso> fan_isomorphic(const Fan& a, const Fan& b, const IsoLimits& limits = {});

/// Cheap invariants that differ; empty when none do. Never a proof of isomorphism.
std::optional<std::string> isomorphism_prefilter(const Fan& a, const Fan& b);

struct IsoReport {
  bool isomorphic = false;
  TorusFactorSplit split_a;
  TorusFactorSplit split_b;
  std::optional<FanIso> reduced_iso;
  /// Isomorphism of the original lattices, when isomorphic.
  std::optional<IntMatrix> full_matrix;
  std::string reason;
};

/// Splits off torus factors first; degenerate fans are allowed.
IsoReport toric_isomorphism(const Fan& a, const Fan& b, const IsoLimits& limits = {});

}  // namespace toriclift
