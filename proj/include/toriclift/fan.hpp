#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toriclift/int_matrix.hpp"
#include "toriclift/integer.hpp"

namespace toriclift {

using LatticeVector = IntVector;

/// Sorted indices into the ray list of the owning fan. The empty cone is the
/// zero cone.
using Cone = std::vector<std::size_t>;

/// Unvalidated fan data as read from input.
struct FanData {
  std::size_t rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<std::vector<std::size_t>> cones;
  bool operator==(const FanData&) const = default;
};

struct FanLimits {
  std::size_t max_rays = 64;
};

/// A validated fan. Rays keep their input order, which is the index order
/// for every divisor coefficient vector. Maximal cones are stored with
/// sorted ray indices in input order.
class Fan {
 public:
  std::size_t rank() const { return rank_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<Cone>& max_cones() const { return cones_; }

  /// rank × num_rays matrix whose columns are the ray generators.
  IntMatrix ray_matrix() const;
  IntMatrix ray_matrix(const Cone& cone) const;
  /// Rank of the span of the rays.
  std::size_t ray_span_rank() const;
  bool is_degenerate() const { return ray_span_rank() < rank_; }

  FanData data() const;
  bool operator==(const Fan&) const = default;

 private:
  friend Fan validate_fan(const FanData&, const FanLimits&);
  friend Fan transform_fan(const Fan&, const IntMatrix&);
  friend Fan add_torus_factor(const Fan&, std::size_t);
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<Cone> cones)
      : rank_(rank), rays_(std::move(rays)), cones_(std::move(cones)) {}

  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
};

/// Checks every fan axiom and reports all violations at once through
/// InputError::issues(). Empty cones are dropped.
Fan validate_fan(const FanData& candidate, const FanLimits& limits = {});

/// Whether v lies in the cone spanned by the given rays of the fan.
bool cone_contains(const Fan& fan, const Cone& cone, const LatticeVector& v);
/// The face of `cone` whose relative interior contains v (v must lie in it).
Cone minimal_face_containing(const Fan& fan, const Cone& cone, const LatticeVector& v);
/// Smallest cone of the fan containing v, or nullopt if v lies in no cone.
std::optional<Cone> minimal_cone_containing(const Fan& fan, const LatticeVector& v);

struct ConeProfile {
  bool simplicial = false;
  bool smooth = false;
  /// Lattice index of the ray span (product of the invariant factors of the
  /// ray matrix) for simplicial cones, 0 otherwise.
  Integer multiplicity = 0;
};

struct SmoothnessProfile {
  std::vector<ConeProfile> cones;  // one per maximal cone
  bool simplicial = true;
  bool smooth = true;
};

ConeProfile cone_profile(const Fan& fan, const Cone& cone);
SmoothnessProfile smoothness_profile(const Fan& fan);

struct TorusFactorSplit {
  Fan reduced_fan;
  std::size_t torus_rank = 0;
  /// Unimodular; sends each ray to (reduced ray, 0, ..., 0).
  IntMatrix change_of_basis;
};

TorusFactorSplit split_torus_factor(const Fan& fan);

/// Image of the fan under a unimodular lattice automorphism.
Fan transform_fan(const Fan& fan, const IntMatrix& unimodular);
/// The fan of X × (K*)^extra_rank: rays padded with zeros.
Fan add_torus_factor(const Fan& fan, std::size_t extra_rank);

}  // namespace toriclift
