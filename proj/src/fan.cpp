#include "toriclift/fan.hpp"

#include <algorithm>
#include <set>

#include "toriclift/errors.hpp"
#include "toriclift/lattice.hpp"
#include "toriclift/rational_lp.hpp"

namespace toriclift {

namespace {

std::string cone_label(const std::vector<std::size_t>& cone) {
  std::string s = "{";
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cone[i]);
  }
  return s + "}";
}

// Is there a linear form u with u = 0 on `zero`, u ≥ 1 on `positive` and
// u ≤ -1 on `negative`?
bool separable(std::size_t rank, const std::vector<LatticeVector>& zero, const std::vector<LatticeVector>& positive,
               const std::vector<LatticeVector>& negative) {
  FeasibilityProblem p(rank);
  for (const auto& r : zero) p.add(r, Relation::Equal);
  for (const auto& r : positive) p.add(r, Relation::GreaterEqual, 1);
  for (const auto& r : negative) p.add(scale(Integer(-1), r), Relation::GreaterEqual, 1);
  return find_feasible_point(p).has_value();
}

std::vector<LatticeVector> gather(const std::vector<LatticeVector>& rays, const std::vector<std::size_t>& idx) {
  std::vector<LatticeVector> out;
  for (auto i : idx) out.push_back(rays[i]);
  return out;
}

}  // namespace

IntMatrix Fan::ray_matrix() const { return IntMatrix::from_columns(rays_, rank_); }

IntMatrix Fan::ray_matrix(const Cone& cone) const { return IntMatrix::from_columns(gather(rays_, cone), rank_); }

std::size_t Fan::ray_span_rank() const { return rays_.empty() ? 0 : matrix_rank(ray_matrix()); }

FanData Fan::data() const {
  FanData d;
  d.rank = rank_;
  d.rays = rays_;
  for (const auto& c : cones_) d.cones.push_back(c);
  return d;
}

Fan validate_fan(const FanData& candidate, const FanLimits& limits) {
  const std::size_t rank = candidate.rank;
  const auto& rays = candidate.rays;
  if (rays.size() > limits.max_rays)
    throw ResourceError("fan has " + std::to_string(rays.size()) + " rays, above the guard of " +
                        std::to_string(limits.max_rays));
  std::vector<std::string> issues;

  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != rank) {
      issues.push_back("ray " + std::to_string(i) + " has " + std::to_string(rays[i].size()) +
                       " coordinates, expected " + std::to_string(rank));
      continue;
    }
    if (is_zero(rays[i]))
      issues.push_back("ray " + std::to_string(i) + " is zero");
    else if (!is_primitive(rays[i]))
      issues.push_back("ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (rays[j] == rays[i]) issues.push_back("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }

  std::vector<Cone> cones;
  for (std::size_t c = 0; c < candidate.cones.size(); ++c) {
    Cone cone = candidate.cones[c];
    bool ok = true;
    for (auto i : cone)
      if (i >= rays.size()) {
        issues.push_back("cone " + std::to_string(c) + " refers to ray index " + std::to_string(i) +
                         " out of range (" + std::to_string(rays.size()) + " rays)");
        ok = false;
      }
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      issues.push_back("cone " + std::to_string(c) + " lists a ray twice");
      ok = false;
    }
    if (ok && !cone.empty()) cones.push_back(cone);
  }
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = 0; b < cones.size(); ++b) {
      if (a == b) continue;
      if (cones[a] == cones[b]) {
        if (a < b) issues.push_back("cones " + cone_label(cones[a]) + " listed twice");
      } else if (std::includes(cones[b].begin(), cones[b].end(), cones[a].begin(), cones[a].end())) {
        issues.push_back("cone " + cone_label(cones[a]) + " is contained in cone " + cone_label(cones[b]));
      }
    }
  std::vector<bool> used(rays.size(), false);
  for (const auto& c : cones)
    for (auto i : c) used[i] = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) issues.push_back("ray " + std::to_string(i) + " lies in no maximal cone");
  if (!issues.empty()) throw InputError("invalid fan", issues);

  for (const auto& c : cones) {
    const auto generators = gather(rays, c);
    if (!separable(rank, {}, generators, {})) {
      issues.push_back("cone " + cone_label(c) + " is not strongly convex");
      continue;
    }
    if (c.size() < 2) continue;
    for (std::size_t k = 0; k < c.size(); ++k) {
      std::vector<LatticeVector> others;
      for (std::size_t l = 0; l < c.size(); ++l)
        if (l != k) others.push_back(generators[l]);
      if (!separable(rank, {generators[k]}, others, {}))
        issues.push_back("ray " + std::to_string(c[k]) + " is not an extremal ray of cone " + cone_label(c));
    }
  }
  if (!issues.empty()) throw InputError("invalid fan", issues);

  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      std::vector<std::size_t> common, only_a, only_b;
      std::set_intersection(cones[a].begin(), cones[a].end(), cones[b].begin(), cones[b].end(),
                            std::back_inserter(common));
      std::set_difference(cones[a].begin(), cones[a].end(), cones[b].begin(), cones[b].end(),
                          std::back_inserter(only_a));
      std::set_difference(cones[b].begin(), cones[b].end(), cones[a].begin(), cones[a].end(),
                          std::back_inserter(only_b));
      if (!separable(rank, gather(rays, common), gather(rays, only_a), gather(rays, only_b)))
        issues.push_back("cones " + cone_label(cones[a]) + " and " + cone_label(cones[b]) +
                         " do not meet in a common face");
    }
  if (!issues.empty()) throw InputError("invalid fan", issues);
  return Fan(rank, rays, cones);
}

bool cone_contains(const Fan& fan, const Cone& cone, const LatticeVector& v) {
  if (is_zero(v)) return true;
  // λ ≥ 0 with Σ λ_i v_i = v
  FeasibilityProblem p(cone.size());
  std::fill(p.nonnegative.begin(), p.nonnegative.end(), true);
  for (std::size_t row = 0; row < fan.rank(); ++row) {
    IntVector coeffs;
    for (auto i : cone) coeffs.push_back(fan.ray(i)[row]);
    p.add(coeffs, Relation::Equal, v[row]);
  }
  return find_feasible_point(p).has_value();
}

Cone minimal_face_containing(const Fan& fan, const Cone& cone, const LatticeVector& v) {
  if (is_zero(v)) return {};
  // Ray r lies in the face iff v - εr stays in the cone for some ε > 0:
  // Σ λ_i v_i - s·v + t·r = 0 with λ, s ≥ 0 and t ≥ 1.
  Cone face;
  const std::size_t k = cone.size();
  for (auto r : cone) {
    FeasibilityProblem p(k + 2);
    std::fill(p.nonnegative.begin(), p.nonnegative.end(), true);
    for (std::size_t row = 0; row < fan.rank(); ++row) {
      IntVector coeffs;
      for (auto i : cone) coeffs.push_back(fan.ray(i)[row]);
      coeffs.push_back(-v[row]);
      coeffs.push_back(fan.ray(r)[row]);
      p.add(coeffs, Relation::Equal);
    }
    p.add(unit_vector(k + 2, k + 1), Relation::GreaterEqual, 1);
    if (find_feasible_point(p)) face.push_back(r);
  }
  return face;
}

std::optional<Cone> minimal_cone_containing(const Fan& fan, const LatticeVector& v) {
  if (v.size() != fan.rank()) throw InputError("vector has " + std::to_string(v.size()) + " coordinates, fan rank is " +
                                               std::to_string(fan.rank()));
  if (is_zero(v)) return Cone{};
  for (const auto& cone : fan.max_cones())
    if (cone_contains(fan, cone, v)) return minimal_face_containing(fan, cone, v);
  return std::nullopt;
}

ConeProfile cone_profile(const Fan& fan, const Cone& cone) {
  ConeProfile p;
  if (cone.empty()) {
    p.simplicial = p.smooth = true;
    p.multiplicity = 1;
    return p;
  }
  const IntMatrix m = fan.ray_matrix(cone);
  const SmithDecomposition snf = smith_normal_form(m);
  p.simplicial = snf.rank == cone.size();
  if (!p.simplicial) return p;
  p.multiplicity = 1;
  for (const auto& f : snf.invariant_factors()) p.multiplicity *= f;
  p.smooth = p.multiplicity == 1;
  return p;
}

SmoothnessProfile smoothness_profile(const Fan& fan) {
  SmoothnessProfile out;
  for (const auto& c : fan.max_cones()) {
    out.cones.push_back(cone_profile(fan, c));
    out.simplicial = out.simplicial && out.cones.back().simplicial;
    out.smooth = out.smooth && out.cones.back().smooth;
  }
  return out;
}

TorusFactorSplit split_torus_factor(const Fan& fan) {
  const std::size_t span = fan.ray_span_rank();
  if (span == fan.rank()) return TorusFactorSplit{fan, 0, IntMatrix::identity(fan.rank())};
  IntMatrix change = IntMatrix::identity(fan.rank());
  if (fan.num_rays() > 0) change = smith_normal_form(fan.ray_matrix()).left;
  FanData reduced;
  reduced.rank = span;
  for (const auto& r : fan.rays()) {
    IntVector image = change * r;
    reduced.rays.emplace_back(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(span));
  }
  for (const auto& c : fan.max_cones()) reduced.cones.push_back(c);
  return TorusFactorSplit{validate_fan(reduced, FanLimits{std::max<std::size_t>(fan.num_rays(), 1)}),
                          fan.rank() - span, change};
}

Fan transform_fan(const Fan& fan, const IntMatrix& unimodular) {
  if (unimodular.rows() != fan.rank() || unimodular.cols() != fan.rank())
    throw InputError("transform_fan: matrix shape does not match the fan rank");
  const Integer det = determinant(unimodular);
  if (det != 1 && det != -1) throw InputError("transform_fan: matrix is not unimodular");
  std::vector<LatticeVector> rays;
  for (const auto& r : fan.rays()) rays.push_back(unimodular * r);
  return Fan(fan.rank(), rays, fan.max_cones());
}

Fan add_torus_factor(const Fan& fan, std::size_t extra_rank) {
  std::vector<LatticeVector> rays;
  for (const auto& r : fan.rays()) {
    LatticeVector padded = r;
    padded.resize(fan.rank() + extra_rank, Integer(0));
    rays.push_back(padded);
  }
  return Fan(fan.rank() + extra_rank, rays, fan.max_cones());
}

}  // namespace toriclift
