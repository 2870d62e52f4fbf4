#include "toriclift/iso.hpp"

#include <algorithm>
#include <map>

#include "toriclift/divisors.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/lattice.hpp"

namespace toriclift {

namespace {

std::vector<std::size_t> ray_degrees(const Fan& fan) {
  std::vector<std::size_t> deg(fan.num_rays(), 0);
  for (const auto& c : fan.max_cones())
    for (auto rho : c) ++deg[rho];
  return deg;
}

// Greedy maximal independent subset of the rays, in index order.
std::vector<std::size_t> independent_rays(const Fan& fan) {
  std::vector<std::size_t> chosen;
  std::vector<IntVector> vectors;
  for (std::size_t i = 0; i < fan.num_rays() && chosen.size() < fan.rank(); ++i) {
    vectors.push_back(fan.ray(i));
    if (matrix_rank(IntMatrix::from_rows(vectors, fan.rank())) == vectors.size())
      chosen.push_back(i);
    else
      vectors.pop_back();
  }
  return chosen;
}

std::optional<FanIso> complete(const Fan& a, const Fan& b, const IntMatrix& l,
                               const std::map<IntVector, std::size_t>& b_index) {
  FanIso iso{l, {}, {}};
  std::vector<bool> hit(b.num_rays(), false);
  for (const auto& v : a.rays()) {
    auto it = b_index.find(l * v);
    if (it == b_index.end() || hit[it->second]) return std::nullopt;
    hit[it->second] = true;
    iso.ray_bijection.push_back(it->second);
  }
  std::map<Cone, std::size_t> b_cones;
  for (std::size_t c = 0; c < b.max_cones().size(); ++c) b_cones.emplace(b.max_cones()[c], c);
  for (const auto& c : a.max_cones()) {
    Cone image;
    for (auto rho : c) image.push_back(iso.ray_bijection[rho]);
    std::sort(image.begin(), image.end());
    auto it = b_cones.find(image);
    if (it == b_cones.end()) return std::nullopt;
    iso.cone_bijection.push_back(it->second);
  }
  return iso;
}

std::string cone_size_signature(const Fan& fan) {
  std::vector<std::string> parts;
  for (const auto& p : smoothness_profile(fan).cones)
    parts.push_back(std::string(p.simplicial ? "s" : "n") + p.multiplicity.get_str());
  std::vector<std::size_t> sizes;
  for (const auto& c : fan.max_cones()) sizes.push_back(c.size());
  std::sort(parts.begin(), parts.end());
  std::sort(sizes.begin(), sizes.end());
  std::string s;
  for (const auto& p : parts) s += p + ";";
  for (auto n : sizes) s += std::to_string(n) + ",";
  return s;
}

}  // namespace

bool verify_fan_iso(const Fan& a, const Fan& b, const FanIso& iso) {
  if (a.rank() != b.rank() || iso.matrix.rows() != a.rank() || iso.matrix.cols() != a.rank()) return false;
  const Integer det = determinant(iso.matrix);
  if (det != 1 && det != -1) return false;
  if (iso.ray_bijection.size() != a.num_rays() || a.num_rays() != b.num_rays()) return false;
  std::vector<bool> hit(b.num_rays(), false);
  for (std::size_t rho = 0; rho < a.num_rays(); ++rho) {
    const std::size_t t = iso.ray_bijection[rho];
    if (t >= b.num_rays() || hit[t] || iso.matrix * a.ray(rho) != b.ray(t)) return false;
    hit[t] = true;
  }
  if (iso.cone_bijection.size() != a.max_cones().size() || a.max_cones().size() != b.max_cones().size()) return false;
  std::vector<bool> cone_hit(b.max_cones().size(), false);
  for (std::size_t c = 0; c < a.max_cones().size(); ++c) {
    const std::size_t t = iso.cone_bijection[c];
    if (t >= b.max_cones().size() || cone_hit[t]) return false;
    cone_hit[t] = true;
    Cone image;
    for (auto rho : a.max_cones()[c]) image.push_back(iso.ray_bijection[rho]);
    std::sort(image.begin(), image.end());
    if (image != b.max_cones()[t]) return false;
  }
  return true;
}

std::optional<std::string> isomorphism_prefilter(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank())
    return "lattice ranks differ (" + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")";
  if (a.num_rays() != b.num_rays())
    return "ray counts differ (" + std::to_string(a.num_rays()) + " vs " + std::to_string(b.num_rays()) + ")";
  if (a.max_cones().size() != b.max_cones().size())
    return "maximal cone counts differ (" + std::to_string(a.max_cones().size()) + " vs " +
           std::to_string(b.max_cones().size()) + ")";
  const auto ga = class_group(a).group(), gb = class_group(b).group();
  if (!(ga == gb)) return "class groups differ (" + ga.to_string() + " vs " + gb.to_string() + ")";
  if (cone_size_signature(a) != cone_size_signature(b)) return "cone types or multiplicities differ";
  auto da = ray_degrees(a), db = ray_degrees(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return "numbers of maximal cones through the rays differ";
  return std::nullopt;
}

std::optional<FanIso> fan_isomorphic(const Fan& a, const Fan& b, const IsoLimits& limits) {
  if (a.is_degenerate() || b.is_degenerate())
    throw DomainError("fan_isomorphic needs non-degenerate fans; use toric_isomorphism");
  if (isomorphism_prefilter(a, b)) return std::nullopt;
  const std::size_t d = a.rank();
  if (d == 0) return FanIso{IntMatrix(0, 0), {}, std::vector<std::size_t>(a.max_cones().size(), 0)};

  const auto basis = independent_rays(a);
  const IntMatrix a_sel = a.ray_matrix(basis);
  const Integer det = determinant(a_sel);
  const IntMatrix adj = adjugate(a_sel);
  const auto deg_a = ray_degrees(a), deg_b = ray_degrees(b);
  std::map<IntVector, std::size_t> b_index;
  for (std::size_t i = 0; i < b.num_rays(); ++i) b_index.emplace(b.ray(i), i);

  std::vector<std::size_t> assignment(d, 0);
  std::vector<bool> used(b.num_rays(), false);
  std::size_t count = 0;
  std::optional<FanIso> found;
  // Depth-first in lexicographic order of the assignment.
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == d) {
      if (++count > limits.max_assignments)
        throw ResourceError("isomorphism search exceeded " + std::to_string(limits.max_assignments) + " assignments");
      std::vector<IntVector> cols;
      for (auto t : assignment) cols.push_back(b.ray(t));
      const IntMatrix num = IntMatrix::from_columns(cols, d) * adj;
      IntMatrix l(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (num(i, j) % det != 0) return false;
          l(i, j) = num(i, j) / det;
        }
      const Integer dl = determinant(l);
      if (dl != 1 && dl != -1) return false;
      found = complete(a, b, l, b_index);
      return found.has_value();
    }
    for (std::size_t t = 0; t < b.num_rays(); ++t) {
      if (used[t] || deg_b[t] != deg_a[basis[depth]]) continue;
      used[t] = true;
      assignment[depth] = t;
      if (self(self, depth + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  search(search, 0);
  return found;
}

IsoReport toric_isomorphism(const Fan& a, const Fan& b, const IsoLimits& limits) {
  IsoReport report{false, split_torus_factor(a), split_torus_factor(b), std::nullopt, std::nullopt, ""};
  if (a.rank() != b.rank()) {
    report.reason = "lattice ranks differ (" + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")";
    return report;
  }
  if (report.split_a.torus_rank != report.split_b.torus_rank) {
    report.reason = "torus factor ranks differ (" + std::to_string(report.split_a.torus_rank) + " vs " +
                    std::to_string(report.split_b.torus_rank) + ")";
    return report;
  }
  const Fan& ra = report.split_a.reduced_fan;
  const Fan& rb = report.split_b.reduced_fan;
  if (auto why = isomorphism_prefilter(ra, rb)) {
    report.reason = *why;
    return report;
  }
  report.reduced_iso = fan_isomorphic(ra, rb, limits);
  if (!report.reduced_iso) {
    report.reason = "no lattice isomorphism maps the fans onto each other";
    return report;
  }
  report.isomorphic = true;
  const std::size_t k = ra.rank(), n = a.rank();
  IntMatrix block = IntMatrix::identity(n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) block(i, j) = report.reduced_iso->matrix(i, j);
  // U_B⁻¹ · (L ⊕ I) · U_A; U_B is unimodular so its inverse is its adjugate up to sign.
  const IntMatrix& ub = report.split_b.change_of_basis;
  IntMatrix ub_inv = adjugate(ub);
  if (determinant(ub) == -1)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ub_inv(i, j) = -ub_inv(i, j);
  report.full_matrix = ub_inv * block * report.split_a.change_of_basis;
  report.reason = report.split_a.torus_rank ? "isomorphic after cancelling a torus factor of rank " +
                                                  std::to_string(report.split_a.torus_rank)
                                            : "isomorphic";
  return report;
}

}  // namespace toriclift
