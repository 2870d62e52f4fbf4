#include "toriclift/presentation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "toriclift/errors.hpp"

namespace toriclift {

std::string mode_name(PresentationMode mode) {
  switch (mode) {
    case PresentationMode::Cox:
      return "cox";
    case PresentationMode::Kajiwara:
      return "kajiwara";
    case PresentationMode::Custom:
      return "subgroup";
  }
  return "subgroup";
}

IntVector Presentation::degree_of(const TDivisor& d) const {
  auto coords = subgroup.coordinates(d);
  if (!coords) throw InputError("divisor " + to_string(d.coefficients) + " is not in the subgroup");
  return grading.class_of(*coords);
}

Cokernel grading_group(const DivisorSubgroup& subgroup) {
  const IntMatrix principal = principal_matrix(subgroup.fan());
  IntMatrix relations(subgroup.rank(), principal.rows());
  for (std::size_t i = 0; i < principal.rows(); ++i) {
    auto c = subgroup.coordinates(TDivisor{principal.row(i)});
    if (!c) throw DomainError("subgroup does not contain the principal divisors");
    relations.set_column(i, *c);
  }
  return cokernel_group(relations);
}

ExceptionalAnalysis exceptional_collections(const Fan& fan, const std::vector<TDivisor>& coordinates,
                                            std::size_t max_coordinates) {
  const std::size_t k = coordinates.size();
  if (k > max_coordinates || k > 30)
    throw ResourceError("exceptional set: " + std::to_string(k) + " coordinates exceed the guard of " +
                        std::to_string(std::min<std::size_t>(max_coordinates, 30)));
  // meets[c]: coordinates whose support shares a ray with maximal cone c.
  std::vector<std::uint32_t> meets;
  for (const auto& cone : fan.max_cones()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (auto rho : cone)
        if (coordinates[i].coefficients.at(rho) != 0) {
          mask |= std::uint32_t{1} << i;
          break;
        }
    meets.push_back(mask);
  }
  const std::uint32_t full = k ? static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1) : 0;
  auto exceptional = [&](std::uint32_t family) {
    for (auto m : meets)
      if ((family & ~m) == 0) return false;
    return true;
  };

  std::vector<std::uint32_t> minimal;
  for (std::uint32_t family = 1; family <= full && family != 0; ++family) {
    if (!exceptional(family)) continue;
    bool is_minimal = true;
    for (std::uint32_t rest = family; rest && is_minimal; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (exceptional(family & ~bit)) is_minimal = false;
    }
    if (is_minimal) minimal.push_back(family);
    if (family == full) break;
  }
  std::sort(minimal.begin(), minimal.end(), [](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    // lexicographic on the sorted index lists
    for (std::uint32_t x = a, y = b; x && y; x &= x - 1, y &= y - 1) {
      int ia = std::countr_zero(x), ib = std::countr_zero(y);
      if (ia != ib) return ia < ib;
    }
    return false;
  });

  ExceptionalAnalysis out;
  for (auto family : minimal) {
    ExceptionalCollection c;
    for (std::size_t i = 0; i < k; ++i)
      if (family & (std::uint32_t{1} << i)) c.coordinates.push_back(i);
    if (c.coordinates.size() < 2) out.codimension_ok = false;
    out.collections.push_back(std::move(c));
  }
  return out;
}

ExceptionalAnalysis exceptional_collections(const Presentation& presentation) {
  return exceptional_collections(presentation.fan(), presentation.coordinates);
}

namespace {

Presentation build(const DivisorSubgroup& subgroup, PresentationMode mode, const PresentationLimits& limits) {
  const Fan& fan = subgroup.fan();
  if (fan.is_degenerate())
    throw DomainError("fan is degenerate; split off the torus factor before building a presentation");
  const EnoughDivisorsReport enough = has_enough_divisors(subgroup);
  if (!enough.passes) {
    std::vector<std::string> issues;
    for (auto c : enough.failing_cones) {
      std::string label = "{";
      for (std::size_t i = 0; i < fan.max_cones()[c].size(); ++i)
        label += (i ? "," : "") + std::to_string(fan.max_cones()[c][i]);
      issues.push_back("no effective divisor in the subgroup has support exactly the complement of cone " +
                       std::to_string(c) + " " + label + "}");
    }
    throw InputError("subgroup does not have enough divisors", issues);
  }
  Presentation p{mode, subgroup, effective_generators(subgroup, limits.hilbert), grading_group(subgroup), {}, {}};
  for (const auto& d : p.coordinates) p.degrees.push_back(p.degree_of(d));
  ExceptionalAnalysis ex = exceptional_collections(fan, p.coordinates, limits.max_exceptional_coordinates);
  if (!ex.codimension_ok) throw DomainError("exceptional set has a component of codimension one");
  p.exceptional = std::move(ex.collections);
  return p;
}

}  // namespace

Presentation build_presentation(const Fan& fan, PresentationMode mode, const PresentationLimits& limits) {
  if (fan.is_degenerate())
    throw DomainError("fan is degenerate; split off the torus factor before building a presentation");
  switch (mode) {
    case PresentationMode::Cox:
      return build(DivisorSubgroup::cox(fan), mode, limits);
    case PresentationMode::Kajiwara:
      return build(cartier_subgroup(DivisorSubgroup::cox(fan)), mode, limits);
    case PresentationMode::Custom:
      break;
  }
  throw InputError("custom presentations need an explicit subgroup");
}

Presentation build_presentation(const DivisorSubgroup& subgroup, const PresentationLimits& limits) {
  return build(subgroup, PresentationMode::Custom, limits);
}

// ---------------------------------------------------------------------------

bool GradingFactorization::composite_is_zero() const { return projection.after(inclusion).is_zero(); }

bool GradingFactorization::ranks_balance() const {
  return subgroup_over_principal.group.free_rank() + divisors_over_subgroup.group.free_rank() ==
         divisors_over_principal.group.free_rank();
}

bool GradingFactorization::orders_balance() const {
  auto a = subgroup_over_principal.group.order();
  auto b = divisors_over_subgroup.group.order();
  auto c = divisors_over_principal.group.order();
  if (!a || !b || !c) return true;
  return *a * *b == *c;
}

GradingFactorization grading_factorization(const DivisorSubgroup& subgroup) {
  const Fan& fan = subgroup.fan();
  if (fan.is_degenerate()) throw DomainError("fan is degenerate; split off the torus factor first");
  Cokernel hat = grading_group(subgroup);
  Cokernel cl = class_group(fan).cokernel;
  Cokernel g1 = cokernel_group(subgroup.basis().transposed());

  IntMatrix inc(cl.group.num_generators(), hat.group.num_generators());
  for (std::size_t g = 0; g < hat.group.num_generators(); ++g)
    inc.set_column(g, cl.class_of(hat.lifts.column(g) * subgroup.basis()));
  IntMatrix proj(g1.group.num_generators(), cl.group.num_generators());
  for (std::size_t g = 0; g < cl.group.num_generators(); ++g) proj.set_column(g, g1.class_of(cl.lifts.column(g)));

  std::vector<IntVector> cox_degrees;
  for (std::size_t rho = 0; rho < fan.num_rays(); ++rho) cox_degrees.push_back(g1.class_of(unit_vector(fan.num_rays(), rho)));

  AbHom inclusion = AbHom::create(hat.group, cl.group, inc);
  AbHom projection = AbHom::create(cl.group, g1.group, proj);
  return GradingFactorization{std::move(hat), std::move(cl), std::move(g1), std::move(inclusion), std::move(projection),
                              std::move(cox_degrees)};
}

}  // namespace toriclift
