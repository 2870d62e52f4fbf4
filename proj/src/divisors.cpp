#include "toriclift/divisors.hpp"

#include <algorithm>

#include "toriclift/errors.hpp"
#include "toriclift/rational_lp.hpp"

namespace toriclift {

std::vector<std::size_t> TDivisor::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0) s.push_back(i);
  return s;
}

TDivisor prime_divisor(const Fan& fan, std::size_t ray) { return TDivisor{unit_vector(fan.num_rays(), ray)}; }

TDivisor principal_divisor(const Fan& fan, const IntVector& character) {
  if (character.size() != fan.rank())
    throw InputError("character has " + std::to_string(character.size()) + " coordinates, fan rank is " +
                     std::to_string(fan.rank()));
  IntVector a;
  a.reserve(fan.num_rays());
  for (const auto& v : fan.rays()) a.push_back(dot(character, v));
  return TDivisor{a};
}

IntMatrix principal_matrix(const Fan& fan) { return fan.ray_matrix(); }

std::optional<IntVector> local_character(const Fan& fan, const Cone& cone, const TDivisor& divisor) {
  if (divisor.coefficients.size() != fan.num_rays()) throw InputError("divisor length differs from the ray count");
  if (cone.empty()) return zero_vector(fan.rank());
  IntMatrix system(cone.size(), fan.rank());
  IntVector rhs;
  for (std::size_t k = 0; k < cone.size(); ++k) {
    system.set_row(k, fan.ray(cone[k]));
    rhs.push_back(divisor.coefficients[cone[k]]);
  }
  auto sol = solve_integer_linear(system, rhs);
  if (!sol) return std::nullopt;
  return sol->particular;
}

std::optional<CartierData> cartier_data(const Fan& fan, const TDivisor& divisor) {
  CartierData data{divisor, {}};
  for (const auto& cone : fan.max_cones()) {
    auto m = local_character(fan, cone, divisor);
    if (!m) return std::nullopt;
    data.local_characters.push_back(*m);
  }
  return data;
}

std::optional<std::size_t> first_non_cartier_cone(const Fan& fan, const TDivisor& divisor) {
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c)
    if (!local_character(fan, fan.max_cones()[c], divisor)) return c;
  return std::nullopt;
}

IntMatrix cartier_lattice(const Fan& fan, const IntMatrix& basis) {
  const std::size_t r = basis.rows(), n = fan.num_rays(), d = fan.rank();
  if (r == 0) return IntMatrix(0, n);
  // Unknowns (c, m_σ for every maximal cone): (c·B)_ρ - ⟨m_σ, v_ρ⟩ = 0 for ρ ∈ σ(1).
  const auto& cones = fan.max_cones();
  std::vector<IntVector> rows;
  for (std::size_t s = 0; s < cones.size(); ++s)
    for (auto rho : cones[s]) {
      IntVector row = zero_vector(r + d * cones.size());
      for (std::size_t j = 0; j < r; ++j) row[j] = basis(j, rho);
      for (std::size_t k = 0; k < d; ++k) row[r + d * s + k] = -fan.ray(rho)[k];
      rows.push_back(row);
    }
  if (rows.empty()) return hermite_basis(basis);
  std::vector<IntVector> divisors;
  for (const auto& kv : integer_kernel(IntMatrix::from_rows(rows, r + d * cones.size()))) {
    IntVector c(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(r));
    divisors.push_back(c * basis);
  }
  return hermite_basis(divisors, n);
}

// ---------------------------------------------------------------------------
// DivisorSubgroup

DivisorSubgroup DivisorSubgroup::create(const Fan& fan, const IntMatrix& basis, const HilbertBasisLimits& limits) {
  const std::size_t n = fan.num_rays();
  if (basis.rows() > 0 && basis.cols() != n)
    throw InputError("subgroup basis has " + std::to_string(basis.cols()) + " columns, fan has " + std::to_string(n) +
                     " rays");
  IntMatrix b = basis.rows() ? basis : IntMatrix(0, n);
  std::vector<std::string> issues;
  if (matrix_rank(b) != b.rows()) issues.push_back("subgroup basis rows are linearly dependent");
  if (!issues.empty()) throw InputError("invalid divisor subgroup", issues);

  const IntMatrix principal = principal_matrix(fan);
  for (std::size_t i = 0; i < principal.rows(); ++i)
    if (!lattice_contains(b, principal.row(i)))
      issues.push_back("principal divisor div(chi^e" + std::to_string(i) + ") = " + to_string(principal.row(i)) +
                       " is not in the subgroup");
  if (!issues.empty()) throw InputError("invalid divisor subgroup", issues);

  std::vector<IntVector> gens = hilbert_basis(b, n, limits);
  for (std::size_t i = 0; i < principal.rows(); ++i) gens.push_back(principal.row(i));
  const IntMatrix generated = hermite_basis(gens, n);
  if (!(generated == hermite_basis(b)))
    issues.push_back("subgroup is not generated by its effective elements together with the principal divisors");
  if (!issues.empty()) throw InputError("invalid divisor subgroup", issues);
  return DivisorSubgroup(fan, b);
}

DivisorSubgroup DivisorSubgroup::cox(const Fan& fan) { return DivisorSubgroup(fan, IntMatrix::identity(fan.num_rays())); }

DivisorSubgroup DivisorSubgroup::principal(const Fan& fan) {
  IntMatrix b = hermite_basis(principal_matrix(fan));
  if (b.rows() == 0) b = IntMatrix(0, fan.num_rays());
  return DivisorSubgroup(fan, b);
}

std::optional<IntVector> DivisorSubgroup::coordinates(const TDivisor& d) const {
  if (d.coefficients.size() != fan_.num_rays()) throw InputError("divisor length differs from the ray count");
  return lattice_coordinates(basis_, d.coefficients);
}

bool DivisorSubgroup::is_full() const {
  if (rank() != fan_.num_rays()) return false;
  const Integer det = determinant(basis_);
  return det == 1 || det == -1;
}

// ---------------------------------------------------------------------------

ClassGroupData class_group(const Fan& fan) {
  if (fan.is_degenerate())
    throw DomainError("fan is degenerate (rays span rank " + std::to_string(fan.ray_span_rank()) + " of " +
                      std::to_string(fan.rank()) + "); split off the torus factor first");
  return ClassGroupData{cokernel_group(principal_matrix(fan).transposed())};
}

std::vector<TDivisor> effective_generators(const DivisorSubgroup& subgroup, const HilbertBasisLimits& limits) {
  std::vector<TDivisor> out;
  for (auto& v : hilbert_basis(subgroup.basis(), subgroup.fan().num_rays(), limits)) out.push_back(TDivisor{std::move(v)});
  return out;
}

std::optional<TDivisor> divisor_with_support(const DivisorSubgroup& subgroup, const std::vector<bool>& support) {
  const std::size_t n = subgroup.fan().num_rays(), r = subgroup.rank();
  if (std::none_of(support.begin(), support.end(), [](bool b) { return b; })) return TDivisor{zero_vector(n)};
  // Coefficients c with (c·B)_ρ = 0 off the support and ≥ 1 on it; strict
  // positivity is scale invariant, so any rational solution scales up.
  FeasibilityProblem p(r);
  for (std::size_t rho = 0; rho < n; ++rho)
    p.add(subgroup.basis().column(rho), support[rho] ? Relation::GreaterEqual : Relation::Equal, support[rho] ? 1 : 0);
  auto x = find_feasible_point(p);
  if (!x) return std::nullopt;
  return TDivisor{integral_direction(*x) * subgroup.basis()};
}

EnoughDivisorsReport has_enough_divisors(const DivisorSubgroup& subgroup) {
  const Fan& fan = subgroup.fan();
  EnoughDivisorsReport report;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    std::vector<bool> off(fan.num_rays(), true);
    for (auto rho : fan.max_cones()[c]) off[rho] = false;
    auto witness = divisor_with_support(subgroup, off);
    if (!witness) {
      report.passes = false;
      report.failing_cones.push_back(c);
    }
    report.witnesses.push_back(std::move(witness));
  }
  return report;
}

DivisorSubgroup cartier_subgroup(const DivisorSubgroup& subgroup) {
  return DivisorSubgroup::create(subgroup.fan(), cartier_lattice(subgroup.fan(), subgroup.basis()));
}

}  // namespace toriclift
