#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toriclift/fan.hpp"
#include "toriclift/lattice.hpp"

namespace toriclift {

/// Invariant Weil divisor Σ a_ρ D_ρ, coefficients indexed by ray.
struct TDivisor {
  IntVector coefficients;

  std::vector<std::size_t> support() const;
  bool is_effective() const { return is_nonnegative(coefficients); }
  bool operator==(const TDivisor&) const = default;
};

TDivisor prime_divisor(const Fan& fan, std::size_t ray);

/// div(χ^m) = Σ ⟨m, v_ρ⟩ D_ρ
TDivisor principal_divisor(const Fan& fan, const IntVector& character);

/// rank × num_rays matrix whose row i is div(χ^{e_i}).
IntMatrix principal_matrix(const Fan& fan);

/// Local characters of a Cartier divisor: ⟨m_σ, v_ρ⟩ = a_ρ for every ray ρ
/// of the maximal cone σ.
struct CartierData {
  TDivisor divisor;
  std::vector<IntVector> local_characters;  // one per maximal cone
};

/// Some m with ⟨m, v_ρ⟩ = a_ρ on the rays of `cone`, if one exists.
std::optional<IntVector> local_character(const Fan& fan, const Cone& cone, const TDivisor& divisor);
std::optional<CartierData> cartier_data(const Fan& fan, const TDivisor& divisor);
/// Index of the first maximal cone on which the divisor has no local character.
std::optional<std::size_t> first_non_cartier_cone(const Fan& fan, const TDivisor& divisor);

/// Hermite basis (as divisors) of the Cartier divisors in the row lattice of
/// `basis`.
IntMatrix cartier_lattice(const Fan& fan, const IntMatrix& basis);

/// A subgroup M̂ of the invariant Weil divisors with M ⊆ M̂, given by
/// independent basis rows B_1, ..., B_r.
class DivisorSubgroup {
 public:
  /// Checks independence, M ⊆ M̂, and that M̂ is generated by its effective
  /// elements together with the principal divisors. Violations raise
  /// InputError with one issue per failed check.
  static DivisorSubgroup create(const Fan& fan, const IntMatrix& basis, const HilbertBasisLimits& limits = {});
  /// All invariant Weil divisors.
  static DivisorSubgroup cox(const Fan& fan);
  /// The invariant principal divisors.
  static DivisorSubgroup principal(const Fan& fan);

  const Fan& fan() const { return fan_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }
  TDivisor basis_divisor(std::size_t j) const { return TDivisor{basis_.row(j)}; }

  std::optional<IntVector> coordinates(const TDivisor& d) const;
  bool contains(const TDivisor& d) const { return coordinates(d).has_value(); }
  /// Whether M̂ is all of Div_W^T.
  bool is_full() const;

 private:
  DivisorSubgroup(Fan fan, IntMatrix basis) : fan_(std::move(fan)), basis_(std::move(basis)) {}

  Fan fan_;
  IntMatrix basis_;
};

struct ClassGroupData {
  Cokernel cokernel;  // of the principal map M → Z^{Σ(1)}

  const FgAbGroup& group() const { return cokernel.group; }
  IntVector class_of(const TDivisor& d) const { return cokernel.class_of(d.coefficients); }
};

/// ClDiv(X) = coker(M → Z^{Σ(1)}). Throws DomainError on degenerate fans.
ClassGroupData class_group(const Fan& fan);

/// Hilbert basis of the effective semigroup M̂_{≥0}.
std::vector<TDivisor> effective_generators(const DivisorSubgroup& subgroup, const HilbertBasisLimits& limits = {});

struct EnoughDivisorsReport {
  bool passes = true;
  /// Per maximal cone: an effective D ∈ M̂ with support exactly Σ(1) ∖ σ(1).
  std::vector<std::optional<TDivisor>> witnesses;
  std::vector<std::size_t> failing_cones;
};

EnoughDivisorsReport has_enough_divisors(const DivisorSubgroup& subgroup);

/// Effective D ∈ M̂ whose support is exactly `support`, if one exists.
std::optional<TDivisor> divisor_with_support(const DivisorSubgroup& subgroup, const std::vector<bool>& support);

/// C = M̂ ∩ CDiv^T(X) as a subgroup.
DivisorSubgroup cartier_subgroup(const DivisorSubgroup& subgroup);

}  // namespace toriclift
