#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toriclift/divisors.hpp"

namespace toriclift {

enum class PresentationMode { Cox, Kajiwara, Custom };

std::string mode_name(PresentationMode mode);

/// A minimal family of coordinates T^{D_1}, ..., T^{D_r} whose divisors have
/// empty common support on X.
struct ExceptionalCollection {
  std::vector<std::size_t> coordinates;
  bool operator==(const ExceptionalCollection&) const = default;
};

struct ExceptionalAnalysis {
  std::vector<ExceptionalCollection> collections;
  /// No collection of size one, i.e. the exceptional set has codimension ≥ 2.
  bool codimension_ok = true;
};

/// Combinatorial data of the quotient presentation X̂ → X defined by M̂:
/// coordinates T^D for the Hilbert basis of M̂_{≥0}, the grading group M̂/M
/// (the character group of H) with the degree of every coordinate, and the
/// exceptional collections cutting out Z(M̂).
struct Presentation {
  PresentationMode mode = PresentationMode::Custom;
  DivisorSubgroup subgroup;
  std::vector<TDivisor> coordinates;
  Cokernel grading;  // M̂/M in the coordinates of the subgroup basis
  std::vector<IntVector> degrees;
  std::vector<ExceptionalCollection> exceptional;

  const Fan& fan() const { return subgroup.fan(); }
  const FgAbGroup& grading_group() const { return grading.group; }
  /// Class of D ∈ M̂ in M̂/M.
  IntVector degree_of(const TDivisor& d) const;
};

struct PresentationLimits {
  HilbertBasisLimits hilbert;
  std::size_t max_exceptional_coordinates = 24;
};

/// Throws InputError when M̂ does not have enough divisors (naming the failing
/// cone) and DomainError on degenerate fans.
Presentation build_presentation(const Fan& fan, PresentationMode mode, const PresentationLimits& limits = {});
Presentation build_presentation(const DivisorSubgroup& subgroup, const PresentationLimits& limits = {});

/// Grading M̂/M of a subgroup, in its basis coordinates.
Cokernel grading_group(const DivisorSubgroup& subgroup);

/// A family is exceptional when no cone of the fan meets the support of
/// every member; only inclusion-minimal families are returned.
ExceptionalAnalysis exceptional_collections(const Fan& fan, const std::vector<TDivisor>& coordinates,
                                            std::size_t max_coordinates = 24);
ExceptionalAnalysis exceptional_collections(const Presentation& presentation);

/// 0 → M̂/M → Div/M → Div/M̂ → 0, with Div/M = ClDiv(X) the Cox grading and
/// Div/M̂ the group G₁ acting on the Cox coordinates.
struct GradingFactorization {
  Cokernel subgroup_over_principal;  // M̂/M, in subgroup coordinates
  Cokernel divisors_over_principal;  // ClDiv(X), in divisor coordinates
  Cokernel divisors_over_subgroup;   // G₁, in divisor coordinates
  AbHom inclusion;                   // M̂/M → Div/M
  AbHom projection;                  // Div/M → Div/M̂
  std::vector<IntVector> cox_degrees;  // class of each prime divisor in Div/M̂

  bool composite_is_zero() const;
  bool ranks_balance() const;
  /// |M̂/M| · |Div/M̂| = |Div/M| when all three are finite; true otherwise.
  bool orders_balance() const;
};

GradingFactorization grading_factorization(const DivisorSubgroup& subgroup);

}  // namespace toriclift
