#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toriclift/divisors.hpp"
#include "toriclift/presentation.hpp"

namespace toriclift {

/// Toric morphism X_{Σ'} → X_Σ given by F: N' → N.
class ToricMorphism {
 public:
  const Fan& source() const { return source_; }
  const Fan& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  /// F(v_ρ') for every source ray.
  const std::vector<IntVector>& ray_images() const { return ray_images_; }
  /// Minimal target cone containing F(v_ρ').
  const std::vector<Cone>& ray_targets() const { return ray_targets_; }
  /// Minimal target cone containing F(σ') for every maximal source cone.
  const std::vector<Cone>& cone_targets() const { return cone_targets_; }
  /// Maximal target cones containing F(v_ρ').
  const std::vector<std::vector<std::size_t>>& ray_hosts() const { return ray_hosts_; }

 private:
  friend ToricMorphism validate_toric_morphism(const Fan&, const Fan&, const IntMatrix&);
  ToricMorphism(Fan source, Fan target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

  Fan source_;
  Fan target_;
  IntMatrix matrix_;
  std::vector<IntVector> ray_images_;
  std::vector<Cone> ray_targets_;
  std::vector<Cone> cone_targets_;
  std::vector<std::vector<std::size_t>> ray_hosts_;
};

/// `matrix` is target rank × source rank. Throws InputError naming every
/// source cone whose image lies in no single target cone.
ToricMorphism validate_toric_morphism(const Fan& source, const Fan& target, const IntMatrix& matrix);

ToricMorphism compose(const ToricMorphism& outer, const ToricMorphism& inner);

/// f*D for Cartier D, coefficient ⟨m_σ, F v_ρ'⟩ with σ ∋ F v_ρ'.
TDivisor pullback_cartier(const ToricMorphism& f, const CartierData& data);
/// Convenience overload; throws InputError when D is not Cartier.
TDivisor pullback_cartier(const ToricMorphism& f, const TDivisor& divisor);

/// Defined when every F v_ρ' lies in a smooth minimal cone; nullopt otherwise.
std::optional<TDivisor> strict_transform(const ToricMorphism& f, const TDivisor& divisor);

struct LiftingOptions {
  /// Box radius for the search over the residual lattice; 0 picks
  /// 4 × the largest forced coefficient (at least 1).
  std::size_t search_bound = 0;
  /// Run the effectivity and support checks even on simplicial targets.
  bool force_geometric_checks = false;
  std::size_t max_search_points = 200'000;
  std::size_t max_witness_classes = 8;
  HilbertBasisLimits hilbert;
};

enum class LiftingVerdict { Exists, DoesNotExist, Undecided };
std::string verdict_name(LiftingVerdict v);

/// φ(B_j) = D'_j + div(χ^{m_j}) with D'_j ∈ M̂'.
struct Decomposition {
  TDivisor divisor;
  IntVector character;
};

struct GeometricPullbackWitness {
  IntMatrix phi;  // row j = φ(B_j) on the source rays
  std::vector<Decomposition> decomposition;
  /// Directions Δ (rank M̂ × source rays) such that φ + Σ t Δ still
  /// satisfies the extension and containment conditions.
  std::vector<IntMatrix> solution_lattice;
};

struct LiftingObstruction {
  std::string kind;  // "extension", "containment", "effectivity", "support"
  std::string message;
  std::optional<std::size_t> basis_index;
  Integer multiplier = 1;
  IntVector forced_value;
};

struct LiftingReport {
  LiftingVerdict verdict = LiftingVerdict::Undecided;
  std::optional<GeometricPullbackWitness> witness;
  std::optional<AbHom> induced_grading_hom;  // M̂/M → M̂'/M'
  /// Every witness found within the search box, the first being `witness`.
  std::vector<IntMatrix> witness_classes;
  bool unique = false;
  bool search_truncated = false;
  bool geometric_checks_skipped = false;
  std::size_t search_bound = 0;
  std::vector<LiftingObstruction> obstructions;
  IntMatrix cartier_basis;   // C as divisors on the target
  IntMatrix forced_values;   // pullbacks of the rows of cartier_basis
  IntMatrix target_basis;    // M̂
  IntMatrix source_basis;    // M̂'
  std::vector<std::string> notes;
};

LiftingReport solve_geometric_pullback(const ToricMorphism& f, const DivisorSubgroup& target_subgroup,
                                       const DivisorSubgroup& source_subgroup, const LiftingOptions& options = {});

/// Independent re-check of a candidate φ: extension on C, effectivity and
/// support on the effective generators, containment in M̂'. Returns one line
/// per violated condition.
std::vector<std::string> verify_geometric_pullback(const ToricMorphism& f, const DivisorSubgroup& target_subgroup,
                                                   const DivisorSubgroup& source_subgroup, const IntMatrix& phi,
                                                   const HilbertBasisLimits& limits = {});

/// Human-readable coordinate data of the liftings, one line per basis divisor.
std::vector<std::string> classify_liftings(const ToricMorphism& f, const LiftingReport& report);

}  // namespace toriclift
