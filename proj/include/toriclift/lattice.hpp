#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toriclift/int_matrix.hpp"
#include "toriclift/integer.hpp"

namespace toriclift {

/// U·A·V = S with U, V unimodular and S diagonal, nonnegative, and
/// s_1 | s_2 | ... on the diagonal.
struct SmithDecomposition {
  IntMatrix left;      // U
  IntMatrix diagonal;  // S
  IntMatrix right;     // V
  IntMatrix left_inverse;
  IntMatrix right_inverse;
  std::size_t rank = 0;

  /// The nonzero diagonal entries in order.
  IntVector invariant_factors() const;
};

/// Pivot rule: smallest nonzero |entry|, then lowest row, then lowest column.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by `generators`:
/// independent rows in echelon form, pivots positive, entries above each
/// pivot reduced into [0, pivot).
IntMatrix hermite_basis(const std::vector<IntVector>& generators, std::size_t dim);
IntMatrix hermite_basis(const IntMatrix& generator_rows);

struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel_basis;  // Hermite-reduced basis of {x : A·x = 0}
};

/// All integer solutions of A·x = b, or nullopt when there are none.
std::optional<IntegerSolution> solve_integer_linear(const IntMatrix& a, const IntVector& b);

/// Hermite-reduced basis of the integer kernel {x : A·x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Coefficients c with c·basis = v, if v lies in the row lattice of `basis`.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_rows, const IntVector& v);
bool lattice_contains(const IntMatrix& basis_rows, const IntVector& v);

/// Finitely generated abelian group Z^free ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k in canonical
/// form: every t_i ≥ 2 and t_i | t_{i+1}. Element coordinates list the
/// torsion components first, then the free ones.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Throws DomainError unless `torsion` is already canonical.
  FgAbGroup(std::size_t free_rank, IntVector torsion);

  /// Canonical form of Z/d_1 ⊕ ... ⊕ Z/d_k, where d_i = 0 stands for Z and
  /// d_i = 1 for the trivial group.
  static FgAbGroup from_cyclic_factors(const IntVector& factors);

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t num_generators() const { return torsion_.size() + free_rank_; }
  bool is_trivial() const { return num_generators() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Group order; nullopt when infinite.
  std::optional<Integer> order() const;

  /// Reduces torsion coordinates into [0, t_i).
  IntVector reduce(const IntVector& coords) const;
  bool is_zero_element(const IntVector& coords) const;
  /// Order of an element; nullopt when it has infinite order.
  std::optional<Integer> element_order(const IntVector& coords) const;

  /// "Z ⊕ Z/2", "0" for the trivial group.
  std::string to_string() const;

  bool operator==(const FgAbGroup&) const = default;

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// coker(A: Z^k → Z^m) for A with m rows; the columns of A are the relations.
struct Cokernel {
  FgAbGroup group;
  IntMatrix projection;  // num_generators × m: vector ↦ raw class coordinates
  IntMatrix lifts;       // m × num_generators: a representative for each generator

  IntVector class_of(const IntVector& x) const;
  std::size_t ambient_dim() const { return projection.cols(); }
};

Cokernel cokernel_group(const IntMatrix& a);

/// Homomorphism between finitely generated abelian groups, given by the
/// images of the domain generators (matrix columns) in codomain coordinates.
class AbHom {
 public:
  /// Throws DomainError if the matrix does not respect the torsion relations.
  static AbHom create(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix);

  const FgAbGroup& domain() const { return domain_; }
  const FgAbGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& coords) const;
  /// (*this) ∘ inner
  AbHom after(const AbHom& inner) const;
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;

  bool operator==(const AbHom&) const = default;

 private:
  AbHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix);

  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix matrix_;  // codomain generators × domain generators
};

/// All homomorphisms Z^a → Z^c restricting to prescribed values on a
/// subgroup. A homomorphism is stored as an a × c matrix whose row j is the
/// image of e_j; the full solution set is particular + free_directions · T
/// for arbitrary integer T.
struct HomExtension {
  IntMatrix particular;
  IntMatrix free_directions;  // a × (a - rank of subgroup)
};

/// Certificate that no extension exists: multiplier · element lies in the
/// subgroup, with forced value `forced_value`, which multiplier does not divide.
struct ExtensionObstruction {
  IntVector element;
  Integer multiplier;
  IntVector forced_value;
};

struct ExtensionResult {
  std::optional<HomExtension> extension;
  std::optional<ExtensionObstruction> obstruction;
};

/// `subgroup_basis` rows span the subgroup of Z^ambient_rank and
/// `values_on_subgroup` row i is the prescribed image of row i. Throws
/// DomainError when the values are inconsistent on relations among the rows.
ExtensionResult extend_homomorphism(const IntMatrix& subgroup_basis, const IntMatrix& values_on_subgroup,
                                    std::size_t ambient_rank, std::size_t codomain_rank);

struct HilbertBasisLimits {
  std::size_t max_ambient_rank = 16;
  std::size_t max_enumeration_nodes = 4'000'000;
  std::size_t max_generators = 20'000;
};

/// Inclusion-minimal generators of {v ∈ span_Z(rows) : v ≥ 0}, ordered by
/// coordinate sum, then lexicographically descending. Throws ResourceError
/// when a guard is exceeded.
std::vector<IntVector> hilbert_basis(const IntMatrix& subgroup_basis, std::size_t ambient_rank,
                                     const HilbertBasisLimits& limits = {});

/// Primitive extreme rays of span_R(rows) ∩ (nonnegative orthant), found by
/// double description in the coordinates of the row lattice.
std::vector<IntVector> nonnegative_extreme_rays(const IntMatrix& subgroup_basis);

}  // namespace toriclift
