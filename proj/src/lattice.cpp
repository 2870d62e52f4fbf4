#include "toriclift/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "toriclift/errors.hpp"

namespace toriclift {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer truncated_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Smallest nonzero |entry| in the lower-right block starting at (t, t);
// ties go to the lowest row, then the lowest column.
bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Integer a = abs_value(s(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

IntVector SmithDecomposition::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  IntMatrix u_inv = IntMatrix::identity(m);
  IntMatrix v_inv = IntMatrix::identity(n);

  auto row_swap = [&](std::size_t i, std::size_t j) {
    s.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_columns(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    s.swap_columns(i, j);
    v.swap_columns(i, j);
    v_inv.swap_rows(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    s.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
    u_inv.add_column_multiple(src, dst, -k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    s.add_column_multiple(dst, src, k);
    v.add_column_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, -k);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(s, t, pr, pc)) break;
    row_swap(t, pr);
    col_swap(t, pc);
    for (;;) {
      bool remainder = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        row_add(i, t, -truncated_quotient(s(i, t), s(t, t)));
        if (s(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        col_add(j, t, -truncated_quotient(s(t, j), s(t, t)));
        if (s(t, j) != 0) remainder = true;
      }
      if (remainder) {
        find_pivot(s, t, pr, pc);
        row_swap(t, pr);
        col_swap(t, pc);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            row_add(t, i, Integer(1));
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
      u_inv.negate_column(t);
    }
  }
  SmithDecomposition out{std::move(u), std::move(s), std::move(v), std::move(u_inv), std::move(v_inv), 0};
  while (out.rank < std::min(m, n) && out.diagonal(out.rank, out.rank) != 0) ++out.rank;
  return out;
}

IntMatrix hermite_basis(const std::vector<IntVector>& generators, std::size_t dim) {
  IntMatrix h = IntMatrix::from_rows(generators, dim);
  const std::size_t m = h.rows();
  std::size_t p = 0;
  for (std::size_t c = 0; c < dim && p < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = p; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs_value(h(i, c)) < abs_value(h(best, c)))) best = i;
      if (best == m) break;
      h.swap_rows(p, best);
      bool others = false;
      for (std::size_t i = p + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        h.add_row_multiple(i, p, -truncated_quotient(h(i, c), h(p, c)));
        if (h(i, c) != 0) others = true;
      }
      if (!others) break;
    }
    if (h(p, c) == 0) continue;
    if (h(p, c) < 0) h.negate_row(p);
    for (std::size_t i = 0; i < p; ++i) h.add_row_multiple(i, p, -floor_div(h(i, c), h(p, c)));
    ++p;
  }
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < p; ++i) rows.push_back(h.row(i));
  return IntMatrix::from_rows(rows, dim);
}

IntMatrix hermite_basis(const IntMatrix& generator_rows) {
  return hermite_basis(generator_rows.row_vectors(), generator_rows.cols());
}

std::optional<IntegerSolution> solve_integer_linear(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer_linear: dimension mismatch");
  const SmithDecomposition snf = smith_normal_form(a);
  const IntVector c = snf.left * b;
  IntVector y = zero_vector(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      const Integer& d = snf.diagonal(i, i);
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution out;
  out.particular = snf.right * y;
  std::vector<IntVector> kernel;
  for (std::size_t j = snf.rank; j < a.cols(); ++j) kernel.push_back(snf.right.column(j));
  out.kernel_basis = hermite_basis(kernel, a.cols()).row_vectors();
  return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  return solve_integer_linear(a, zero_vector(a.rows()))->kernel_basis;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_rows, const IntVector& v) {
  if (v.size() != basis_rows.cols()) throw std::invalid_argument("lattice_coordinates: dimension mismatch");
  if (basis_rows.rows() == 0) {
    if (is_zero(v)) return IntVector{};
    return std::nullopt;
  }
  auto sol = solve_integer_linear(basis_rows.transposed(), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

bool lattice_contains(const IntMatrix& basis_rows, const IntVector& v) {
  return lattice_coordinates(basis_rows, v).has_value();
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup::FgAbGroup(std::size_t free_rank, IntVector torsion) : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw DomainError("FgAbGroup: torsion factor below 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) throw DomainError("FgAbGroup: torsion factors not a divisibility chain");
  }
}

FgAbGroup FgAbGroup::from_cyclic_factors(const IntVector& factors) {
  IntMatrix d(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) d(i, i) = factors[i];
  return cokernel_group(d).group;
}

std::optional<Integer> FgAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer o = 1;
  for (const auto& t : torsion_) o *= t;
  return o;
}

IntVector FgAbGroup::reduce(const IntVector& coords) const {
  if (coords.size() != num_generators()) throw std::invalid_argument("FgAbGroup::reduce: wrong coordinate count");
  IntVector out = coords;
  for (std::size_t i = 0; i < torsion_.size(); ++i) out[i] = mod_floor(out[i], torsion_[i]);
  return out;
}

bool FgAbGroup::is_zero_element(const IntVector& coords) const { return is_zero(reduce(coords)); }

std::optional<Integer> FgAbGroup::element_order(const IntVector& coords) const {
  IntVector r = reduce(coords);
  for (std::size_t i = torsion_.size(); i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  Integer o = 1;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (r[i] == 0) continue;
    Integer g = gcd(r[i], torsion_[i]);
    o = lcm(o, Integer(torsion_[i] / g));
  }
  return o;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  auto append = [&](const std::string& part) {
    if (!s.empty()) s += " ⊕ ";
    s += part;
  };
  for (std::size_t i = 0; i < free_rank_; ++i) append("Z");
  for (const auto& t : torsion_) append("Z/" + t.get_str());
  return s;
}

// ---------------------------------------------------------------------------
// Cokernel

IntVector Cokernel::class_of(const IntVector& x) const { return group.reduce(projection * x); }

Cokernel cokernel_group(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const SmithDecomposition snf = smith_normal_form(a);

  std::vector<std::size_t> kept;
  IntVector torsion;
  std::size_t free_rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < snf.rank) {
      if (snf.diagonal(i, i) == 1) continue;
      torsion.push_back(snf.diagonal(i, i));
    } else {
      ++free_rank;
    }
    kept.push_back(i);
  }
  Cokernel out;
  out.group = FgAbGroup(free_rank, torsion);
  out.projection = snf.left.select_rows(kept);
  out.lifts = snf.left_inverse.select_columns(kept);
  return out;
}

// ---------------------------------------------------------------------------
// AbHom

AbHom::AbHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {}

AbHom AbHom::create(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix) {
  if (matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators())
    throw DomainError("AbHom: matrix shape does not match the groups");
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    IntVector col = codomain.reduce(matrix.column(j));
    if (j < domain.torsion().size() && !codomain.is_zero_element(scale(domain.torsion()[j], col)))
      throw DomainError("AbHom: image of a torsion generator does not respect its order");
    matrix.set_column(j, col);
  }
  return AbHom(std::move(domain), std::move(codomain), std::move(matrix));
}

IntVector AbHom::apply(const IntVector& coords) const { return codomain_.reduce(matrix_ * coords); }

AbHom AbHom::after(const AbHom& inner) const {
  if (!(inner.codomain_ == domain_)) throw DomainError("AbHom: composition of incompatible maps");
  return create(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

bool AbHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!codomain_.is_zero_element(matrix_.column(j))) return false;
  return true;
}

namespace {

// Relations of the codomain as columns: t_i e_i for each torsion coordinate.
IntMatrix torsion_relations(const FgAbGroup& g) {
  IntMatrix t(g.num_generators(), g.torsion().size());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) t(i, i) = g.torsion()[i];
  return t;
}

}  // namespace

bool AbHom::is_injective() const {
  const std::size_t k = domain_.num_generators();
  if (k == 0) return true;
  if (codomain_.num_generators() == 0) return false;
  // Kernel of x ↦ matrix·x modulo the codomain relations.
  IntMatrix rel = torsion_relations(codomain_);
  for (std::size_t c = 0; c < rel.cols(); ++c) rel.negate_column(c);
  const IntMatrix system = rel.cols() ? horizontal_concat(matrix_, rel) : matrix_;
  for (const auto& kv : integer_kernel(system)) {
    IntVector x(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(k));
    if (!domain_.is_zero_element(x)) return false;
  }
  return true;
}

bool AbHom::is_surjective() const {
  const std::size_t l = codomain_.num_generators();
  if (l == 0) return true;
  IntMatrix gens = horizontal_concat(matrix_, torsion_relations(codomain_));
  if (gens.cols() == 0) return false;
  SmithDecomposition snf = smith_normal_form(gens);
  if (snf.rank != l) return false;
  for (const auto& f : snf.invariant_factors())
    if (f != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Homomorphism extension

ExtensionResult extend_homomorphism(const IntMatrix& subgroup_basis, const IntMatrix& values_on_subgroup,
                                    std::size_t ambient_rank, std::size_t codomain_rank) {
  const std::size_t k = subgroup_basis.rows();
  if (subgroup_basis.cols() != ambient_rank && k > 0)
    throw std::invalid_argument("extend_homomorphism: subgroup basis has wrong width");
  if (values_on_subgroup.rows() != k || (k > 0 && values_on_subgroup.cols() != codomain_rank))
    throw std::invalid_argument("extend_homomorphism: values have wrong shape");

  ExtensionResult result;
  if (k == 0) {
    result.extension = HomExtension{IntMatrix(ambient_rank, codomain_rank), IntMatrix::identity(ambient_rank)};
    return result;
  }
  const SmithDecomposition snf = smith_normal_form(subgroup_basis);
  const IntMatrix uy = snf.left * values_on_subgroup;
  for (std::size_t i = snf.rank; i < k; ++i)
    if (!is_zero(uy.row(i)))
      throw DomainError("extend_homomorphism: prescribed values are inconsistent on a relation among the subgroup generators");

  IntMatrix z(ambient_rank, codomain_rank);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    const Integer& d = snf.diagonal(i, i);
    for (std::size_t c = 0; c < codomain_rank; ++c) {
      if (uy(i, c) % d != 0) {
        // d · (row i of V^{-1}) = (U·G)_i lies in the subgroup.
        result.obstruction = ExtensionObstruction{snf.right_inverse.row(i), d, uy.row(i)};
        return result;
      }
      z(i, c) = uy(i, c) / d;
    }
  }
  std::vector<IntVector> free_cols;
  for (std::size_t j = snf.rank; j < ambient_rank; ++j) free_cols.push_back(snf.right.column(j));
  result.extension = HomExtension{snf.right * z, IntMatrix::from_columns(free_cols, ambient_rank)};
  return result;
}

// ---------------------------------------------------------------------------
// Hilbert bases

namespace {

std::size_t tight_rank(const std::vector<IntVector>& inequalities, const IntVector& x) {
  std::vector<IntVector> tight;
  for (const auto& a : inequalities)
    if (dot(a, x) == 0) tight.push_back(a);
  if (tight.empty()) return 0;
  return matrix_rank(IntMatrix::from_rows(tight, x.size()));
}

// Extreme rays of {c : a·c ≥ 0 for all a} in Z^dim by double description.
std::vector<IntVector> double_description(const std::vector<IntVector>& inequalities, std::size_t dim) {
  std::vector<IntVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
  std::vector<IntVector> rays;
  std::vector<IntVector> processed;

  for (const auto& a : inequalities) {
    if (is_zero(a)) continue;
    processed.push_back(a);
    auto pivot = std::find_if(lineality.begin(), lineality.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
    if (pivot != lineality.end()) {
      IntVector l0 = *pivot;
      if (dot(a, l0) < 0) l0 = scale(Integer(-1), l0);
      const Integer al0 = dot(a, l0);
      std::vector<IntVector> next_lineality;
      for (const auto& l : lineality) {
        if (&l == &*pivot) continue;
        next_lineality.push_back(primitive_part(subtract(scale(al0, l), scale(dot(a, l), l0))));
      }
      for (auto& x : rays) x = primitive_part(subtract(scale(al0, x), scale(dot(a, x), l0)));
      rays.push_back(l0);
      lineality = std::move(next_lineality);
      continue;
    }
    std::vector<IntVector> pos, zero, neg;
    for (const auto& x : rays) {
      Integer s = dot(a, x);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(x);
    }
    std::vector<IntVector> candidates = pos;
    candidates.insert(candidates.end(), zero.begin(), zero.end());
    for (const auto& p : pos)
      for (const auto& n : neg) candidates.push_back(primitive_part(subtract(scale(dot(a, p), n), scale(dot(a, n), p))));
    const std::size_t target = dim - lineality.size() - 1;
    std::set<IntVector> seen;
    rays.clear();
    for (const auto& x : candidates) {
      if (is_zero(x) || !seen.insert(x).second) continue;
      if (tight_rank(processed, x) == target) rays.push_back(x);
    }
  }
  if (!lineality.empty()) throw DomainError("double description: cone is not pointed");
  return rays;
}

}  // namespace

std::vector<IntVector> nonnegative_extreme_rays(const IntMatrix& subgroup_basis) {
  const IntMatrix basis = hermite_basis(subgroup_basis);
  const std::size_t r = basis.rows();
  if (r == 0) return {};
  std::vector<IntVector> inequalities;
  for (std::size_t j = 0; j < basis.cols(); ++j) inequalities.push_back(basis.column(j));
  std::vector<IntVector> out;
  for (const auto& c : double_description(inequalities, r)) out.push_back(primitive_part(c) * basis);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> hilbert_basis(const IntMatrix& subgroup_basis, std::size_t ambient_rank,
                                     const HilbertBasisLimits& limits) {
  if (ambient_rank > limits.max_ambient_rank)
    throw ResourceError("hilbert_basis: ambient rank " + std::to_string(ambient_rank) + " exceeds the guard of " +
                        std::to_string(limits.max_ambient_rank));
  if (subgroup_basis.rows() > 0 && subgroup_basis.cols() != ambient_rank)
    throw std::invalid_argument("hilbert_basis: basis width differs from ambient rank");
  const IntMatrix h = hermite_basis(subgroup_basis.rows() ? subgroup_basis : IntMatrix(0, ambient_rank));
  const std::size_t r = h.rows();
  if (r == 0) return {};

  const auto extreme = nonnegative_extreme_rays(h);
  if (extreme.empty()) return {};
  IntVector bound = zero_vector(ambient_rank);
  for (const auto& x : extreme) bound = add(bound, x);

  std::vector<std::size_t> pivot(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = 0;
    while (h(i, c) == 0) ++c;
    pivot[i] = c;
  }

  std::vector<IntVector> candidates;
  std::size_t nodes = 0;
  IntVector partial = zero_vector(ambient_rank);
  // Coordinates below pivot[i] are fixed once rows 0..i-1 are chosen.
  std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t i, std::size_t checked_upto) {
    if (++nodes > limits.max_enumeration_nodes)
      throw ResourceError("hilbert_basis: enumeration exceeded " + std::to_string(limits.max_enumeration_nodes) + " nodes");
    const std::size_t fixed_end = i < r ? pivot[i] : ambient_rank;
    for (std::size_t c = checked_upto; c < fixed_end; ++c)
      if (partial[c] < 0 || partial[c] > bound[c]) return;
    if (i == r) {
      if (!is_zero(partial)) {
        candidates.push_back(partial);
        if (candidates.size() > limits.max_enumeration_nodes)
          throw ResourceError("hilbert_basis: too many candidate points");
      }
      return;
    }
    const std::size_t p = pivot[i];
    const Integer& step = h(i, p);
    Integer lo = -floor_div(partial[p], step);  // ceil(-partial / step)
    Integer hi = floor_div(bound[p] - partial[p], step);
    for (Integer c = lo; c <= hi; ++c) {
      IntVector saved = partial;
      for (std::size_t j = p; j < ambient_rank; ++j) partial[j] += c * h(i, j);
      descend(i + 1, fixed_end);
      partial = std::move(saved);
    }
  };
  descend(0, 0);

  auto sum_of = [](const IntVector& v) {
    Integer s = 0;
    for (const auto& x : v) s += x;
    return s;
  };
  std::sort(candidates.begin(), candidates.end(), [&](const IntVector& a, const IntVector& b) {
    Integer sa = sum_of(a), sb = sum_of(b);
    if (sa != sb) return sa < sb;
    return a > b;
  });

  std::vector<IntVector> basis;
  for (const auto& x : candidates) {
    bool reducible = false;
    for (const auto& g : basis) {
      bool dominates = true;
      for (std::size_t c = 0; c < ambient_rank && dominates; ++c)
        if (x[c] < g[c]) dominates = false;
      if (dominates) {
        reducible = true;
        break;
      }
    }
    if (!reducible) {
      basis.push_back(x);
      if (basis.size() > limits.max_generators)
        throw ResourceError("hilbert_basis: more than " + std::to_string(limits.max_generators) + " generators");
    }
  }
  return basis;
}

}  // namespace toriclift
