#include "toriclift/lifting.hpp"

#include <algorithm>
#include <stdexcept>

#include "toriclift/errors.hpp"
#include "toriclift/rational_lp.hpp"

namespace toriclift {

namespace {

std::string cone_label(const Cone& cone) {
  std::string s = "{";
  for (std::size_t i = 0; i < cone.size(); ++i) s += (i ? "," : "") + std::to_string(cone[i]);
  return s + "}";
}

bool meets(const Cone& cone, const IntVector& divisor) {
  return std::any_of(cone.begin(), cone.end(), [&](std::size_t rho) { return divisor[rho] != 0; });
}

std::optional<std::size_t> unit_index(const IntVector& v) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1 || found) return std::nullopt;
    found = i;
  }
  return found;
}

std::string basis_label(const Fan& fan, const IntMatrix& basis, std::size_t j) {
  if (auto rho = unit_index(basis.row(j))) return "D_" + to_string(fan.ray(*rho));
  return "B_" + std::to_string(j) + to_string(basis.row(j));
}

std::string coordinate_label(const Fan& fan, const IntMatrix& basis, std::size_t j) {
  if (auto rho = unit_index(basis.row(j))) return "T_" + to_string(fan.ray(*rho));
  return "T^B_" + std::to_string(j);
}

std::string monomial(const Fan& fan, const IntVector& exponents) {
  std::string s;
  for (std::size_t rho = 0; rho < exponents.size(); ++rho) {
    if (exponents[rho] == 0) continue;
    if (!s.empty()) s += "·";
    s += "T'_" + to_string(fan.ray(rho));
    if (exponents[rho] != 1) s += "^" + exponents[rho].get_str();
  }
  return s.empty() ? "1" : s;
}

IntMatrix add_combination(IntMatrix base, const std::vector<IntMatrix>& directions, const IntVector& t) {
  for (std::size_t s = 0; s < directions.size(); ++s)
    if (t[s] != 0)
      for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t j = 0; j < base.cols(); ++j) base(i, j) += t[s] * directions[s](i, j);
  return base;
}

}  // namespace

ToricMorphism validate_toric_morphism(const Fan& source, const Fan& target, const IntMatrix& matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw InputError("morphism matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                     ", expected " + std::to_string(target.rank()) + "x" + std::to_string(source.rank()) +
                     " (target rank x source rank)");
  ToricMorphism f(source, target, matrix);
  const auto& cones = target.max_cones();
  for (const auto& v : source.rays()) {
    IntVector w = matrix * v;
    std::vector<std::size_t> hosts;
    for (std::size_t s = 0; s < cones.size(); ++s)
      if (cone_contains(target, cones[s], w)) hosts.push_back(s);
    Cone tau;
    if (!hosts.empty()) tau = minimal_face_containing(target, cones[hosts.front()], w);
    f.ray_images_.push_back(std::move(w));
    f.ray_hosts_.push_back(std::move(hosts));
    f.ray_targets_.push_back(std::move(tau));
  }
  std::vector<std::string> issues;
  for (const auto& c : source.max_cones()) {
    bool all_zero = true;
    IntVector sum = zero_vector(target.rank());
    for (auto rho : c) {
      all_zero = all_zero && is_zero(f.ray_images_[rho]);
      sum = add(sum, f.ray_images_[rho]);
    }
    std::optional<std::size_t> host;
    for (std::size_t s = 0; s < cones.size() && !host; ++s)
      if (std::all_of(c.begin(), c.end(), [&](std::size_t rho) {
            const auto& h = f.ray_hosts_[rho];
            return std::find(h.begin(), h.end(), s) != h.end();
          }))
        host = s;
    if (host) {
      f.cone_targets_.push_back(minimal_face_containing(target, cones[*host], sum));
    } else if (all_zero) {
      f.cone_targets_.push_back({});
    } else {
      issues.push_back("source cone " + cone_label(c) + " maps into no single cone of the target");
    }
  }
  if (!issues.empty()) throw InputError("morphism is not compatible with the fans", issues);
  return f;
}

ToricMorphism compose(const ToricMorphism& outer, const ToricMorphism& inner) {
  if (!(inner.target() == outer.source())) throw InputError("compose: inner target differs from outer source");
  return validate_toric_morphism(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

TDivisor pullback_cartier(const ToricMorphism& f, const CartierData& data) {
  const auto& cones = f.target().max_cones();
  if (data.local_characters.size() != cones.size())
    throw InputError("Cartier data has " + std::to_string(data.local_characters.size()) + " local characters, target has " +
                     std::to_string(cones.size()) + " maximal cones");
  IntVector out;
  for (std::size_t rho = 0; rho < f.source().num_rays(); ++rho) {
    const IntVector& w = f.ray_images()[rho];
    const auto& hosts = f.ray_hosts()[rho];
    if (is_zero(w) || hosts.empty()) {
      out.push_back(0);
      continue;
    }
    Integer value = dot(data.local_characters[hosts.front()], w);
    for (auto s : hosts)
      if (dot(data.local_characters[s], w) != value)
        throw std::logic_error("pullback_cartier: local characters disagree on a shared face");
    out.push_back(value);
  }
  return TDivisor{out};
}

TDivisor pullback_cartier(const ToricMorphism& f, const TDivisor& divisor) {
  auto data = cartier_data(f.target(), divisor);
  if (!data) throw InputError("divisor " + to_string(divisor.coefficients) + " is not Cartier");
  return pullback_cartier(f, *data);
}

std::optional<TDivisor> strict_transform(const ToricMorphism& f, const TDivisor& divisor) {
  IntVector out;
  for (std::size_t rho = 0; rho < f.source().num_rays(); ++rho) {
    const Cone& tau = f.ray_targets()[rho];
    if (!cone_profile(f.target(), tau).smooth) return std::nullopt;
    auto m = local_character(f.target(), tau, divisor);
    if (!m) return std::nullopt;
    out.push_back(dot(*m, f.ray_images()[rho]));
  }
  return TDivisor{out};
}

std::string verdict_name(LiftingVerdict v) {
  switch (v) {
    case LiftingVerdict::Exists:
      return "exists";
    case LiftingVerdict::DoesNotExist:
      return "does-not-exist";
    case LiftingVerdict::Undecided:
      return "undecided";
  }
  return "undecided";
}


namespace {

// Linear form in the search parameters: constant + Σ coeff_s t_s.
struct AffineForm {
  Integer constant;
  IntVector coeffs;
};

struct GeometricConstraints {
  std::vector<AffineForm> zero;      // must vanish (support condition)
  std::vector<AffineForm> positive;  // must be ≥ 0 (effectivity)
  std::vector<std::string> zero_labels, positive_labels;
};

GeometricConstraints geometric_constraints(const ToricMorphism& f, const DivisorSubgroup& target_subgroup,
                                           const IntMatrix& phi, const std::vector<IntMatrix>& directions,
                                           const HilbertBasisLimits& limits) {
  GeometricConstraints out;
  const Fan& src = f.source();
  for (const auto& e : effective_generators(target_subgroup, limits)) {
    const IntVector coords = *target_subgroup.coordinates(e);
    const IntVector base = coords * phi;
    std::vector<IntVector> slopes;
    for (const auto& d : directions) slopes.push_back(coords * d);
    for (std::size_t rho = 0; rho < src.num_rays(); ++rho) {
      AffineForm form{base[rho], {}};
      for (const auto& sl : slopes) form.coeffs.push_back(sl[rho]);
      const std::string where = "coefficient of " + to_string(src.ray(rho)) + " in φ(" + to_string(e.coefficients) + ")";
      if (!meets(f.ray_targets()[rho], e.coefficients)) {
        out.zero.push_back(form);
        out.zero_labels.push_back(where + " must vanish: the ray maps to an orbit outside the support");
      }
      out.positive.push_back(std::move(form));
      out.positive_labels.push_back(where + " must be nonnegative");
    }
  }
  return out;
}

Integer evaluate(const AffineForm& form, const IntVector& t) {
  Integer v = form.constant;
  for (std::size_t s = 0; s < t.size(); ++s) v += form.coeffs[s] * t[s];
  return v;
}

// Substitute t = t0 + K u.
AffineForm substitute(const AffineForm& form, const IntVector& t0, const std::vector<IntVector>& kernel) {
  AffineForm out{evaluate(form, t0), {}};
  for (const auto& k : kernel) out.coeffs.push_back(dot(form.coeffs, k));
  return out;
}

// Visits the points of [-bound, bound]^q in shells of growing sup-norm, each
// shell in lexicographic order. Returns false when stopped by the visitor.
template <typename Visitor>
bool for_each_shell_point(std::size_t q, std::size_t bound, Visitor&& visit) {
  for (std::size_t radius = 0; radius <= bound; ++radius) {
    const long r = static_cast<long>(radius);
    std::vector<long> u(q, -r);
    while (true) {
      bool on_shell = radius == 0 || std::any_of(u.begin(), u.end(), [&](long x) { return x == r || x == -r; });
      if (on_shell) {
        IntVector point;
        for (auto x : u) point.emplace_back(x);
        if (!visit(point)) return false;
      }
      std::size_t i = q;
      while (i > 0 && u[i - 1] == r) u[--i] = -r;
      if (i == 0) break;
      ++u[i - 1];
    }
  }
  return true;
}

}  // namespace

LiftingReport solve_geometric_pullback(const ToricMorphism& f, const DivisorSubgroup& target_subgroup,
                                       const DivisorSubgroup& source_subgroup, const LiftingOptions& options) {
  const Fan& tgt = f.target();
  const Fan& src = f.source();
  if (!(target_subgroup.fan() == tgt)) throw InputError("target subgroup belongs to a different fan");
  if (!(source_subgroup.fan() == src)) throw InputError("source subgroup belongs to a different fan");
  if (tgt.is_degenerate() || src.is_degenerate())
    throw DomainError("lifting needs non-degenerate fans; split off the torus factors first");
  for (const auto* sub : {&target_subgroup, &source_subgroup}) {
    auto enough = has_enough_divisors(*sub);
    if (!enough.passes)
      throw InputError(std::string(sub == &target_subgroup ? "target" : "source") +
                       " subgroup does not have enough divisors (cone " + cone_label(sub->fan().max_cones()[enough.failing_cones.front()]) + ")");
  }

  const IntMatrix& basis = target_subgroup.basis();
  const std::size_t r = target_subgroup.rank(), n_src = src.num_rays();
  LiftingReport report;
  report.target_basis = basis;
  report.source_basis = source_subgroup.basis();
  report.notes.push_back("effectivity and support conditions are checked on the effective generators of the target subgroup");

  // (a) forced values on C = M̂ ∩ CDiv.
  report.cartier_basis = cartier_lattice(tgt, basis);
  const std::size_t c = report.cartier_basis.rows();
  IntMatrix c_coords(c, r);
  report.forced_values = IntMatrix(c, n_src);
  Integer largest = 0;
  for (std::size_t i = 0; i < c; ++i) {
    const TDivisor d{report.cartier_basis.row(i)};
    c_coords.set_row(i, *target_subgroup.coordinates(d));
    const IntVector value = pullback_cartier(f, d).coefficients;
    report.forced_values.set_row(i, value);
    for (const auto& x : value) largest = std::max<Integer>(largest, abs(x));
  }
  report.search_bound = options.search_bound ? options.search_bound : std::max<std::size_t>(1, 4 * largest.get_ui());

  // (b) extend from C to M̂.
  const ExtensionResult ext = extend_homomorphism(c_coords, report.forced_values, r, n_src);
  if (!ext.extension) {
    report.verdict = LiftingVerdict::DoesNotExist;
    const Cokernel quotient = cokernel_group(c ? c_coords.transposed() : IntMatrix(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      auto k = quotient.group.element_order(quotient.class_of(unit_vector(r, j)));
      if (!k || *k == 1) continue;
      const IntVector value = *lattice_coordinates(c_coords, scale(*k, unit_vector(r, j))) * report.forced_values;
      if (std::all_of(value.begin(), value.end(), [&](const Integer& x) { return mod_floor(x, *k) == 0; })) continue;
      const std::string label = basis_label(tgt, basis, j);
      report.obstructions.push_back({"extension",
                                     "non-integral extension at " + label + ": " + k->get_str() + "·φ(" + label +
                                         ") = " + to_string(value) + " has no integral solution",
                                     j, *k, value});
    }
    if (report.obstructions.empty()) {
      const auto& ob = *ext.obstruction;
      const IntVector element = ob.element * basis;
      report.obstructions.push_back({"extension",
                                     "non-integral extension at " + to_string(element) + ": " + ob.multiplier.get_str() +
                                         "·φ(" + to_string(element) + ") must have coordinate " +
                                         to_string(ob.forced_value) + " in a basis of the extension problem",
                                     std::nullopt, ob.multiplier, ob.forced_value});
    }
    return report;
  }
  const IntMatrix& phi0 = ext.extension->particular;
  const IntMatrix& free = ext.extension->free_directions;
  const std::size_t kf = free.cols();

  // (c) containment: every row of φ0 + free·T must lie in M̂' (M' ⊆ M̂', so
  // M̂' + PDiv^T = M̂'). Unknowns: T (kf × n_src), then one multiple per torsion
  // relation per row.
  const Cokernel residue = cokernel_group(source_subgroup.rank() ? source_subgroup.basis().transposed()
                                                                 : IntMatrix(n_src, 0));
  const std::size_t g = residue.group.num_generators(), t = residue.group.torsion().size();
  const IntMatrix& pi = residue.projection;  // g × n_src
  const std::size_t unknowns = kf * n_src + r * t;
  IntMatrix system(r * g, unknowns);
  IntVector rhs(r * g, Integer(0));
  for (std::size_t j = 0; j < r; ++j) {
    const IntVector pi_phi0 = pi * phi0.row(j);
    for (std::size_t h = 0; h < g; ++h) {
      const std::size_t eq = j * g + h;
      rhs[eq] = -pi_phi0[h];
      for (std::size_t l = 0; l < kf; ++l)
        for (std::size_t rho = 0; rho < n_src; ++rho) system(eq, l * n_src + rho) = free(j, l) * pi(h, rho);
      if (h < t) system(eq, kf * n_src + j * t + h) = -residue.group.torsion()[h];
    }
  }
  const auto contained = solve_integer_linear(system, rhs);
  if (!contained) {
    report.verdict = LiftingVerdict::DoesNotExist;
    for (std::size_t j = 0; j < r && kf == 0; ++j)
      if (!lattice_contains(source_subgroup.basis(), phi0.row(j))) {
        const std::string label = basis_label(tgt, basis, j);
        report.obstructions.push_back({"containment",
                                       "φ(" + label + ") = " + to_string(phi0.row(j)) +
                                           " is not in the source subgroup plus principal divisors",
                                       j, 1, phi0.row(j)});
      }
    if (report.obstructions.empty())
      report.obstructions.push_back({"containment",
                                     "no extension of the Cartier pullback takes values in the source subgroup plus "
                                     "principal divisors",
                                     std::nullopt, 1, {}});
    return report;
  }
  auto t_matrix = [&](const IntVector& flat) {
    IntMatrix m(kf, n_src);
    for (std::size_t l = 0; l < kf; ++l)
      for (std::size_t rho = 0; rho < n_src; ++rho) m(l, rho) = flat[l * n_src + rho];
    return m;
  };
  const IntMatrix phi1 = phi0 + free * t_matrix(contained->particular);
  std::vector<IntMatrix> directions;
  for (const auto& k : contained->kernel_basis) {
    IntMatrix d = free * t_matrix(k);
    bool nonzero = false;
    for (std::size_t i = 0; i < d.rows() && !nonzero; ++i) nonzero = !is_zero(d.row(i));
    if (nonzero) directions.push_back(std::move(d));
  }

  auto finish = [&](const IntMatrix& phi, std::vector<IntMatrix> lattice) {
    report.verdict = LiftingVerdict::Exists;
    GeometricPullbackWitness w{phi, {}, std::move(lattice)};
    for (std::size_t j = 0; j < r; ++j) w.decomposition.push_back({TDivisor{phi.row(j)}, zero_vector(src.rank())});
    report.witness = std::move(w);
    if (report.witness_classes.empty()) report.witness_classes.push_back(phi);
    const Cokernel grading = grading_group(target_subgroup);
    const Cokernel grading_src = grading_group(source_subgroup);
    IntMatrix hom(grading_src.group.num_generators(), grading.group.num_generators());
    for (std::size_t gen = 0; gen < grading.group.num_generators(); ++gen) {
      const IntVector image = grading.lifts.column(gen) * phi;
      hom.set_column(gen, grading_src.class_of(*source_subgroup.coordinates(TDivisor{image})));
    }
    report.induced_grading_hom = AbHom::create(grading.group, grading_src.group, hom);
    return report;
  };

  // (d) effectivity and support on the effective generators.
  if (smoothness_profile(tgt).simplicial && !options.force_geometric_checks) {
    report.geometric_checks_skipped = true;
    report.unique = directions.empty();
    return finish(phi1, directions);
  }
  const GeometricConstraints gc = geometric_constraints(f, target_subgroup, phi1, directions, options.hilbert);
  const std::size_t s = directions.size();
  IntMatrix eq(gc.zero.size(), s);
  IntVector eq_rhs;
  for (std::size_t i = 0; i < gc.zero.size(); ++i) {
    eq.set_row(i, gc.zero[i].coeffs);
    eq_rhs.push_back(-gc.zero[i].constant);
  }
  const auto support = solve_integer_linear(eq, eq_rhs);
  if (!support) {
    report.verdict = LiftingVerdict::DoesNotExist;
    std::string message = "support condition cannot be met";
    if (s == 0)
      for (std::size_t i = 0; i < gc.zero.size(); ++i)
        if (gc.zero[i].constant != 0) {
          message = gc.zero_labels[i];
          break;
        }
    report.obstructions.push_back({"support", message, std::nullopt, 1, {}});
    return report;
  }
  const IntVector& base_t = support->particular;
  const std::vector<IntVector>& kernel = support->kernel_basis;
  std::vector<AffineForm> reduced;
  for (const auto& form : gc.positive) reduced.push_back(substitute(form, base_t, kernel));
  std::vector<IntMatrix> lattice;
  for (const auto& k : kernel) lattice.push_back(add_combination(IntMatrix(r, n_src), directions, k));
  auto phi_at = [&](const IntVector& u) {
    IntVector tv = base_t;
    for (std::size_t i = 0; i < kernel.size(); ++i) tv = add(tv, scale(u[i], kernel[i]));
    return add_combination(phi1, directions, tv);
  };

  const std::size_t q = kernel.size();
  if (q == 0) {
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (reduced[i].constant < 0) {
        report.verdict = LiftingVerdict::DoesNotExist;
        report.obstructions.push_back({"effectivity", gc.positive_labels[i], std::nullopt, 1, {}});
        return report;
      }
    report.unique = true;
    return finish(phi_at({}), {});
  }

  FeasibilityProblem lp(q);
  for (const auto& form : reduced) lp.add(form.coeffs, Relation::GreaterEqual, -form.constant);
  if (!find_feasible_point(lp)) {
    report.verdict = LiftingVerdict::DoesNotExist;
    report.obstructions.push_back({"effectivity",
                                   "no extension keeps every effective generator effective while meeting the support "
                                   "condition",
                                   std::nullopt, 1, {}});
    return report;
  }
  std::size_t visited = 0;
  std::optional<IntVector> first;
  for_each_shell_point(q, report.search_bound, [&](const IntVector& u) {
    if (++visited > options.max_search_points) {
      report.search_truncated = true;
      return false;
    }
    for (const auto& form : reduced)
      if (evaluate(form, u) < 0) return true;
    if (!first) first = u;
    report.witness_classes.push_back(phi_at(u));
    if (report.witness_classes.size() >= options.max_witness_classes) {
      report.search_truncated = true;
      return false;
    }
    return true;
  });
  if (!first) {
    report.verdict = LiftingVerdict::Undecided;
    report.notes.push_back("undecided at configured bound " + std::to_string(report.search_bound));
    return report;
  }
  report.unique = false;
  return finish(phi_at(*first), lattice);
}

std::vector<std::string> verify_geometric_pullback(const ToricMorphism& f, const DivisorSubgroup& target_subgroup,
                                                   const DivisorSubgroup& source_subgroup, const IntMatrix& phi,
                                                   const HilbertBasisLimits& limits) {
  std::vector<std::string> failures;
  const Fan& tgt = f.target();
  const Fan& src = f.source();
  if (phi.rows() != target_subgroup.rank() || phi.cols() != src.num_rays()) {
    failures.push_back("φ has the wrong shape");
    return failures;
  }
  const IntMatrix cartier = cartier_lattice(tgt, target_subgroup.basis());
  for (std::size_t i = 0; i < cartier.rows(); ++i) {
    const TDivisor d{cartier.row(i)};
    if (*target_subgroup.coordinates(d) * phi != pullback_cartier(f, d).coefficients)
      failures.push_back("φ differs from the Cartier pullback on " + to_string(d.coefficients));
  }
  std::vector<Cone> image_cones;
  for (const auto& v : src.rays()) {
    auto tau = minimal_cone_containing(tgt, f.matrix() * v);
    image_cones.push_back(tau ? *tau : Cone{});
  }
  for (const auto& e : effective_generators(target_subgroup, limits)) {
    const IntVector image = *target_subgroup.coordinates(e) * phi;
    if (!is_nonnegative(image))
      failures.push_back("φ(" + to_string(e.coefficients) + ") = " + to_string(image) + " is not effective");
    for (std::size_t rho = 0; rho < src.num_rays(); ++rho)
      if (image[rho] != 0 && !meets(image_cones[rho], e.coefficients))
        failures.push_back("support of φ(" + to_string(e.coefficients) + ") at " + to_string(src.ray(rho)) +
                           " maps outside the support");
  }
  for (std::size_t j = 0; j < phi.rows(); ++j)
    if (!lattice_contains(source_subgroup.basis(), phi.row(j)))
      failures.push_back("φ(B_" + std::to_string(j) + ") is not in the source subgroup");
  return failures;
}

std::vector<std::string> classify_liftings(const ToricMorphism& f, const LiftingReport& report) {
  std::vector<std::string> lines;
  const Fan& tgt = f.target();
  const Fan& src = f.source();
  if (report.verdict == LiftingVerdict::DoesNotExist) {
    lines.push_back("no lifting; obstruction: " +
                    (report.obstructions.empty() ? std::string("unknown") : report.obstructions.front().message));
    for (std::size_t i = 1; i < report.obstructions.size(); ++i)
      lines.push_back("also: " + report.obstructions[i].message);
    return lines;
  }
  if (report.verdict == LiftingVerdict::Undecided) {
    lines.push_back("undecided at configured bound " + std::to_string(report.search_bound));
    return lines;
  }
  const auto& w = *report.witness;
  for (std::size_t j = 0; j < w.phi.rows(); ++j) {
    std::string line = coordinate_label(tgt, report.target_basis, j) + " ↦ " + monomial(src, w.decomposition[j].divisor.coefficients);
    if (!is_zero(w.decomposition[j].character)) line += "·χ^" + to_string(w.decomposition[j].character);
    lines.push_back(line);
  }
  if (report.unique) {
    lines.push_back("unique up to the action of H = Hom(M̂/M, K*)");
  } else {
    lines.push_back(std::to_string(report.witness_classes.size()) + " witness classes within search bound " +
                    std::to_string(report.search_bound) + (report.search_truncated ? " (enumeration truncated)" : "") +
                    "; each is unique up to the action of H");
    for (std::size_t i = 0; i < report.witness_classes.size(); ++i)
      lines.push_back("class " + std::to_string(i) + ": φ = " + report.witness_classes[i].to_string());
  }
  return lines;
}

}  // namespace toriclift
