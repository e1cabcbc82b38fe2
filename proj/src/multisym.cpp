#include "geofield/multisym.hpp"

#include "geofield/canonical.hpp"
#include "geofield/lagrangian.hpp"
#include "geofield/linalg.hpp"

#include <utility>

namespace geofield {

namespace {

void require_variant(const FieldTheory& sys, Variant v, const char* op) {
  if (sys.variant != v)
    throw VariantError(std::string(op) + " requires " + to_string(v) + " (got " +
                       to_string(sys.variant) + ")");
}

/// Twin system on the same frame whose generator is reused by the
/// k-cosymplectic machinery (the frames are literally identical).
FieldTheory cosym_twin(const FieldTheory& sys) {
  Variant v = sys.variant == Variant::MsHamSection ? Variant::KCosymHam : Variant::KCosymLag;
  return make_field_theory(v, sys.k, sys.n, sys.generator);
}

/// Jacobian rank of residuals with respect to the unknown symbols.
void fill_rank(EquationSet& set) {
  ExprMatrix jac;
  jac.reserve(set.equations.size());
  for (const Equation& eq : set.equations) {
    std::vector<Expr> row;
    row.reserve(set.unknowns.size());
    for (const std::string& u : set.unknowns) row.push_back(diff(eq.residual, u));
    jac.push_back(std::move(row));
  }
  set.rank = symbolic_rank(jac);
  set.free_functions = static_cast<int>(set.unknowns.size()) - set.rank;
}

/// Shared assembly for both component-alphabet systems: base block rows
/// (X̄_A)ᴮ − δᴮ_A, then the dqⁱ / dpᴬᵢ (or dvᴬᵢ) coefficient rows of the
/// contraction, oriented so they render like the classical displays.
EquationSet component_equations(const FieldTheory& sys, const DifferentialForm& omega) {
  const FrameRef& frame = sys.frame;
  EquationSet set;
  set.alphabet = Alphabet::Component;
  set.k = sys.k;
  set.n = sys.n;
  set.frame = frame;
  set.unknowns = component_unknowns(frame, /*include_base=*/true);

  for (int a = 1; a <= sys.k; ++a)
    for (int b = 1; b <= sys.k; ++b) {
      std::string name = component_symbol(a, base_name(b));
      Expr residual = Expr::variable(name) - Expr::integer(a == b ? 1 : 0);
      set.equations.push_back({name, std::move(residual)});
    }

  KVectorField x = unknown_kvector(frame, /*base_components_are_delta=*/true);
  DifferentialForm c = contract_k(x, omega);
  // Moving the free covector slot of Ω past the k contracted arguments flips
  // the orientation for odd k.
  Expr sign = Expr::integer(sys.k % 2 == 0 ? 1 : -1);
  for (int idx = 0; idx < frame->dim(); ++idx) {
    const Coordinate& coord = frame->coord(idx);
    if (coord.role == Role::Base) continue;
    Expr coeff = c.coefficient(std::vector<int>{idx});
    if (coeff.is_zero()) continue;
    set.equations.push_back({"d" + coord.name, sign * coeff});
  }
  fill_rank(set);
  return set;
}

}  // namespace

HamiltonCartanForms hamilton_cartan_forms(const FieldTheory& sys) {
  require_variant(sys, Variant::MsHamSection, "hamilton_cartan_forms");
  const FrameRef& frame = sys.frame;
  MultisymplecticStructure ms = canonical_multisymplectic(sys.k, sys.n);

  std::vector<Expr> target;
  target.reserve(static_cast<std::size_t>(ms.frame->dim()));
  for (int idx = 0; idx < ms.frame->dim(); ++idx) {
    const Coordinate& coord = ms.frame->coord(idx);
    if (coord.role == Role::Affine)
      target.push_back(-sys.generator);
    else
      target.push_back(Expr::variable(coord.name));
  }
  SmoothMap h(frame, ms.frame, std::move(target));

  DifferentialForm theta = pullback(h, ms.theta);

  DifferentialForm direct = volume_form(frame).scaled(-sys.generator);
  for (int a = 1; a <= sys.k; ++a)
    for (int i = 1; i <= sys.n; ++i) {
      DifferentialForm dq = DifferentialForm::basis_one_form(frame, config_name(i));
      direct = direct + wedge(dq, dk1t(frame, a))
                            .scaled(Expr::variable(momentum_name(a, i)));
    }
  if (!identical(theta, direct))
    throw Error("hamilton_cartan_forms: pullback and coordinate constructions disagree");

  DifferentialForm omega = -d(theta);
  return HamiltonCartanForms{frame, std::move(h), std::move(theta), std::move(omega)};
}

PoincareCartanForms poincare_cartan_forms(const FieldTheory& sys) {
  require_variant(sys, Variant::MsLag, "poincare_cartan_forms");
  const FrameRef& frame = sys.frame;
  Expr e = energy(cosym_twin(sys));

  DifferentialForm theta = volume_form(frame).scaled(-e);
  for (int a = 1; a <= sys.k; ++a)
    for (int i = 1; i <= sys.n; ++i) {
      DifferentialForm dq = DifferentialForm::basis_one_form(frame, config_name(i));
      theta = theta + wedge(dq, dk1t(frame, a))
                          .scaled(diff(sys.generator, velocity_name(a, i)));
    }
  DifferentialForm omega = -d(theta);
  return PoincareCartanForms{frame, std::move(e), std::move(theta), std::move(omega)};
}

EquationSet ms_hdw_equations(const FieldTheory& sys) {
  require_variant(sys, Variant::MsHamSection, "ms_hdw_equations");
  return hdw_equations(cosym_twin(sys));
}

SectionReport ms_section_residual(const FieldTheory& sys, const SymbolicSection& s) {
  require_variant(sys, Variant::MsHamSection, "ms_section_residual");
  return verify_section(cosym_twin(sys), s);
}

EquationSet ms_hamiltonian_kvector_equations(const FieldTheory& sys) {
  require_variant(sys, Variant::MsHamSection, "ms_hamiltonian_kvector_equations");
  return component_equations(sys, hamilton_cartan_forms(sys).omega);
}

EquationSet ms_lagrangian_kvector_equations(const FieldTheory& sys) {
  require_variant(sys, Variant::MsLag, "ms_lagrangian_kvector_equations");
  return component_equations(sys, poincare_cartan_forms(sys).omega);
}

DifferentialForm ms_contraction_residual(const FieldTheory& sys, const KVectorField& x) {
  if (sys.variant == Variant::MsHamSection) return contract_k(x, hamilton_cartan_forms(sys).omega);
  if (sys.variant == Variant::MsLag) return contract_k(x, poincare_cartan_forms(sys).omega);
  throw VariantError("ms_contraction_residual requires a multisymplectic variant (got " +
                     to_string(sys.variant) + ")");
}

MsLegendre extended_restricted_legendre(const FieldTheory& sys) {
  require_variant(sys, Variant::MsLag, "extended_restricted_legendre");
  const FrameRef& source = sys.frame;
  FrameRef mm = multimomentum_frame(sys.k, sys.n);
  FrameRef reduced = extended_phase_frame(sys.k, sys.n);
  Expr e = energy(cosym_twin(sys));

  auto momentum_expr = [&](const Coordinate& coord) -> Expr {
    switch (coord.role) {
      case Role::Momentum:
        return diff(sys.generator, velocity_name(coord.a, coord.i));
      case Role::Affine:
        return -e;
      default:
        return Expr::variable(coord.name);
    }
  };

  std::vector<Expr> ext, res;
  for (int idx = 0; idx < mm->dim(); ++idx) ext.push_back(momentum_expr(mm->coord(idx)));
  for (int idx = 0; idx < reduced->dim(); ++idx) res.push_back(momentum_expr(reduced->coord(idx)));
  return MsLegendre{SmoothMap(source, std::move(mm), std::move(ext)),
                    SmoothMap(source, std::move(reduced), std::move(res))};
}

}  // namespace geofield
