/**
 * @file  multisym.hpp
 * @brief Multisymplectic Hamiltonian and Lagrangian field theory on the
 *        extended multimomentum frame and its quotients: Hamilton–Cartan and
 *        Poincaré–Cartan forms, De Donder–Weyl field equations in both the
 *        jet and component alphabets, and the extended/restricted Legendre
 *        maps.
 *
 * The Hamiltonian data is a function 𝓗 on the (t, q, p) frame; the
 * associated Hamiltonian section of the affine quotient is the global graph
 * p = −𝓗, which is legitimate because every bundle here is trivial.
 */
#pragma once

#include "geofield/forms.hpp"
#include "geofield/hamiltonian.hpp"

#include <vector>

namespace geofield {

/// Hamilton–Cartan forms pulled back along the Hamiltonian section
/// h : (t, q, p) ↦ (t, q, p, p = −𝓗).
struct HamiltonCartanForms {
  FrameRef frame;      ///< extended phase frame (t, q, p)
  SmoothMap section;   ///< h into the extended multimomentum frame
  DifferentialForm theta;  ///< Θ_h = pᴬᵢ dqⁱ∧dᵏ⁻¹t_A − 𝓗 dᵏt (a k-form)
  DifferentialForm omega;  ///< Ω_h = −dΘ_h (a (k+1)-form)
};

/// Requires the multisymplectic-hamiltonian variant. The returned forms are
/// computed as pullbacks of the canonical multimomentum forms and checked
/// against the closed-coordinate expressions; a mismatch throws Error.
HamiltonCartanForms hamilton_cartan_forms(const FieldTheory& sys);

/// Poincaré–Cartan forms of a Lagrangian on the extended velocity frame.
struct PoincareCartanForms {
  FrameRef frame;      ///< extended velocity frame (t, q, v)
  Expr energy;         ///< E_L = Δ(L) − L
  DifferentialForm theta;  ///< Θ_L = (∂L/∂vᴬᵢ) dqⁱ∧dᵏ⁻¹t_A − E_L dᵏt
  DifferentialForm omega;  ///< Ω_L = −dΘ_L
};

/// Requires the multisymplectic-lagrangian variant.
PoincareCartanForms poincare_cartan_forms(const FieldTheory& sys);

/// De Donder–Weyl equations of 𝓗 in the jet alphabet. Under the frame
/// identification with the k-cosymplectic side these are the same residuals,
/// and the implementation realizes that identification literally.
EquationSet ms_hdw_equations(const FieldTheory& sys);

/// Substitutes a symbolic section into ms_hdw_equations and reports each row.
SectionReport ms_section_residual(const FieldTheory& sys, const SymbolicSection& s);

/// Component-alphabet equations for an unknown k-vector field X̄ on the
/// extended phase frame: the base block (X̄_A)ᴮ = δᴮ_A, then one row per
/// dqⁱ / dpᴬᵢ coefficient of the full contraction i(X̄)Ω_h evaluated on that
/// base block. The omitted dtᴮ coefficients are component-weighted
/// combinations of the emitted rows, so the solution set is unchanged; tests
/// assert the full contraction vanishes on solutions.
EquationSet ms_hamiltonian_kvector_equations(const FieldTheory& sys);

/// Lagrangian analogue on the extended velocity frame, from i(Γ̄)Ω_L.
EquationSet ms_lagrangian_kvector_equations(const FieldTheory& sys);

/// Full contraction i(X̄)Ω (a 1-form, no rows dropped) of a candidate
/// k-vector field into Ω_h or Ω_L according to the variant.
DifferentialForm ms_contraction_residual(const FieldTheory& sys, const KVectorField& x);

/// Extended and restricted Legendre maps of a Lagrangian: the extended map
/// targets the multimomentum frame with pᴬᵢ = ∂L/∂vᴬᵢ and affine coordinate
/// p = L − vᴬᵢ ∂L/∂vᴬᵢ = −E_L; the restricted map drops the affine part.
struct MsLegendre {
  SmoothMap extended;    ///< into the multimomentum frame
  SmoothMap restricted;  ///< into the extended phase frame
};

MsLegendre extended_restricted_legendre(const FieldTheory& sys);

}  // namespace geofield
