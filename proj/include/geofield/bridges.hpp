/**
 * @file  bridges.hpp
 * @brief Conversions and equivalence certificates between the three
 *        formalisms: autonomization and suspension, the canonical maps
 *        between the phase-space frames, the interior-product extraction and
 *        reconstruction formulas tying the multimomentum forms to the
 *        k-symplectic and k-cosymplectic structures, and exact certification
 *        that two residual equation sets generate each other.
 *
 * All extraction formulas contract the base directions T = (∂/∂t¹,…,∂/∂tᵏ)
 * into a wedge with dtᴬ and pull the result back along the appropriate
 * canonical embedding; the reconstruction formulas reassemble the
 * higher-degree forms from the extracted family. Round-tripping either way
 * is a symbolic identity on the canonical structures.
 */
#pragma once

#include "geofield/forms.hpp"
#include "geofield/hamiltonian.hpp"

#include <string>
#include <vector>

namespace geofield {

/// Thrown by deautonomize when the generator depends on a base coordinate.
class NotAutonomous : public Error {
 public:
  using Error::Error;
};

/// Transports a k-symplectic Hamiltonian system to the extended phase frame
/// (the generator is reused verbatim; only the variant and frame change).
FieldTheory autonomize(const FieldTheory& sys);

/// Inverse of autonomize; requires ∂𝓗/∂tᴬ = 0 for every A and throws
/// NotAutonomous listing the offending derivatives otherwise.
FieldTheory deautonomize(const FieldTheory& sys);

/// Suspension of a k-vector field on the phase (or velocity) frame:
/// X̄_A = ∂/∂tᴬ + (same components) on the extended frame.
KVectorField suspend(const KVectorField& x);

/// Partial inverse of suspend. Requires the base block to be exactly δᴮ_A
/// and every other component to be independent of t¹..tᵏ (a sufficient
/// projectability condition, not a necessary one); throws VariantError
/// naming the first violation.
KVectorField deproject(const KVectorField& x);

/// The splitting of the extended multimomentum space as ℝᵏ×ℝ×(T¹ₖ)*Q, which
/// in the trivial-bundle coordinates is the identity, together with its
/// inverse.
struct SplitMaps {
  SmoothMap psi;
  SmoothMap psi_inverse;
};
SplitMaps split_multimomentum(int k, int n);

/// ȷ : (T¹ₖ)*Q ↪ 𝓜π, the zero section (tᴬ = 0, affine p = 0).
SmoothMap zero_section_embedding(int k, int n);
/// σ₂ : 𝓜π → (T¹ₖ)*Q, forgetting tᴬ and the affine coordinate.
SmoothMap momentum_submersion(int k, int n);
/// 𝔦 : ℝᵏ×(T¹ₖ)*Q ↪ 𝓜π, the affine zero section (p = 0).
SmoothMap extended_phase_embedding(int k, int n);
/// μ = σ̄₂ : 𝓜π → ℝᵏ×(T¹ₖ)*Q, forgetting the affine coordinate.
SmoothMap affine_quotient(int k, int n);
/// ȷ₀ : ℝᵏ×(T¹ₖ)*Q ↪ 𝓜π with p = 1 and every momentum set to zero.
SmoothMap unit_section_embedding(int k, int n);

/// θᴬ = −ȷ*[i(∂/∂tᵏ)…i(∂/∂t¹)(Θ∧dtᴬ)], ωᴬ = (−1)ᵏ⁺¹ ȷ*[…(Ω∧dtᴬ)]:
/// the canonical k-symplectic family recovered from multimomentum forms.
struct KSymplecticExtraction {
  std::vector<DifferentialForm> theta;
  std::vector<DifferentialForm> omega;
};
KSymplecticExtraction extract_ksymplectic(const DifferentialForm& big_theta,
                                          const DifferentialForm& big_omega);

/// A (Θ, Ω) pair on the frame the reconstruction targets.
struct MsForms {
  DifferentialForm theta;
  DifferentialForm omega;
};

/// Θ = p dᵏt + σ₂*θᴬ∧dᵏ⁻¹t_A and Ω = −dp∧dᵏt + σ₂*ωᴬ∧dᵏ⁻¹t_A on the
/// multimomentum frame; throws Error if the pair fails Ω = −dΘ.
MsForms rebuild_ms_from_ksymplectic(const std::vector<DifferentialForm>& theta,
                                    const std::vector<DifferentialForm>& omega);

/// The k-cosymplectic family on the extended phase frame recovered from the
/// multimomentum forms: Θᴬ/Ωᴬ through 𝔦, and ηᴬ computed two independent
/// ways (an Ω-contraction through 𝔦 and a Θ-contraction through ȷ₀), both
/// returned so callers can assert their agreement.
struct KCosymplecticExtraction {
  std::vector<DifferentialForm> eta;      ///< from Ω with the ∂/∂p slot
  std::vector<DifferentialForm> eta_alt;  ///< from Θ through ȷ₀
  std::vector<DifferentialForm> theta;
  std::vector<DifferentialForm> omega;
};
KCosymplecticExtraction extract_kcosymplectic(const DifferentialForm& big_theta,
                                              const DifferentialForm& big_omega);

/// Θ = p dᵏt + σ̄₂*Θᴬ∧dᵏ⁻¹t_A with the volume rebuilt from the pulled-back
/// ηᴬ, and Ω likewise from Ωᴬ; throws Error if the pair fails Ω = −dΘ.
MsForms rebuild_ms_from_kcosymplectic(const std::vector<DifferentialForm>& eta,
                                      const std::vector<DifferentialForm>& theta,
                                      const std::vector<DifferentialForm>& omega);

/// The same contraction formulas applied to Hamilton–Cartan (or
/// Poincaré–Cartan) forms, which already live on the target frame: no
/// pullback is involved.
struct CosymFamily {
  std::vector<DifferentialForm> theta;
  std::vector<DifferentialForm> omega;
};
CosymFamily extract_cosym_from_hamcartan(const DifferentialForm& theta_h,
                                         const DifferentialForm& omega_h);

/// Θ_h = −𝓗 dᵏt + Θᴬ∧dᵏ⁻¹t_A and Ω_h = d𝓗∧dᵏt + Ωᴬ∧dᵏ⁻¹t_A.
MsForms rebuild_hamcartan_from_cosym(const Expr& h, const std::vector<DifferentialForm>& theta,
                                     const std::vector<DifferentialForm>& omega);

CosymFamily extract_cosym_from_poincare(const DifferentialForm& theta_l,
                                        const DifferentialForm& omega_l);

/// Θ_L = −E_L dᵏt + Θ_Lᴬ∧dᵏ⁻¹t_A and Ω_L = dE_L∧dᵏt + Ω_Lᴬ∧dᵏ⁻¹t_A.
MsForms rebuild_poincare_from_cosym(const Expr& energy, const std::vector<DifferentialForm>& theta,
                                    const std::vector<DifferentialForm>& omega);

/// Result of certifying that two residual sets generate each other by exact
/// linear combination over coefficient expressions.
struct EquivalenceCertificate {
  bool equivalent = false;
  /// True when any zero decision fell back to random evaluation.
  bool probabilistic = false;
  /// Label of the first residual that fails to reduce (empty when equivalent).
  std::string witness_label;
  /// Its irreducible remainder (zero when equivalent).
  Expr witness;
  /// Human-readable direction of the failure (empty when equivalent).
  std::string detail;
};

/// Decomposes every residual over the union unknown alphabet as a vector of
/// coefficient expressions indexed by unknown monomials (degree ≤ 4), then
/// checks mutual containment of the two row spaces by Gaussian elimination
/// over the expression field. Throws VariantError when the sets use
/// different alphabets, and Error when a residual is not polynomial of
/// degree ≤ 4 in its unknowns.
EquivalenceCertificate certify_equation_equivalence(const EquationSet& e1, const EquationSet& e2);

}  // namespace geofield
