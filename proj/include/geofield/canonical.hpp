/**
 * @file  canonical.hpp
 * @brief Canonical geometric structures on the standard frames, in Darboux
 *        coordinates: k-symplectic and k-cosymplectic families, the
 *        multisymplectic form on the extended multimomentum frame, the
 *        k-tangent structure, the Liouville field, and volume forms.
 *
 * All constructors produce exact coordinate expressions; invariant checks
 * are available as named pass/fail lists so callers can re-verify the
 * defining relations of each structure.
 */
#pragma once

#include "geofield/forms.hpp"

#include <string>
#include <utility>
#include <vector>

namespace geofield {

/// Canonical k-symplectic structure on the phase frame (q, p).
struct KSymplecticStructure {
  FrameRef frame;
  std::vector<DifferentialForm> theta;  ///< potentials θᴬ = pᴬᵢ dqⁱ, A = 1..k
  std::vector<DifferentialForm> omega;  ///< ωᴬ = dqⁱ ∧ dpᴬᵢ = −dθᴬ
  std::vector<VectorField> vertical;    ///< spanning fields of V = span{∂/∂pᴬᵢ}
};

/// Canonical k-cosymplectic structure on the extended phase frame (t, q, p).
struct KCosymplecticStructure {
  FrameRef frame;
  std::vector<DifferentialForm> eta;    ///< ηᴬ = dtᴬ
  std::vector<DifferentialForm> theta;  ///< potentials Θᴬ = pᴬᵢ dqⁱ
  std::vector<DifferentialForm> omega;  ///< Ωᴬ = dqⁱ ∧ dpᴬᵢ = −dΘᴬ
  std::vector<VectorField> reeb;        ///< Reeb fields R_A = ∂/∂tᴬ
  std::vector<VectorField> vertical;    ///< spanning fields of 𝒱 = span{∂/∂pᴬᵢ}
};

/// Canonical multisymplectic structure on the extended multimomentum frame
/// (t, q, p^A_i, p).
struct MultisymplecticStructure {
  FrameRef frame;
  DifferentialForm theta;  ///< tautological k-form Θ = pᴬᵢ dqⁱ∧dᵏ⁻¹t_A + p dᵏt
  DifferentialForm omega;  ///< Ω = −dΘ, a (k+1)-form
};

KSymplecticStructure canonical_ksymplectic(int k, int n);
KCosymplecticStructure canonical_kcosymplectic(int k, int n);
MultisymplecticStructure canonical_multisymplectic(int k, int n);

/// The k-tangent structure S¹..Sᵏ, Sᴬ = ∂/∂vᴬᵢ ⊗ dqⁱ. The frame must carry
/// velocity coordinates for the given (k, n); the same local expressions
/// serve both the velocity frame and the extended velocity frame.
std::vector<OneOneTensor> k_tangent_structure(int k, int n, const FrameRef& frame);

/// The Liouville (canonical dilation) field Δ = vᴬᵢ ∂/∂vᴬᵢ on a frame with
/// velocity coordinates.
VectorField liouville_field(const FrameRef& frame);

/// Volume form dᵏt on the base frame of dimension k.
DifferentialForm volume_form(int k);

/// Volume form dt¹∧…∧dtᵏ expressed on any frame carrying base coordinates.
DifferentialForm volume_form(const FrameRef& frame);

/// dᵏ⁻¹t_A := i(∂/∂tᴬ) dᵏt on a frame carrying base coordinates (A is
/// 1-based). This pins the orientation signs used throughout.
DifferentialForm dk1t(const FrameRef& frame, int a);

/// Named invariant checks: (label, holds). Constant-coefficient relations
/// are exact; nondegeneracy claims are rank tests at random sample points.
std::vector<std::pair<std::string, bool>> check_invariants(const KSymplecticStructure& s);
std::vector<std::pair<std::string, bool>> check_invariants(const KCosymplecticStructure& s);
std::vector<std::pair<std::string, bool>> check_invariants(const MultisymplecticStructure& s);

}  // namespace geofield
