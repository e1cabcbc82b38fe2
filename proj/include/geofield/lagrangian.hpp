/**
 * @file  lagrangian.hpp
 * @brief Lagrangian side of the k-symplectic and k-cosymplectic formalisms:
 *        Lagrangian forms through the k-tangent structure, energy, Legendre
 *        maps and regularity, Euler–Lagrange assembly, the Lagrangian
 *        k-vector-field equation, SOPDE analysis, holonomic prolongation.
 */
#pragma once

#include "geofield/hamiltonian.hpp"
#include "geofield/linalg.hpp"

namespace geofield {

/// Lagrangian 1-/2-form families θ_L^A (Θ_L^A) and ω_L^A (Ω_L^A).
struct LagrangianForms {
  FrameRef frame;
  std::vector<DifferentialForm> theta;  ///< θ_L^A = dL ∘ S^A
  std::vector<DifferentialForm> omega;  ///< ω_L^A = −dθ_L^A
};

/// Regularity analysis of the velocity Hessian ∂²L/∂v^A_i ∂v^B_j.
struct RegularityReport {
  ExprMatrix hessian;    ///< (kn)×(kn) symmetric matrix, rows/cols (A,i) flat
  bool has_determinant = false;
  Expr determinant;      ///< symbolic determinant, filled when kn <= 6
  int rank = 0;          ///< symbolic rank
  bool regular = false;  ///< numeric nonsingularity at 20 random sample points
  bool sopde_forced = false;          ///< rank == kn
  std::vector<std::string> not_forced;  ///< velocity names spanning a Hessian
                                        ///< kernel direction when singular
};

/// θ_L^A = apply_tensor(S^A, dL) and ω_L^A = −dθ_L^A (identical shape for the
/// k-cosymplectic Θ_L^A, Ω_L^A, whose expansion picks up dq^i∧dt^B terms).
LagrangianForms lagrangian_forms(const FieldTheory& sys);

/// E_L = Δ(L) − L with the Liouville field Δ.
Expr energy(const FieldTheory& sys);

/// Legendre map: q^i (and t^A) map identically, p^A_i = ∂L/∂v^A_i.
SmoothMap legendre(const FieldTheory& sys);

/// Inverse Legendre map for Lagrangians whose momentum relations are linear
/// in the velocities (solved exactly); throws VariantError otherwise.
SmoothMap legendre_inverse(const FieldTheory& sys);

RegularityReport regularity(const FieldTheory& sys);

/// Euler–Lagrange equations over configuration jets: one residual per i,
///   sum_A D_A(∂L/∂v^A_i) − ∂L/∂q^i
/// with D_A the total derivative and velocities replaced by first jets.
EquationSet euler_lagrange_equations(const FieldTheory& sys);

/// Residual of the Lagrangian k-vector-field equation for a candidate Γ:
/// k-symplectic    sum_A i(Γ_A) ω_L^A − dE_L
/// k-cosymplectic  sum_A i(Γ_A) Ω_L^A − dE_L − sum_A (∂L/∂t^A) dt^A,
///                 plus scalars η^A(Γ_B) − δ^A_B.
GeometricResidual lagrangian_geometric_residual(const FieldTheory& sys, const KVectorField& g);

/// Component-alphabet equation set for an unknown Γ (linear system).
EquationSet lagrangian_kvector_equations(const FieldTheory& sys);

/// Gauge-fixed solution for regular Lagrangians: (Γ_A)^i = v^A_i, the
/// velocity components solve the Hessian system that splits the
/// Euler–Lagrange right-hand side evenly across A (and (Γ_A)^B = δ^B_A in the
/// k-cosymplectic case). Throws VariantError when the Hessian is singular.
KVectorField solve_lagrangian_kvector(const FieldTheory& sys, Gauge gauge = Gauge::DiagonalSplit);

/// SOPDE check: (Γ_A)^i − v^A_i = 0 for all A,i (plus (Γ_A)^B − δ^B_A = 0 in
/// the k-cosymplectic case), reported row by row.
SectionReport sopde_check(const FieldTheory& sys, const KVectorField& g);

/// Holonomic prolongation of a configuration section: adds v^A_i = ∂φ^i/∂t^A.
SymbolicSection prolong(const FieldTheory& sys, const SymbolicSection& phi);

/// Verification of a configuration section against the Euler–Lagrange
/// equations (substitutes the section's jets and checks each residual).
SectionReport verify_euler_lagrange(const FieldTheory& sys, const SymbolicSection& phi);

}  // namespace geofield
