/**
 * @file  hamiltonian.hpp
 * @brief Field theories and their Hamiltonian field equations: the
 *        Hamilton–De Donder–Weyl system in jet symbols, the geometric
 *        k-vector-field equation, gauge-fixed solutions, and symbolic
 *        verification of candidate sections.
 */
#pragma once

#include "geofield/canonical.hpp"

#include <map>
#include <string>
#include <vector>

namespace geofield {

/// Wrong-variant and related usage errors.
class VariantError : public Error {
 public:
  using Error::Error;
};

/// The six formalism variants.
enum class Variant { KSymHam, KCosymHam, KSymLag, KCosymLag, MsHamSection, MsLag };

/// Serialized formalism tag, e.g. "k-symplectic-hamiltonian".
std::string to_string(Variant v);
/// Parse a formalism tag; throws VariantError on unknown tags.
Variant variant_from_tag(const std::string& tag);

bool is_hamiltonian(Variant v);
bool is_lagrangian(Variant v);

/// The frame each variant's generating function lives on.
FrameRef frame_for_variant(Variant v, int k, int n);

/// A field theory: a variant tag plus its generating function (H, 𝓗, L or 𝓛)
/// over the variant's frame.
struct FieldTheory {
  Variant variant{};
  int k = 0;
  int n = 0;
  Expr generator;
  FrameRef frame;
};

/// Validates k,n >= 1 and that the generator's free variables are frame
/// coordinates; throws VariantError naming the offending variable.
FieldTheory make_field_theory(Variant v, int k, int n, const Expr& generator);

/// True when the generator does not depend on the base coordinates.
bool is_autonomous(const FieldTheory& sys);

/// ---- Augmented symbol alphabets -----------------------------------------
/// Jet symbols name first derivatives of a section's components along the
/// base: "d<coord>_dt<B>" (e.g. dq1_dt2 for ∂ψ¹/∂t², dp1_1_dt2). Second
/// derivatives of configuration components are "d2q<i>_dt<A>dt<B>" with
/// A <= B. Component symbols name k-vector-field components: "X<A>_<coord>".
std::string jet_symbol(const std::string& coord, int b);
std::string second_jet_symbol(int i, int a, int b);
std::string component_symbol(int a, const std::string& coord);

enum class Alphabet { Jet, Component };
std::string to_string(Alphabet a);

struct Equation {
  std::string label;
  Expr residual;  // the equation is residual = 0
};

/// A system of residual equations over one unknown alphabet.
struct EquationSet {
  Alphabet alphabet{};
  int k = 0;
  int n = 0;
  FrameRef frame;
  std::vector<Equation> equations;
  std::vector<std::string> unknowns;
  int rank = -1;            ///< independent constraints (generic symbolic rank)
  int free_functions = -1;  ///< unknowns minus rank
  std::string str() const;  ///< deterministic multi-line rendering
};

/// A symbolic section of the trivial bundle over R^k: one expression in
/// t1..tk per non-base target coordinate.
struct SymbolicSection {
  int k = 0;
  std::map<std::string, Expr> values;
};

/// Validates that every value depends only on t1..tk.
SymbolicSection make_section(int k, std::map<std::string, Expr> values);

/// Substitution induced by a section: coordinate values, their first jets,
/// and second jets of configuration coordinates.
std::map<std::string, Expr> section_substitution(const FrameRef& frame, const SymbolicSection& s);

/// Result of contracting a candidate k-vector field into the field equation:
/// a residual 1-form plus (k-cosymplectic only) the scalar residuals
/// eta^A(X_B) - delta^A_B.
struct GeometricResidual {
  DifferentialForm one_form;
  std::vector<Equation> scalar_residuals;
  bool is_symbolically_zero() const;
};

/// Hamilton–De Donder–Weyl equations in the jet alphabet, n(k+1) residuals:
/// label "q<i>":  dH/dq_i + sum_A dp<A>_<i>_dt<A>
/// label "p<A>_<i>":  dH/dp^A_i - dq<i>_dt<A>
EquationSet hdw_equations(const FieldTheory& sys);

///// Residual of the k-vector-field equation for a candidate X:
/// k-symplectic    sum_A i(X_A) omega^A - dH
/// k-cosymplectic  sum_A i(X_A) Omega^A - dH + sum_A (dH/dt^A) dt^A,
///                 plus scalars eta^A(X_B) - delta^A_B.
GeometricResidual geometric_residual(const FieldTheory& sys, const KVectorField& x);

/// The component-alphabet linear system obtained by treating every component
/// of X as an unknown symbol; rank/free_functions metadata is filled in
/// (free count n(k^2-1) for both Hamiltonian variants).
EquationSet kvector_equations(const FieldTheory& sys);

/// Gauge choices for picking one solution of the underdetermined system.
enum class Gauge { DiagonalSplit };

///// A particular solution: (X_A)^i = dH/dp^A_i, (X_A)^B_i = -d^B_A (1/k) dH/dq^i,
/// and (k-cosymplectic) (X_A)^B = d^B_A. Its geometric residual vanishes
/// symbolically.
KVectorField solve_kvector(const FieldTheory& sys, Gauge gauge = Gauge::DiagonalSplit);

struct ReportRow {
  std::string label;
  Expr residual;
  Verdict verdict{};
};

/// Verification report for a candidate section.
struct SectionReport {
  std::vector<ReportRow> rows;
  bool pass = false;
  std::string assumption;  ///< documented admissibility assumption
};

/// Substitutes the section and its derivatives into hdw_equations and checks
/// each residual for zero.
SectionReport verify_section(const FieldTheory& sys, const SymbolicSection& s);

/// ---- Shared helpers for the Lagrangian and multisymplectic modules -------

/// A k-vector field whose components are fresh unknown symbols; base-direction
/// components are either unknowns too, or pinned to delta^B_A.
KVectorField unknown_kvector(const FrameRef& frame, bool base_components_are_delta);

/// The component-symbol alphabet in deterministic order (A-major, frame order).
std::vector<std::string> component_unknowns(const FrameRef& frame, bool include_base);

/// Assemble an EquationSet from a geometric residual: scalar rows first, then
/// one row per nonzero covector coefficient (negated, so rows read like the
/// classical displays); fills rank and free_functions over the unknowns.
EquationSet equations_from_geometric_residual(const FieldTheory& sys, const GeometricResidual& r,
                                              std::vector<std::string> unknowns);

}  // namespace geofield
