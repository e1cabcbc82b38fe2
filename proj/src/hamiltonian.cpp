/**
 * @file  hamiltonian.cpp
 * @brief Hamiltonian field equations, gauge solutions, section verification.
 */
#include "geofield/hamiltonian.hpp"

#include "geofield/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace geofield {

namespace {

Expr var(const std::string& name) { return Expr::variable(name); }

void require(bool cond, const std::string& message) {
  if (!cond) throw VariantError(message);
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::KSymHam: return "k-symplectic-hamiltonian";
    case Variant::KCosymHam: return "k-cosymplectic-hamiltonian";
    case Variant::KSymLag: return "k-symplectic-lagrangian";
    case Variant::KCosymLag: return "k-cosymplectic-lagrangian";
    case Variant::MsHamSection: return "multisymplectic-hamiltonian";
    case Variant::MsLag: return "multisymplectic-lagrangian";
  }
  return "?";
}

Variant variant_from_tag(const std::string& tag) {
  for (Variant v : {Variant::KSymHam, Variant::KCosymHam, Variant::KSymLag, Variant::KCosymLag,
                    Variant::MsHamSection, Variant::MsLag}) {
    if (to_string(v) == tag) return v;
  }
  throw VariantError("unknown formalism tag: " + tag);
}

bool is_hamiltonian(Variant v) {
  return v == Variant::KSymHam || v == Variant::KCosymHam || v == Variant::MsHamSection;
}

bool is_lagrangian(Variant v) { return !is_hamiltonian(v); }

FrameRef frame_for_variant(Variant v, int k, int n) {
  switch (v) {
    case Variant::KSymHam: return phase_frame(k, n);
    case Variant::KCosymHam: return extended_phase_frame(k, n);
    case Variant::KSymLag: return velocity_frame(k, n);
    case Variant::KCosymLag: return extended_velocity_frame(k, n);
    case Variant::MsHamSection: return extended_phase_frame(k, n);
    case Variant::MsLag: return extended_velocity_frame(k, n);
  }
  throw VariantError("unknown variant");
}

FieldTheory make_field_theory(Variant v, int k, int n, const Expr& generator) {
  require(k >= 1 && n >= 1, "field theory requires k >= 1 and n >= 1");
  FieldTheory sys{v, k, n, generator, frame_for_variant(v, k, n)};
  for (const std::string& name : generator.free_variables()) {
    if (!sys.frame->has(name)) {
      throw VariantError(name + " not in " + to_string(v) + " frame (" + sys.frame->bundle() + ")");
    }
  }
  return sys;
}

bool is_autonomous(const FieldTheory& sys) {
  for (int a = 1; a <= sys.k; ++a) {
    if (sys.generator.depends_on(base_name(a))) return false;
  }
  return true;
}

std::string jet_symbol(const std::string& coord, int b) {
  return "d" + coord + "_dt" + std::to_string(b);
}

std::string second_jet_symbol(int i, int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  return "d2q" + std::to_string(i) + "_dt" + std::to_string(lo) + "dt" + std::to_string(hi);
}

std::string component_symbol(int a, const std::string& coord) {
  return "X" + std::to_string(a) + "_" + coord;
}

std::string to_string(Alphabet a) { return a == Alphabet::Jet ? "jet" : "component"; }

std::string EquationSet::str() const {
  std::ostringstream out;
  for (const auto& eq : equations) {
    out << eq.label << ": " << eq.residual.str() << " = 0\n";
  }
  return out.str();
}

SymbolicSection make_section(int k, std::map<std::string, Expr> values) {
  for (const auto& [name, value] : values) {
    for (const std::string& fv : value.free_variables()) {
      bool base = false;
      for (int a = 1; a <= k; ++a) base = base || fv == base_name(a);
      if (!base) {
        throw VariantError("section value for " + name + " depends on non-base variable " + fv);
      }
    }
  }
  return SymbolicSection{k, std::move(values)};
}

std::map<std::string, Expr> section_substitution(const FrameRef& frame, const SymbolicSection& s) {
  require(frame != nullptr && frame->k() == s.k, "section base dimension does not match frame");
  for (const auto& [name, value] : s.values) {
    const int idx = frame->index_of(name);
    if (idx < 0 || frame->coord(idx).role == Role::Base) {
      throw VariantError("section assigns " + name + ", which is not a fiber coordinate of " +
                         frame->bundle());
    }
  }
  std::map<std::string, Expr> subs;
  for (const auto& coord : frame->coords()) {
    if (coord.role == Role::Base) continue;
    auto it = s.values.find(coord.name);
    if (it == s.values.end()) throw VariantError("section is missing a value for " + coord.name);
    subs[coord.name] = it->second;
    for (int b = 1; b <= s.k; ++b) {
      subs[jet_symbol(coord.name, b)] = diff(it->second, base_name(b));
    }
    if (coord.role == Role::Config) {
      for (int a = 1; a <= s.k; ++a) {
        for (int b = a; b <= s.k; ++b) {
          subs[second_jet_symbol(coord.i, a, b)] =
              diff(diff(it->second, base_name(a)), base_name(b));
        }
      }
    }
  }
  return subs;
}

bool GeometricResidual::is_symbolically_zero() const {
  if (!one_form.is_zero()) return false;
  for (const auto& eq : scalar_residuals) {
    if (!eq.residual.is_zero()) return false;
  }
  return true;
}

EquationSet hdw_equations(const FieldTheory& sys) {
  require(sys.variant == Variant::KSymHam || sys.variant == Variant::KCosymHam,
          "hdw_equations requires a k-symplectic or k-cosymplectic Hamiltonian system");
  EquationSet set;
  set.alphabet = Alphabet::Jet;
  set.k = sys.k;
  set.n = sys.n;
  set.frame = sys.frame;
  for (int i = 1; i <= sys.n; ++i) {
    Expr residual = diff(sys.generator, config_name(i));
    for (int a = 1; a <= sys.k; ++a) {
      residual += var(jet_symbol(momentum_name(a, i), a));
    }
    set.equations.push_back({config_name(i), residual});
  }
  for (int a = 1; a <= sys.k; ++a) {
    for (int i = 1; i <= sys.n; ++i) {
      Expr residual = diff(sys.generator, momentum_name(a, i)) - var(jet_symbol(config_name(i), a));
      set.equations.push_back({momentum_name(a, i), residual});
    }
  }
  for (int i = 1; i <= sys.n; ++i) {
    for (int a = 1; a <= sys.k; ++a) set.unknowns.push_back(jet_symbol(config_name(i), a));
  }
  for (int a = 1; a <= sys.k; ++a) {
    for (int i = 1; i <= sys.n; ++i) {
      for (int b = 1; b <= sys.k; ++b) set.unknowns.push_back(jet_symbol(momentum_name(a, i), b));
    }
  }
  ExprMatrix jac;
  for (const auto& eq : set.equations) {
    std::vector<Expr> row;
    for (const auto& u : set.unknowns) row.push_back(diff(eq.residual, u));
    jac.push_back(std::move(row));
  }
  set.rank = symbolic_rank(jac);
  set.free_functions = static_cast<int>(set.unknowns.size()) - set.rank;
  return set;
}

GeometricResidual geometric_residual(const FieldTheory& sys, const KVectorField& x) {
  require(sys.variant == Variant::KSymHam || sys.variant == Variant::KCosymHam,
          "geometric_residual requires a k-symplectic or k-cosymplectic Hamiltonian system");
  if (!same_frame(x.frame(), sys.frame) || x.k() != sys.k) {
    throw FrameError("candidate k-vector field does not live on the system frame");
  }
  GeometricResidual r{DifferentialForm(sys.frame, 1), {}};
  if (sys.variant == Variant::KSymHam) {
    const KSymplecticStructure structure = canonical_ksymplectic(sys.k, sys.n);
    DifferentialForm acc = -d(DifferentialForm::scalar(sys.frame, sys.generator));
    for (int a = 1; a <= sys.k; ++a) {
      acc = acc + interior(x.factor(a), structure.omega[static_cast<std::size_t>(a - 1)]);
    }
    r.one_form = acc;
    return r;
  }
  const KCosymplecticStructure structure = canonical_kcosymplectic(sys.k, sys.n);
  DifferentialForm acc = -d(DifferentialForm::scalar(sys.frame, sys.generator));
  for (int a = 1; a <= sys.k; ++a) {
    acc = acc + interior(x.factor(a), structure.omega[static_cast<std::size_t>(a - 1)]);
    acc = acc + DifferentialForm::basis_one_form(sys.frame, base_name(a))
                    .scaled(diff(sys.generator, base_name(a)));
  }
  r.one_form = acc;
  for (int a = 1; a <= sys.k; ++a) {
    for (int b = 1; b <= sys.k; ++b) {
      const Expr delta = Expr::integer(a == b ? 1 : 0);
      r.scalar_residuals.push_back(
          {"eta" + std::to_string(a) + "(X" + std::to_string(b) + ")",
           pairing(structure.eta[static_cast<std::size_t>(a - 1)], x.factor(b)) - delta});
    }
  }
  return r;
}

KVectorField unknown_kvector(const FrameRef& frame, bool base_components_are_delta) {
  std::vector<VectorField> factors;
  for (int a = 1; a <= frame->k(); ++a) {
    std::vector<Expr> comps;
    comps.reserve(static_cast<std::size_t>(frame->dim()));
    for (const auto& coord : frame->coords()) {
      if (coord.role == Role::Base && base_components_are_delta) {
        comps.push_back(Expr::integer(coord.a == a ? 1 : 0));
      } else {
        comps.push_back(var(component_symbol(a, coord.name)));
      }
    }
    factors.emplace_back(frame, std::move(comps));
  }
  return KVectorField(frame->k(), std::move(factors));
}

std::vector<std::string> component_unknowns(const FrameRef& frame, bool include_base) {
  std::vector<std::string> unknowns;
  for (int a = 1; a <= frame->k(); ++a) {
    for (const auto& coord : frame->coords()) {
      if (coord.role == Role::Base && !include_base) continue;
      unknowns.push_back(component_symbol(a, coord.name));
    }
  }
  return unknowns;
}

EquationSet equations_from_geometric_residual(const FieldTheory& sys, const GeometricResidual& r,
                                              std::vector<std::string> unknowns) {
  EquationSet set;
  set.alphabet = Alphabet::Component;
  set.k = sys.k;
  set.n = sys.n;
  set.frame = sys.frame;
  set.unknowns = std::move(unknowns);
  set.equations = r.scalar_residuals;
  for (const auto& [tuple, coeff] : r.one_form.terms()) {
    const std::string& name = set.frame->coord(tuple.front()).name;
    set.equations.push_back({"d" + name, -coeff});
  }
  ExprMatrix jac;
  for (const auto& eq : set.equations) {
    std::vector<Expr> row;
    for (const auto& u : set.unknowns) row.push_back(diff(eq.residual, u));
    jac.push_back(std::move(row));
  }
  set.rank = symbolic_rank(jac);
  set.free_functions = static_cast<int>(set.unknowns.size()) - set.rank;
  return set;
}

EquationSet kvector_equations(const FieldTheory& sys) {
  require(sys.variant == Variant::KSymHam || sys.variant == Variant::KCosymHam,
          "kvector_equations requires a k-symplectic or k-cosymplectic Hamiltonian system");
  const KVectorField x = unknown_kvector(sys.frame, /*base_components_are_delta=*/false);
  return equations_from_geometric_residual(sys, geometric_residual(sys, x),
                                           component_unknowns(sys.frame, /*include_base=*/true));
}

KVectorField solve_kvector(const FieldTheory& sys, Gauge gauge) {
  require(sys.variant == Variant::KSymHam || sys.variant == Variant::KCosymHam,
          "solve_kvector requires a k-symplectic or k-cosymplectic Hamiltonian system");
  (void)gauge;  // single gauge for now
  const Expr inv_k = Expr::rational(1, sys.k);
  std::vector<VectorField> factors;
  for (int a = 1; a <= sys.k; ++a) {
    std::vector<Expr> comps;
    comps.reserve(static_cast<std::size_t>(sys.frame->dim()));
    for (const auto& coord : sys.frame->coords()) {
      switch (coord.role) {
        case Role::Base:
          comps.push_back(Expr::integer(coord.a == a ? 1 : 0));
          break;
        case Role::Config:
          comps.push_back(diff(sys.generator, momentum_name(a, coord.i)));
          break;
        case Role::Momentum:
          comps.push_back(coord.a == a ? -(inv_k * diff(sys.generator, config_name(coord.i)))
                                       : Expr::integer(0));
          break;
        default:
          throw VariantError("unexpected coordinate role in Hamiltonian frame");
      }
    }
    factors.emplace_back(sys.frame, std::move(comps));
  }
  return KVectorField(sys.k, std::move(factors));
}

SectionReport verify_section(const FieldTheory& sys, const SymbolicSection& s) {
  const EquationSet set = hdw_equations(sys);
  const auto subs = section_substitution(sys.frame, s);
  SectionReport report;
  report.assumption =
      "admissibility of the candidate section (image a closed embedded submanifold) is assumed, "
      "not checked";
  report.pass = true;
  for (const auto& eq : set.equations) {
    const Expr value = substitute(eq.residual, subs);
    const Verdict verdict = equal(value, Expr::integer(0));
    report.pass = report.pass && verdict != Verdict::NotEqual;
    report.rows.push_back({eq.label, value, verdict});
  }
  return report;
}

}  // namespace geofield
