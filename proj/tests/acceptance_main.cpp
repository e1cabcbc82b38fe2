/**
 * @file  acceptance_main.cpp
 * @brief End-to-end acceptance gate for the geofield toolkit: ten criteria
 *        covering canonical renderings, exact-identity suites, bridge
 *        round-trips, equivalence certificates, suspension, numerical
 *        integration accuracy, grid residuals, SOPDE analysis, and CLI
 *        determinism. Prints one pass/fail line per criterion and exits
 *        nonzero if any fails.
 *
 * Usage: geofield_acceptance --data <tests/data dir> --cli <geofield binary>
 */
#include "geofield/bridges.hpp"
#include "geofield/canonical.hpp"
#include "geofield/hamiltonian.hpp"
#include "geofield/lagrangian.hpp"
#include "geofield/model.hpp"
#include "geofield/multisym.hpp"
#include "geofield/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace geofield;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string g_data;
std::string g_cli;
std::vector<std::pair<std::string, ModelFile>> g_library;  // (file stem, model)

Expr V(const std::string& name) { return Expr::variable(name); }
Expr I(long long v) { return Expr::integer(v); }
Expr half() { return Expr::rational(1, 2); }

/// Collects the first failure; later require() calls keep the first message.
struct Check {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& msg) {
    if (!ok && pass) {
      pass = false;
      detail = msg;
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const ModelFile& find_model(const std::string& stem) {
  for (const auto& [name, model] : g_library) {
    if (name == stem) return model;
  }
  throw Error("library model not found: " + stem);
}

FieldTheory cosym_twin(const FieldTheory& sys) {
  switch (sys.variant) {
    case Variant::KSymHam:
    case Variant::MsHamSection:
      return make_field_theory(Variant::KCosymHam, sys.k, sys.n, sys.generator);
    case Variant::KSymLag:
    case Variant::MsLag:
      return make_field_theory(Variant::KCosymLag, sys.k, sys.n, sys.generator);
    default:
      return sys;
  }
}

FieldTheory ms_twin(const FieldTheory& sys) {
  Variant v = is_hamiltonian(sys.variant) ? Variant::MsHamSection : Variant::MsLag;
  return make_field_theory(v, sys.k, sys.n, sys.generator);
}

// ---------------------------------------------------------------------------
// criterion 1: canonical Darboux renderings against the golden file
// ---------------------------------------------------------------------------

std::string render_canonical_block(int k, int n) {
  std::ostringstream os;
  os << "[k=" << k << " n=" << n << "]\n";
  KSymplecticStructure sym = canonical_ksymplectic(k, n);
  for (int a = 0; a < k; ++a) os << "theta" << a + 1 << " = " << sym.theta[a].str() << "\n";
  for (int a = 0; a < k; ++a) os << "omega" << a + 1 << " = " << sym.omega[a].str() << "\n";
  KCosymplecticStructure cos = canonical_kcosymplectic(k, n);
  for (int a = 0; a < k; ++a) os << "eta" << a + 1 << " = " << cos.eta[a].str() << "\n";
  for (int a = 0; a < k; ++a) os << "Theta" << a + 1 << " = " << cos.theta[a].str() << "\n";
  for (int a = 0; a < k; ++a) os << "Omega" << a + 1 << " = " << cos.omega[a].str() << "\n";
  MultisymplecticStructure ms = canonical_multisymplectic(k, n);
  os << "Theta = " << ms.theta.str() << "\n";
  os << "Omega = " << ms.omega.str() << "\n";
  return os.str();
}

void crit_canonical_golden(Check& c) {
  std::ostringstream os;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) os << render_canonical_block(k, n) << "\n";
  }
  std::string golden = read_file(g_data + "/canonical_golden.txt");
  c.require(os.str() == golden,
            "rendered canonical structures differ from canonical_golden.txt");
}

// ---------------------------------------------------------------------------
// criterion 2: exact-identity suite
// ---------------------------------------------------------------------------

DifferentialForm random_form(const FrameRef& frame, int degree, SampleRng& rng) {
  const int dim = frame->dim();
  auto coeff = [&]() {
    Expr e = I(static_cast<long long>(rng.uniform(-3.0, 4.0)));
    for (int j = 0; j < dim; ++j) {
      long long w = static_cast<long long>(rng.uniform(-2.0, 3.0));
      if (w != 0) e = e + I(w) * V(frame->coord(j).name);
    }
    if (rng.uniform(0.0, 1.0) < 0.25) e = e + sin(V(frame->coord(0).name));
    if (rng.uniform(0.0, 1.0) < 0.15) e = e * V(frame->coord(dim - 1).name);
    return e;
  };
  if (degree == 0) return DifferentialForm::scalar(frame, coeff());
  DifferentialForm out(frame, degree);
  std::vector<int> tuple(static_cast<std::size_t>(degree));
  for (int j = 0; j < degree; ++j) tuple[static_cast<std::size_t>(j)] = j;
  while (true) {
    if (rng.uniform(0.0, 1.0) < 0.4) out.add_term(tuple, coeff());
    int j = degree - 1;
    while (j >= 0 && tuple[static_cast<std::size_t>(j)] == dim - degree + j) --j;
    if (j < 0) break;
    ++tuple[static_cast<std::size_t>(j)];
    for (int m = j + 1; m < degree; ++m)
      tuple[static_cast<std::size_t>(m)] = tuple[static_cast<std::size_t>(m - 1)] + 1;
  }
  return out;
}

std::vector<FieldTheory> identity_lagrangians() {
  return {
      make_field_theory(Variant::KSymLag, 2, 1,
                        half() * (V("v1_1") * V("v1_1") - V("v2_1") * V("v2_1"))),  // wave
      make_field_theory(Variant::KSymLag, 1, 1,
                        half() * V("v1_1") * V("v1_1") - half() * V("q1") * V("q1")),  // oscillator
      make_field_theory(Variant::KSymLag, 2, 1,
                        half() * (V("v1_1") * V("v1_1") + V("v2_1") * V("v2_1"))),  // free quadratic
      make_field_theory(Variant::KSymLag, 2, 1, V("v1_1") * V("v2_1")),             // cross term
      make_field_theory(Variant::KSymLag, 2, 1, half() * V("v1_1") * V("v1_1")),    // singular
  };
}

void crit_identity_suite(Check& c) {
  // d(d(alpha)) == 0 for 1000 deterministic pseudo-random forms
  std::vector<FrameRef> frames = {extended_phase_frame(2, 1), multimomentum_frame(2, 1),
                                  extended_velocity_frame(2, 2), phase_frame(3, 2),
                                  extended_phase_frame(1, 3)};
  SampleRng rng(global_seed());
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const FrameRef& f = frames[static_cast<std::size_t>(i) % frames.size()];
    DifferentialForm a = random_form(f, i % 4, rng);
    if (!d(d(a)).is_zero()) {
      c.require(false, "d(d(form)) != 0 at sample " + std::to_string(i));
      return;
    }
    ++checked;
  }
  c.require(checked == 1000, "expected 1000 samples");

  // Reeb relations on the canonical k-cosymplectic structures
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) {
      KCosymplecticStructure s = canonical_kcosymplectic(k, n);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          Expr want = (a == b) ? I(1) : Expr{};
          c.require((interior(s.reeb[static_cast<std::size_t>(a)],
                              s.eta[static_cast<std::size_t>(b)])
                         .scalar_value() -
                     want)
                        .is_zero(),
                    "Reeb/eta relation failed");
          c.require(interior(s.reeb[static_cast<std::size_t>(a)],
                             s.omega[static_cast<std::size_t>(b)])
                        .is_zero(),
                    "Reeb/Omega relation failed");
        }
      }
    }
  }

  // Legendre pullbacks of the canonical potentials for five Lagrangians
  for (const FieldTheory& sys : identity_lagrangians()) {
    const std::string gen = sys.generator.str();
    // k-symplectic side
    SmoothMap fl = legendre(sys);
    KSymplecticStructure canon = canonical_ksymplectic(sys.k, sys.n);
    LagrangianForms lf = lagrangian_forms(sys);
    for (int a = 0; a < sys.k; ++a) {
      c.require(identical(pullback(fl, canon.theta[static_cast<std::size_t>(a)]),
                          lf.theta[static_cast<std::size_t>(a)]),
                "FL* theta mismatch for L = " + gen);
      c.require(identical(pullback(fl, canon.omega[static_cast<std::size_t>(a)]),
                          lf.omega[static_cast<std::size_t>(a)]),
                "FL* omega mismatch for L = " + gen);
    }
    // k-cosymplectic side
    FieldTheory ext = cosym_twin(sys);
    SmoothMap flx = legendre(ext);
    KCosymplecticStructure ccanon = canonical_kcosymplectic(sys.k, sys.n);
    LagrangianForms lfx = lagrangian_forms(ext);
    for (int a = 0; a < sys.k; ++a) {
      c.require(identical(pullback(flx, ccanon.theta[static_cast<std::size_t>(a)]),
                          lfx.theta[static_cast<std::size_t>(a)]),
                "extended FL* Theta mismatch for L = " + gen);
    }
    // multisymplectic side: the extended Legendre map
    FieldTheory msl = ms_twin(sys);
    MsLegendre ml = extended_restricted_legendre(msl);
    MultisymplecticStructure mcanon = canonical_multisymplectic(sys.k, sys.n);
    PoincareCartanForms pc = poincare_cartan_forms(msl);
    c.require(identical(pullback(ml.extended, mcanon.theta), pc.theta),
              "extended Legendre Theta pullback mismatch for L = " + gen);
    c.require(identical(pullback(ml.extended, mcanon.omega), pc.omega),
              "extended Legendre Omega pullback mismatch for L = " + gen);
  }
}

// ---------------------------------------------------------------------------
// criterion 3: bridge round-trips
// ---------------------------------------------------------------------------

void crit_bridge_roundtrips(Check& c) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 2; ++n) {
      const std::string at = " at k=" + std::to_string(k) + ", n=" + std::to_string(n);
      MultisymplecticStructure ms = canonical_multisymplectic(k, n);
      KSymplecticStructure sym = canonical_ksymplectic(k, n);
      KCosymplecticStructure cos = canonical_kcosymplectic(k, n);

      KSymplecticExtraction ex = extract_ksymplectic(ms.theta, ms.omega);
      for (int a = 0; a < k; ++a) {
        c.require(identical(ex.theta[static_cast<std::size_t>(a)],
                            sym.theta[static_cast<std::size_t>(a)]),
                  "extracted theta mismatch" + at);
        c.require(identical(ex.omega[static_cast<std::size_t>(a)],
                            sym.omega[static_cast<std::size_t>(a)]),
                  "extracted omega mismatch" + at);
      }
      MsForms back = rebuild_ms_from_ksymplectic(ex.theta, ex.omega);
      c.require(identical(back.theta, ms.theta) && identical(back.omega, ms.omega),
                "k-symplectic rebuild mismatch" + at);

      KCosymplecticExtraction cx = extract_kcosymplectic(ms.theta, ms.omega);
      for (int a = 0; a < k; ++a) {
        c.require(identical(cx.eta[static_cast<std::size_t>(a)],
                            cx.eta_alt[static_cast<std::size_t>(a)]),
                  "the two eta extractions disagree" + at);
        c.require(identical(cx.eta[static_cast<std::size_t>(a)],
                            cos.eta[static_cast<std::size_t>(a)]),
                  "extracted eta mismatch" + at);
        c.require(identical(cx.theta[static_cast<std::size_t>(a)],
                            cos.theta[static_cast<std::size_t>(a)]),
                  "extracted cosym theta mismatch" + at);
        c.require(identical(cx.omega[static_cast<std::size_t>(a)],
                            cos.omega[static_cast<std::size_t>(a)]),
                  "extracted cosym omega mismatch" + at);
      }
      MsForms cback = rebuild_ms_from_kcosymplectic(cx.eta, cx.theta, cx.omega);
      c.require(identical(cback.theta, ms.theta) && identical(cback.omega, ms.omega),
                "k-cosymplectic rebuild mismatch" + at);
    }
  }

  // library inputs: Hamilton-Cartan and Poincare-Cartan round-trips
  for (const auto& [name, model] : g_library) {
    const FieldTheory& sys = model.system;
    if (is_hamiltonian(sys.variant)) {
      HamiltonCartanForms hc = hamilton_cartan_forms(ms_twin(sys));
      CosymFamily fam = extract_cosym_from_hamcartan(hc.theta, hc.omega);
      MsForms back = rebuild_hamcartan_from_cosym(sys.generator, fam.theta, fam.omega);
      c.require(identical(back.theta, hc.theta) && identical(back.omega, hc.omega),
                "Hamilton-Cartan round-trip failed for " + name);
    } else {
      PoincareCartanForms pc = poincare_cartan_forms(ms_twin(sys));
      CosymFamily fam = extract_cosym_from_poincare(pc.theta, pc.omega);
      MsForms back = rebuild_poincare_from_cosym(pc.energy, fam.theta, fam.omega);
      c.require(identical(back.theta, pc.theta) && identical(back.omega, pc.omega),
                "Poincare-Cartan round-trip failed for " + name);
    }
  }
}

// ---------------------------------------------------------------------------
// criterion 4: equivalence certificates
// ---------------------------------------------------------------------------

void crit_equivalence_certificates(Check& c) {
  for (const auto& [name, model] : g_library) {
    const FieldTheory& sys = model.system;
    if (is_hamiltonian(sys.variant)) {
      FieldTheory cosym = cosym_twin(sys);
      EquivalenceCertificate cert = certify_equation_equivalence(
          kvector_equations(cosym), ms_hamiltonian_kvector_equations(ms_twin(sys)));
      c.require(cert.equivalent, "Hamiltonian k-vector/multisymplectic certificate failed for " +
                                     name + ": " + cert.detail);
      if (sys.variant == Variant::KSymHam) {
        EquivalenceCertificate ac =
            certify_equation_equivalence(hdw_equations(sys), hdw_equations(autonomize(sys)));
        c.require(ac.equivalent, "autonomization certificate failed for " + name);
      }
    } else {
      FieldTheory cosym = cosym_twin(sys);
      EquivalenceCertificate cert = certify_equation_equivalence(
          lagrangian_kvector_equations(cosym), ms_lagrangian_kvector_equations(ms_twin(sys)));
      c.require(cert.equivalent, "Lagrangian k-vector/multisymplectic certificate failed for " +
                                     name + ": " + cert.detail);
    }
  }

  // a perturbed Hamiltonian must be rejected with a nonzero witness
  FieldTheory base = find_model("oscillator").system;
  FieldTheory bumped =
      make_field_theory(base.variant, base.k, base.n, base.generator + V("q1"));
  EquivalenceCertificate cert =
      certify_equation_equivalence(hdw_equations(base), hdw_equations(bumped));
  c.require(!cert.equivalent, "perturbed Hamiltonian was certified equivalent");
  c.require(!cert.witness.is_zero(), "perturbed Hamiltonian produced a zero witness");
  c.require(!cert.witness_label.empty(), "perturbed Hamiltonian produced no witness label");
}

// ---------------------------------------------------------------------------
// criterion 5: suspension solves the autonomized system
// ---------------------------------------------------------------------------

void crit_suspension(Check& c) {
  int count = 0;
  for (const auto& [name, model] : g_library) {
    if (model.system.variant != Variant::KSymHam) continue;
    ++count;
    KVectorField x = solve_kvector(model.system);
    GeometricResidual r = geometric_residual(autonomize(model.system), suspend(x));
    c.require(r.is_symbolically_zero(), "suspension residual nonzero for " + name);
  }
  c.require(count >= 3, "library contains too few k-symplectic Hamiltonian systems");
}

// ---------------------------------------------------------------------------
// criterion 6: oscillator integration accuracy and convergence order
// ---------------------------------------------------------------------------

double oscillator_max_error(const GridSolution& sol) {
  int q = 0;
  for (std::size_t i = 0; i < sol.coords.size(); ++i)
    if (sol.coords[i] == "q1") q = static_cast<int>(i);
  double worst = 0.0;
  for (int s = 0; s < sol.extents[0]; ++s)
    worst = std::max(worst, std::abs(sol.value_at({s}, q) - std::sin(sol.base_value(0, s))));
  return worst;
}

void crit_oscillator(Check& c) {
  const ModelFile& model = find_model("oscillator");
  KVectorField x = solve_kvector(model.system);
  GridSolution sol = integrate(x, model.x0, model.grid);  // h = 1e-3 over [0, 10]
  c.require(sol.extents[0] == 10001, "oscillator model grid is not h=1e-3 over [0,10]");
  double err = oscillator_max_error(sol);
  c.require(err <= 1e-6, "max |q - sin t| = " + std::to_string(err));

  double drift = 0.0;
  for (int s = 0; s < sol.extents[0]; ++s) {
    double q = sol.value_at({s}, 0), p = sol.value_at({s}, 1);
    drift = std::max(drift, std::abs(0.5 * (q * q + p * p) - 0.5));
  }
  c.require(drift <= 1e-6, "energy drift = " + std::to_string(drift));

  double coarse =
      oscillator_max_error(integrate(x, model.x0, GridSpec{{AxisSpec{10.0, 200}}}));
  double fine =
      oscillator_max_error(integrate(x, model.x0, GridSpec{{AxisSpec{10.0, 400}}}));
  double ratio = coarse / fine;
  c.require(ratio >= 12.0 && ratio <= 20.0,
            "error ratio under step halving = " + std::to_string(ratio));
}

// ---------------------------------------------------------------------------
// criterion 7: Laplace grid residuals, analytic vs corrupted section
// ---------------------------------------------------------------------------

GridSolution sampled_laplace_section(const FieldTheory& sys, bool corrupted) {
  GridSolution sol;
  sol.k = 2;
  sol.frame = sys.frame;
  sol.axes = {AxisSpec{1.0, 100}, AxisSpec{1.0, 100}};
  sol.coords = {"q1", "p1_1", "p2_1"};
  sol.extents = {101, 101};
  sol.values.reserve(101 * 101 * 3);
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      double t1 = i * 1e-2, t2 = j * 1e-2;
      if (corrupted) {
        sol.values.push_back(t1 * t1);
        sol.values.push_back(2 * t1);
        sol.values.push_back(0.0);
      } else {
        sol.values.push_back(t1 * t1 - t2 * t2);
        sol.values.push_back(2 * t1);
        sol.values.push_back(-2 * t2);
      }
    }
  }
  return sol;
}

void crit_laplace_grid(Check& c) {
  const FieldTheory& sys = find_model("laplace").system;
  EquationSet eqs = hdw_equations(sys);
  double good = grid_residual(eqs, sampled_laplace_section(sys, false));
  c.require(good <= 1e-8, "analytic section residual = " + std::to_string(good));
  double bad = grid_residual(eqs, sampled_laplace_section(sys, true));
  c.require(bad >= 1.0, "corrupted section residual = " + std::to_string(bad) + " (expected >= 1)");
}

// ---------------------------------------------------------------------------
// criterion 8: wave equation, symbolic verification + prolongation on a grid
// ---------------------------------------------------------------------------

void crit_wave(Check& c) {
  const ModelFile& model = find_model("wave");
  const FieldTheory& sys = model.system;
  SymbolicSection phi = make_section(2, {{"q1", sin(V("t1") - V("t2"))}});

  SectionReport rep = verify_euler_lagrange(sys, phi);
  c.require(rep.pass, "sin(t1 - t2) failed Euler-Lagrange verification");
  for (const ReportRow& row : rep.rows)
    c.require(row.residual.is_zero() && row.verdict == Verdict::Equal,
              "Euler-Lagrange residual for " + row.label + " is not an exact zero");

  // prolong and evaluate both the jet equations and the component equations
  // along the section on a 101x101 grid with h = 1e-2
  SymbolicSection full = prolong(sys, phi);
  auto jet_sub = section_substitution(sys.frame, full);
  std::vector<Expr> residuals;
  for (const Equation& eq : euler_lagrange_equations(sys).equations)
    residuals.push_back(substitute(eq.residual, jet_sub));

  std::map<std::string, Expr> comp_sub;
  for (const Coordinate& coord : sys.frame->coords()) {
    if (coord.role == Role::Base) continue;
    comp_sub[coord.name] = full.values.at(coord.name);
    for (int a = 1; a <= sys.k; ++a)
      comp_sub[component_symbol(a, coord.name)] = diff(full.values.at(coord.name), base_name(a));
  }
  for (const Equation& eq : lagrangian_kvector_equations(sys).equations)
    residuals.push_back(substitute(eq.residual, comp_sub));

  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      Assignment at{{"t1", i * 1e-2}, {"t2", j * 1e-2}};
      for (const Expr& r : residuals) worst = std::max(worst, std::abs(eval_expr(r, at)));
    }
  }
  c.require(worst <= 1e-8, "prolonged-section grid residual = " + std::to_string(worst));
}

// ---------------------------------------------------------------------------
// criterion 9: SOPDE forced for regular Lagrangians, reported when singular
// ---------------------------------------------------------------------------

void crit_sopde(Check& c) {
  int regular_count = 0;
  bool saw_singular = false;
  for (const auto& [name, model] : g_library) {
    const FieldTheory& sys = model.system;
    if (!is_lagrangian(sys.variant)) continue;
    RegularityReport r = regularity(sys);
    if (r.regular) {
      ++regular_count;
      c.require(r.sopde_forced, "regular Lagrangian not reported SOPDE-forced: " + name);
      SectionReport rep = sopde_check(sys, solve_lagrangian_kvector(sys));
      c.require(rep.pass, "solved k-vector field is not a SOPDE for " + name);
    } else {
      saw_singular = true;
      c.require(!r.sopde_forced, "singular Lagrangian reported SOPDE-forced: " + name);
      c.require(!r.not_forced.empty(), "singular Lagrangian lists no free directions: " + name);
      if (name == "singular")
        c.require(r.not_forced == std::vector<std::string>{"v2_1"},
                  "unexpected free velocity directions for the singular library model");
    }
  }
  c.require(regular_count >= 4, "library contains too few regular Lagrangians");
  c.require(saw_singular, "library contains no singular Lagrangian");
}

// ---------------------------------------------------------------------------
// criterion 10: CLI determinism + JSON schema conformance
// ---------------------------------------------------------------------------

bool schema_type_ok(const json& node, const std::string& t) {
  if (t == "object") return node.is_object();
  if (t == "array") return node.is_array();
  if (t == "string") return node.is_string();
  if (t == "boolean") return node.is_boolean();
  if (t == "integer") return node.is_number_integer();
  if (t == "number") return node.is_number();
  return false;
}

/// Validator for the subset of JSON Schema draft-07 the report schema uses:
/// $ref (#/definitions/...), oneOf, type, enum, pattern, minimum, properties,
/// required, additionalProperties:false, items.
bool schema_validate(const json& node, const json& sch, const json& root, std::string* why) {
  if (sch.contains("$ref")) {
    std::string ref = sch["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) {
      *why = "unsupported $ref " + ref;
      return false;
    }
    return schema_validate(node, root["definitions"][ref.substr(prefix.size())], root, why);
  }
  if (sch.contains("oneOf")) {
    int hits = 0;
    for (const json& sub : sch["oneOf"]) {
      std::string ignored;
      if (schema_validate(node, sub, root, &ignored)) ++hits;
    }
    if (hits != 1) {
      *why = "oneOf matched " + std::to_string(hits) + " branches";
      return false;
    }
    return true;
  }
  if (sch.contains("type") && !schema_type_ok(node, sch["type"].get<std::string>())) {
    *why = "type mismatch, expected " + sch["type"].get<std::string>();
    return false;
  }
  if (sch.contains("enum")) {
    bool hit = false;
    for (const json& v : sch["enum"]) hit = hit || v == node;
    if (!hit) {
      *why = "value " + node.dump() + " not in enum";
      return false;
    }
  }
  if (sch.contains("pattern")) {
    std::regex re(sch["pattern"].get<std::string>());
    if (!node.is_string() || !std::regex_search(node.get<std::string>(), re)) {
      *why = "pattern mismatch for " + node.dump();
      return false;
    }
  }
  if (sch.contains("minimum") && node.is_number() &&
      node.get<double>() < sch["minimum"].get<double>()) {
    *why = "value below minimum";
    return false;
  }
  if (node.is_object()) {
    if (sch.contains("required")) {
      for (const json& key : sch["required"]) {
        if (!node.contains(key.get<std::string>())) {
          *why = "missing required key " + key.get<std::string>();
          return false;
        }
      }
    }
    const json props = sch.value("properties", json::object());
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (props.contains(it.key())) {
        if (!schema_validate(it.value(), props[it.key()], root, why)) {
          *why = it.key() + ": " + *why;
          return false;
        }
      } else if (sch.contains("additionalProperties") &&
                 sch["additionalProperties"].is_boolean() &&
                 !sch["additionalProperties"].get<bool>()) {
        *why = "unexpected key " + it.key();
        return false;
      }
    }
  }
  if (node.is_array() && sch.contains("items")) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!schema_validate(node[i], sch["items"], root, why)) {
        *why = "item " + std::to_string(i) + ": " + *why;
        return false;
      }
    }
  }
  return true;
}

void crit_determinism(Check& c) {
  fs::path tmp = fs::temp_directory_path();
  std::string out1 = (tmp / "geofield_accept_run1.json").string();
  std::string out2 = (tmp / "geofield_accept_run2.json").string();
  std::string out3 = (tmp / "geofield_accept_eqs.json").string();
  std::string model = g_data + "/wave.toml";

  auto run = [&](const std::string& seed, const std::string& args) {
    std::string cmd =
        "GEOFIELD_SEED=" + seed + " \"" + g_cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const std::string seed = "0x00c0ffee00c0ffee";
  int s1 = run(seed, "verify --theorems --json \"" + out1 + "\" \"" + model + "\"");
  int s2 = run(seed, "verify --theorems --json \"" + out2 + "\" \"" + model + "\"");
  c.require(s1 == 0 && s2 == 0, "CLI verify exited nonzero");
  if (!c.pass) return;

  std::string a = read_file(out1), b = read_file(out2);
  c.require(!a.empty() && a == b, "reports differ between identical-seed runs");

  json report = json::parse(a);
  c.require(report.value("seed", "") == seed, "report does not echo GEOFIELD_SEED");
  c.require(report.value("pass", false), "wave verification reported failure");

  json schema = json::parse(read_file(
      (fs::path(g_data).parent_path().parent_path() / "docs" / "report-schema.json").string()));
  std::string why;
  c.require(schema_validate(report, schema, schema, &why), "verify report violates schema: " + why);

  int s3 = run(seed, "equations --json \"" + out3 + "\" \"" + model + "\"");
  c.require(s3 == 0, "CLI equations exited nonzero");
  if (s3 == 0) {
    json eqs = json::parse(read_file(out3));
    std::string ewhy;
    c.require(schema_validate(eqs, schema, schema, &ewhy),
              "equations report violates schema: " + ewhy);
  }

  std::error_code ec;
  fs::remove(out1, ec);
  fs::remove(out2, ec);
  fs::remove(out3, ec);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--data" && i + 1 < argc) g_data = argv[++i];
    else if (arg == "--cli" && i + 1 < argc) g_cli = argv[++i];
  }
  if (g_data.empty() || g_cli.empty()) {
    std::fprintf(stderr, "usage: geofield_acceptance --data <dir> --cli <geofield>\n");
    return 2;
  }
  try {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(g_data)) {
      if (entry.path().extension() == ".toml") paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    for (const std::string& p : paths) {
      g_library.emplace_back(fs::path(p).stem().string(), load_model(p));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failed to load the model library: %s\n", e.what());
    return 2;
  }
  if (g_library.size() < 12) {
    std::fprintf(stderr, "expected at least 12 library models in %s\n", g_data.c_str());
    return 2;
  }

  struct Criterion {
    const char* title;
    std::function<void(Check&)> fn;
    double budget_seconds;  // 0 = only the ctest-level timeout applies
  };
  const std::vector<Criterion> criteria = {
      {"canonical Darboux renderings match the golden file", crit_canonical_golden, 1.0},
      {"identity suite: dd=0, Reeb relations, Legendre pullbacks", crit_identity_suite, 10.0},
      {"bridge round-trips between the three phase spaces", crit_bridge_roundtrips, 0},
      {"equivalence certificates across formalisms", crit_equivalence_certificates, 0},
      {"suspension solves the autonomized systems", crit_suspension, 0},
      {"oscillator integration: accuracy, drift, 4th order", crit_oscillator, 0},
      {"Laplace grid residuals: analytic pass, corrupted fail", crit_laplace_grid, 0},
      {"wave equation: exact verification and prolonged grid", crit_wave, 0},
      {"SOPDE forced iff the Lagrangian is regular", crit_sopde, 0},
      {"CLI determinism and JSON schema conformance", crit_determinism, 0},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget_seconds > 0 && dt >= criteria[i].budget_seconds) {
      c.require(false, "exceeded the " + std::to_string(criteria[i].budget_seconds) +
                           " s time budget");
    }
    std::printf("criterion %2zu: %s - %s (%.2f s)%s%s\n", i + 1, c.pass ? "pass" : "FAIL",
                criteria[i].title, dt, c.pass ? "" : ": ", c.pass ? "" : c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("acceptance: %s\n", all ? "all 10 criteria passed" : "FAILED");
  return all ? 0 : 1;
}
