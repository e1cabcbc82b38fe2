/**
 * @file  geofield_cli.cpp
 * @brief Command-line front end: model ingestion, command dispatch, and
 *        machine-readable reporting.
 *
 * Subcommands: info, canon, equations, legendre, convert, solve, verify.
 * Exit codes: 0 pass, 1 fail (a requested check or computation reported
 * failure), 2 usage or model error.
 */
#include "geofield/bridges.hpp"
#include "geofield/canonical.hpp"
#include "geofield/lagrangian.hpp"
#include "geofield/model.hpp"
#include "geofield/multisym.hpp"
#include "geofield/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gf = geofield;
using nlohmann::json;

namespace {

std::string seed_hex() {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(gf::global_seed()));
  return buf;
}

std::string role_name(gf::Role r) {
  switch (r) {
    case gf::Role::Base: return "base";
    case gf::Role::Config: return "config";
    case gf::Role::Momentum: return "momentum";
    case gf::Role::Velocity: return "velocity";
    case gf::Role::Affine: return "affine";
  }
  return "?";
}

/// The k-cosymplectic twin used to drive shared machinery for the
/// multisymplectic variants (the generating function lives on the same frame).
gf::FieldTheory cosym_twin(const gf::FieldTheory& sys) {
  if (sys.variant == gf::Variant::MsHamSection) {
    return gf::make_field_theory(gf::Variant::KCosymHam, sys.k, sys.n, sys.generator);
  }
  if (sys.variant == gf::Variant::MsLag) {
    return gf::make_field_theory(gf::Variant::KCosymLag, sys.k, sys.n, sys.generator);
  }
  return sys;
}

json equation_set_json(const gf::EquationSet& eqs) {
  json j;
  j["alphabet"] = gf::to_string(eqs.alphabet);
  j["k"] = eqs.k;
  j["n"] = eqs.n;
  j["bundle"] = eqs.frame->bundle();
  j["unknowns"] = eqs.unknowns;
  j["rank"] = eqs.rank;
  j["free_functions"] = eqs.free_functions;
  json rows = json::array();
  for (const gf::Equation& e : eqs.equations) {
    rows.push_back(json{{"label", e.label}, {"residual", e.residual.str()}});
  }
  j["equations"] = rows;
  return j;
}

/// The two equation sets shown / exported for a model: the PDE system in the
/// jet alphabet and the k-vector-field system in the component alphabet.
std::pair<gf::EquationSet, gf::EquationSet> equation_sets(const gf::FieldTheory& sys) {
  switch (sys.variant) {
    case gf::Variant::KSymHam:
    case gf::Variant::KCosymHam:
      return {gf::hdw_equations(sys), gf::kvector_equations(sys)};
    case gf::Variant::KSymLag:
    case gf::Variant::KCosymLag:
      return {gf::euler_lagrange_equations(sys), gf::lagrangian_kvector_equations(sys)};
    case gf::Variant::MsHamSection:
      return {gf::ms_hdw_equations(sys), gf::ms_hamiltonian_kvector_equations(sys)};
    case gf::Variant::MsLag:
      return {gf::euler_lagrange_equations(cosym_twin(sys)),
              gf::ms_lagrangian_kvector_equations(sys)};
  }
  throw gf::Error("unknown variant");
}

/// Applies [components] overrides "X<A>_<coord>" onto a gauge representative.
gf::KVectorField apply_overrides(const gf::KVectorField& x,
                                 const std::map<std::string, gf::Expr>& overrides) {
  if (overrides.empty()) return x;
  std::vector<std::vector<gf::Expr>> comps;
  for (int a = 1; a <= x.k(); ++a) comps.push_back(x.factor(a).components());
  const gf::CoordinateFrame& frame = *x.frame();
  for (const auto& [key, value] : overrides) {
    std::size_t us = key.find('_');
    int a = std::stoi(key.substr(1, us - 1));
    std::string coord = key.substr(us + 1);
    comps[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(frame.index_of(coord))] =
        value;
  }
  std::vector<gf::VectorField> factors;
  for (auto& c : comps) factors.emplace_back(x.frame(), std::move(c));
  int count = static_cast<int>(factors.size());
  return gf::KVectorField(count, std::move(factors));
}

/// The DiagonalSplit representative for any variant (multisymplectic variants
/// solve through the cosymplectic twin on the same frame).
gf::KVectorField gauge_field(const gf::FieldTheory& sys) {
  gf::FieldTheory twin = cosym_twin(sys);
  if (gf::is_hamiltonian(twin.variant)) return gf::solve_kvector(twin);
  return gf::solve_lagrangian_kvector(twin);
}

void parse_csv_doubles(const std::string& text, const std::string& what,
                       std::vector<double>& out) {
  out.clear();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gf::Error("malformed " + what + " entry '" + item + "'");
    }
  }
}

void parse_x0_flag(const std::string& text, gf::Assignment& x0) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw gf::Error("malformed --x0 entry '" + item + "'");
    std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      std::string val = item.substr(eq + 1);
      x0[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw gf::Error("malformed --x0 entry '" + item + "'");
    }
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gf::Error("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------------------
// info

int run_info(const gf::ModelFile& model) {
  const gf::FieldTheory& sys = model.system;
  std::ostringstream out;
  out << "formalism: " << gf::to_string(sys.variant) << "\n";
  out << "bundle: " << sys.frame->bundle() << "\n";
  out << "k: " << sys.k << "\n";
  out << "n: " << sys.n << "\n";
  out << "coordinates:";
  for (const gf::Coordinate& c : sys.frame->coords()) {
    out << " " << c.name << " (" << role_name(c.role) << ")";
  }
  out << "\n";
  out << "serialization: fiber coordinates print the copy index first and the\n"
         "  configuration index second, p{A}_{i} and v{A}_{i} alike; base t1..tk.\n";
  out << "generator: " << sys.generator.str() << "\n";
  out << "autonomous: " << (gf::is_autonomous(sys) ? "yes" : "no") << "\n";
  if (gf::is_lagrangian(sys.variant)) {
    gf::RegularityReport reg = gf::regularity(cosym_twin(sys));
    out << "regular: " << (reg.regular ? "yes" : "no") << " (hessian rank " << reg.rank << " of "
        << sys.k * sys.n << ")\n";
    out << "sopde_forced: " << (reg.sopde_forced ? "yes" : "no") << "\n";
    if (!reg.not_forced.empty()) {
      out << "sopde_not_forced:";
      for (const std::string& v : reg.not_forced) out << " " << v;
      out << "\n";
    }
  }
  out << "sections: " << model.sections.size() << "\n";
  out << "grid:";
  for (const gf::AxisSpec& ax : model.grid.axes) {
    out << " [0," << ax.length << "]x" << ax.steps;
  }
  out << (model.has_grid ? "" : " (default)") << "\n";
  std::cout << out.str();
  return 0;
}

// ---------------------------------------------------------------------------
// canon

int run_canon(const gf::ModelFile& model) {
  const gf::FieldTheory& sys = model.system;
  std::ostringstream out;
  const int k = sys.k, n = sys.n;
  switch (sys.variant) {
    case gf::Variant::KSymHam: {
      gf::KSymplecticStructure st = gf::canonical_ksymplectic(k, n);
      for (int a = 0; a < k; ++a) {
        out << "theta" << a + 1 << " = " << st.theta[static_cast<std::size_t>(a)].str() << "\n";
      }
      for (int a = 0; a < k; ++a) {
        out << "omega" << a + 1 << " = " << st.omega[static_cast<std::size_t>(a)].str() << "\n";
      }
      break;
    }
    case gf::Variant::KCosymHam:
    case gf::Variant::MsHamSection: {
      gf::KCosymplecticStructure st = gf::canonical_kcosymplectic(k, n);
      for (int a = 0; a < k; ++a) {
        out << "eta" << a + 1 << " = " << st.eta[static_cast<std::size_t>(a)].str() << "\n";
      }
      for (int a = 0; a < k; ++a) {
        out << "Theta" << a + 1 << " = " << st.theta[static_cast<std::size_t>(a)].str() << "\n";
      }
      for (int a = 0; a < k; ++a) {
        out << "Omega" << a + 1 << " = " << st.omega[static_cast<std::size_t>(a)].str() << "\n";
      }
      for (int a = 0; a < k; ++a) {
        out << "R" << a + 1 << " = " << st.reeb[static_cast<std::size_t>(a)].str() << "\n";
      }
      if (sys.variant == gf::Variant::MsHamSection) {
        gf::MultisymplecticStructure ms = gf::canonical_multisymplectic(k, n);
        out << "Theta = " << ms.theta.str() << "\n";
        out << "Omega = " << ms.omega.str() << "\n";
        gf::HamiltonCartanForms hc = gf::hamilton_cartan_forms(sys);
        out << "Theta_h = " << hc.theta.str() << "\n";
        out << "Omega_h = " << hc.omega.str() << "\n";
      }
      break;
    }
    case gf::Variant::KSymLag:
    case gf::Variant::KCosymLag: {
      gf::LagrangianForms lf = gf::lagrangian_forms(sys);
      const char* base = sys.variant == gf::Variant::KSymLag ? "theta_L" : "Theta_L";
      const char* obase = sys.variant == gf::Variant::KSymLag ? "omega_L" : "Omega_L";
      for (int a = 0; a < k; ++a) {
        out << base << a + 1 << " = " << lf.theta[static_cast<std::size_t>(a)].str() << "\n";
      }
      for (int a = 0; a < k; ++a) {
        out << obase << a + 1 << " = " << lf.omega[static_cast<std::size_t>(a)].str() << "\n";
      }
      out << "E_L = " << gf::energy(sys).str() << "\n";
      break;
    }
    case gf::Variant::MsLag: {
      gf::PoincareCartanForms pc = gf::poincare_cartan_forms(sys);
      out << "Theta_L = " << pc.theta.str() << "\n";
      out << "Omega_L = " << pc.omega.str() << "\n";
      out << "E_L = " << pc.energy.str() << "\n";
      break;
    }
  }
  std::cout << out.str();
  return 0;
}

// ---------------------------------------------------------------------------
// equations

int run_equations(const gf::ModelFile& model, const std::string& json_path) {
  auto [jet, component] = equation_sets(model.system);
  std::cout << jet.str() << "\n" << component.str();
  if (!json_path.empty()) {
    json j;
    j["jet"] = equation_set_json(jet);
    j["kvector"] = equation_set_json(component);
    write_text_file(json_path, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// legendre

int run_legendre(const gf::ModelFile& model) {
  const gf::FieldTheory& sys = model.system;
  if (!gf::is_lagrangian(sys.variant)) {
    throw gf::Error("legendre requires a Lagrangian model (got " + gf::to_string(sys.variant) +
                    ")");
  }
  std::ostringstream out;
  gf::FieldTheory twin = cosym_twin(sys);
  gf::RegularityReport reg = gf::regularity(twin);
  if (sys.variant == gf::Variant::MsLag) {
    gf::MsLegendre ml = gf::extended_restricted_legendre(sys);
    out << "extended: " << ml.extended.str() << "\n";
    out << "restricted: " << ml.restricted.str() << "\n";
  } else {
    out << "legendre: " << gf::legendre(sys).str() << "\n";
    if (reg.regular) out << "inverse: " << gf::legendre_inverse(sys).str() << "\n";
  }
  out << "regular: " << (reg.regular ? "yes" : "no") << " (hessian rank " << reg.rank << " of "
      << sys.k * sys.n << ")\n";
  if (reg.has_determinant) out << "hessian_determinant: " << reg.determinant.str() << "\n";
  std::cout << out.str();
  return 0;
}

// ---------------------------------------------------------------------------
// convert

bool same_family_side(gf::Variant a, gf::Variant b) {
  return gf::is_hamiltonian(a) == gf::is_hamiltonian(b);
}

/// Converts within one side (Hamiltonian or Lagrangian) of the triangle
/// k-symplectic -> k-cosymplectic -> multisymplectic; moving toward the
/// k-symplectic corner requires an autonomous generator.
gf::FieldTheory move_within_side(const gf::FieldTheory& sys, gf::Variant target) {
  bool to_sym = target == gf::Variant::KSymHam || target == gf::Variant::KSymLag;
  if (to_sym && !gf::is_autonomous(sys)) {
    throw gf::NotAutonomous("cannot convert to " + gf::to_string(target) +
                            ": generator depends on the base coordinates");
  }
  return gf::make_field_theory(target, sys.k, sys.n, sys.generator);
}

gf::FieldTheory convert_system(const gf::FieldTheory& sys, gf::Variant target) {
  if (sys.variant == target) return sys;
  if (same_family_side(sys.variant, target)) return move_within_side(sys, target);
  if (gf::is_lagrangian(sys.variant)) {
    // Legendre: L -> H = E_L∘FL⁻¹ on the matching Hamiltonian frame.
    gf::FieldTheory twin = cosym_twin(sys);
    gf::RegularityReport reg = gf::regularity(twin);
    if (!reg.regular) {
      throw gf::Error("cannot convert a singular Lagrangian through the Legendre map (hessian "
                      "rank " +
                      std::to_string(reg.rank) + " of " + std::to_string(sys.k * sys.n) + ")");
    }
    gf::Expr h = gf::substitute(gf::energy(twin), gf::legendre_inverse(twin).substitution());
    gf::FieldTheory ham = gf::make_field_theory(gf::Variant::KCosymHam, sys.k, sys.n, h);
    return convert_system(ham, target);
  }
  throw gf::Error("unsupported conversion " + gf::to_string(sys.variant) + " -> " +
                  gf::to_string(target));
}

std::string render_model_toml(const gf::ModelFile& model) {
  std::ostringstream out;
  const gf::FieldTheory& sys = model.system;
  out << "formalism = \"" << gf::to_string(sys.variant) << "\"\n";
  out << "k = " << sys.k << "\n";
  out << "n = " << sys.n << "\n";
  out << "generator = \"" << sys.generator.str() << "\"\n";
  for (const auto& [label, section] : model.sections) {
    out << "\n[" << (label == "section" ? "section" : "section." + label) << "]\n";
    for (const auto& [coord, value] : section.values) {
      out << coord << " = \"" << value.str() << "\"\n";
    }
  }
  if (model.has_grid) {
    out << "\n[grid]\n";
    out << "ranges = [";
    for (std::size_t a = 0; a < model.grid.axes.size(); ++a) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", model.grid.axes[a].length);
      out << (a ? ", " : "") << buf;
    }
    out << "]\nsteps = [";
    for (std::size_t a = 0; a < model.grid.axes.size(); ++a) {
      out << (a ? ", " : "") << model.grid.axes[a].steps;
    }
    out << "]\n";
  }
  if (!model.x0.empty()) {
    out << "\n[x0]\n";
    for (const auto& [coord, value] : model.x0) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", value);
      out << coord << " = " << buf << "\n";
    }
  }
  return out.str();
}

int run_convert(const gf::ModelFile& model, const std::string& target_tag) {
  gf::Variant target = gf::variant_from_tag(target_tag);
  gf::ModelFile out;
  out.system = convert_system(model.system, target);
  const gf::FrameRef& frame = out.system.frame;
  // Sections transfer when every assigned coordinate still exists; the grid
  // transfers verbatim (k is preserved); x0 entries keep known coordinates.
  for (const auto& [label, section] : model.sections) {
    bool ok = true;
    for (const auto& [coord, value] : section.values) ok = ok && frame->has(coord);
    if (ok) out.sections.emplace_back(label, section);
  }
  out.grid = model.grid;
  out.has_grid = model.has_grid;
  for (const auto& [coord, value] : model.x0) {
    if (frame->has(coord)) out.x0[coord] = value;
  }
  std::cout << render_model_toml(out);
  return 0;
}

// ---------------------------------------------------------------------------
// solve

int run_solve(const gf::ModelFile& model, const std::string& steps_flag,
              const std::string& ranges_flag, const std::string& x0_flag,
              const std::string& output) {
  gf::GridSpec grid = model.grid;
  const int k = model.system.k;
  if (!ranges_flag.empty()) {
    std::vector<double> ranges;
    parse_csv_doubles(ranges_flag, "--ranges", ranges);
    if (static_cast<int>(ranges.size()) != k) {
      throw gf::Error("--ranges needs " + std::to_string(k) + " entries");
    }
    for (int a = 0; a < k; ++a) grid.axes[static_cast<std::size_t>(a)].length = ranges[static_cast<std::size_t>(a)];
  }
  if (!steps_flag.empty()) {
    std::vector<double> steps;
    parse_csv_doubles(steps_flag, "--steps", steps);
    if (static_cast<int>(steps.size()) != k) {
      throw gf::Error("--steps needs " + std::to_string(k) + " entries");
    }
    for (int a = 0; a < k; ++a) {
      if (steps[static_cast<std::size_t>(a)] < 1) throw gf::Error("--steps entries must be >= 1");
      grid.axes[static_cast<std::size_t>(a)].steps = static_cast<int>(steps[static_cast<std::size_t>(a)]);
    }
  }
  gf::Assignment x0 = model.x0;
  if (!x0_flag.empty()) parse_x0_flag(x0_flag, x0);
  gf::KVectorField x = apply_overrides(gauge_field(model.system), model.components);
  gf::GridSolution sol;
  try {
    sol = gf::integrate(x, x0, grid);
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::ostringstream csv;
  gf::write_csv(sol, csv);
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(output, csv.str());
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", sol.commutator_max);
  std::cerr << "commutator_max=" << buf
            << " integral_section=" << (sol.integral_section ? "true" : "false") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

json report_row_json(const gf::SectionReport& report) {
  json rows = json::array();
  for (const gf::ReportRow& row : report.rows) {
    rows.push_back(json{{"label", row.label},
                        {"residual", row.residual.str()},
                        {"zero", row.residual.is_zero()}});
  }
  return rows;
}

json certificate_check(const std::string& name, const gf::EquivalenceCertificate& cert) {
  json j;
  j["name"] = name;
  j["kind"] = "certificate";
  j["pass"] = cert.equivalent;
  j["equivalent"] = cert.equivalent;
  j["probabilistic"] = cert.probabilistic;
  if (!cert.equivalent) {
    j["witness_label"] = cert.witness_label;
    j["witness"] = cert.witness.str();
  }
  if (!cert.detail.empty()) j["detail"] = cert.detail;
  return j;
}

json identity_check(const std::string& name, bool pass, const std::string& detail = "") {
  json j;
  j["name"] = name;
  j["kind"] = "identity";
  j["pass"] = pass;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

/// The theorem suite for one model: equation-set equivalence certificates plus
/// the structural identities that back them, chosen by variant.
std::vector<json> theorem_suite(const gf::FieldTheory& sys) {
  std::vector<json> checks;
  const int k = sys.k, n = sys.n;
  if (gf::is_hamiltonian(sys.variant)) {
    gf::FieldTheory cosym =
        gf::make_field_theory(gf::Variant::KCosymHam, k, n, sys.generator);
    gf::FieldTheory ms =
        gf::make_field_theory(gf::Variant::MsHamSection, k, n, sys.generator);
    checks.push_back(certificate_check(
        "kvector-equations-vs-multisymplectic",
        gf::certify_equation_equivalence(gf::kvector_equations(cosym),
                                         gf::ms_hamiltonian_kvector_equations(ms))));
    if (gf::is_autonomous(sys)) {
      gf::FieldTheory sym = gf::make_field_theory(gf::Variant::KSymHam, k, n, sys.generator);
      checks.push_back(certificate_check(
          "field-equations-vs-autonomization",
          gf::certify_equation_equivalence(gf::hdw_equations(sym),
                                           gf::hdw_equations(gf::autonomize(sym)))));
      gf::GeometricResidual res =
          gf::geometric_residual(gf::autonomize(sym), gf::suspend(gf::solve_kvector(sym)));
      checks.push_back(
          identity_check("suspension-solves-autonomized", res.is_symbolically_zero()));
    }
    gf::HamiltonCartanForms hc = gf::hamilton_cartan_forms(ms);
    gf::CosymFamily family = gf::extract_cosym_from_hamcartan(hc.theta, hc.omega);
    gf::MsForms rebuilt =
        gf::rebuild_hamcartan_from_cosym(sys.generator, family.theta, family.omega);
    checks.push_back(identity_check(
        "hamilton-cartan-roundtrip",
        gf::identical(rebuilt.theta, hc.theta) && gf::identical(rebuilt.omega, hc.omega)));
  } else {
    gf::FieldTheory cosym =
        gf::make_field_theory(gf::Variant::KCosymLag, k, n, sys.generator);
    gf::FieldTheory ms = gf::make_field_theory(gf::Variant::MsLag, k, n, sys.generator);
    checks.push_back(certificate_check(
        "euler-lagrange-vs-multisymplectic",
        gf::certify_equation_equivalence(gf::lagrangian_kvector_equations(cosym),
                                         gf::ms_lagrangian_kvector_equations(ms))));
    if (gf::is_autonomous(sys)) {
      gf::FieldTheory sym = gf::make_field_theory(gf::Variant::KSymLag, k, n, sys.generator);
      checks.push_back(certificate_check(
          "euler-lagrange-vs-autonomization",
          gf::certify_equation_equivalence(gf::euler_lagrange_equations(sym),
                                           gf::euler_lagrange_equations(cosym))));
    }
    {
      gf::SmoothMap fl = gf::legendre(cosym);
      gf::KCosymplecticStructure st = gf::canonical_kcosymplectic(k, n);
      gf::LagrangianForms lf = gf::lagrangian_forms(cosym);
      bool ok = true;
      for (int a = 0; a < k; ++a) {
        ok = ok && gf::identical(gf::pullback(fl, st.theta[static_cast<std::size_t>(a)]),
                                 lf.theta[static_cast<std::size_t>(a)]);
        ok = ok && gf::identical(gf::pullback(fl, st.omega[static_cast<std::size_t>(a)]),
                                 lf.omega[static_cast<std::size_t>(a)]);
      }
      checks.push_back(identity_check("legendre-pullback", ok));
    }
    {
      gf::MsLegendre ml = gf::extended_restricted_legendre(ms);
      gf::PoincareCartanForms pc = gf::poincare_cartan_forms(ms);
      gf::MultisymplecticStructure st = gf::canonical_multisymplectic(k, n);
      bool ok = gf::identical(gf::pullback(ml.extended, st.theta), pc.theta) &&
                gf::identical(gf::pullback(ml.extended, st.omega), pc.omega);
      checks.push_back(identity_check("extended-legendre-pullback", ok));
    }
    {
      gf::PoincareCartanForms pc = gf::poincare_cartan_forms(ms);
      gf::CosymFamily family = gf::extract_cosym_from_poincare(pc.theta, pc.omega);
      gf::MsForms rebuilt =
          gf::rebuild_poincare_from_cosym(pc.energy, family.theta, family.omega);
      checks.push_back(identity_check(
          "poincare-cartan-roundtrip",
          gf::identical(rebuilt.theta, pc.theta) && gf::identical(rebuilt.omega, pc.omega)));
    }
    gf::RegularityReport reg = gf::regularity(cosym);
    if (reg.sopde_forced) {
      gf::SectionReport sopde = gf::sopde_check(cosym, gf::solve_lagrangian_kvector(cosym));
      json j = identity_check("sopde-forced", sopde.pass);
      j["rows"] = report_row_json(sopde);
      checks.push_back(j);
    } else {
      json j = identity_check("sopde-not-forced-reported", !reg.not_forced.empty());
      j["detail"] = "free velocity directions:";
      for (const std::string& v : reg.not_forced) {
        j["detail"] = j["detail"].get<std::string>() + " " + v;
      }
      checks.push_back(j);
    }
  }
  return checks;
}

json section_check(const gf::FieldTheory& sys, const std::string& label,
                   const gf::SymbolicSection& section) {
  json j;
  j["name"] = "section " + label;
  j["kind"] = "section";
  try {
    gf::SectionReport report;
    switch (sys.variant) {
      case gf::Variant::KSymHam:
      case gf::Variant::KCosymHam:
        report = gf::verify_section(sys, section);
        break;
      case gf::Variant::MsHamSection:
        report = gf::ms_section_residual(sys, section);
        break;
      case gf::Variant::KSymLag:
      case gf::Variant::KCosymLag:
        report = gf::verify_euler_lagrange(sys, section);
        break;
      case gf::Variant::MsLag:
        report = gf::verify_euler_lagrange(cosym_twin(sys), section);
        break;
    }
    j["pass"] = report.pass;
    j["rows"] = report_row_json(report);
    if (!report.assumption.empty()) j["assumption"] = report.assumption;
  } catch (const gf::Error& e) {
    j["pass"] = false;
    j["detail"] = e.what();
  }
  return j;
}

int run_verify(const gf::ModelFile& model, bool theorems, const std::string& json_path) {
  if (model.sections.empty() && !theorems) {
    throw gf::Error("nothing to verify: the model has no sections and --theorems was not given");
  }
  json report;
  report["seed"] = seed_hex();
  report["model"] = json{{"formalism", gf::to_string(model.system.variant)},
                         {"k", model.system.k},
                         {"n", model.system.n},
                         {"generator", model.system.generator.str()}};
  json checks = json::array();
  for (const auto& [label, section] : model.sections) {
    checks.push_back(section_check(model.system, label, section));
  }
  if (theorems) {
    for (json& j : theorem_suite(model.system)) checks.push_back(std::move(j));
  }
  bool pass = true;
  for (const json& c : checks) pass = pass && c.at("pass").get<bool>();
  report["checks"] = checks;
  report["pass"] = pass;
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!json_path.empty()) write_text_file(json_path, text);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geofield: classical field theories in k-symplectic, k-cosymplectic and "
               "multisymplectic formalisms"};
  app.require_subcommand(1);

  std::string model_path, json_path, target_tag, steps_flag, ranges_flag, x0_flag, output;
  bool theorems = false;

  CLI::App* info = app.add_subcommand("info", "frame, flags and model summary");
  info->add_option("model", model_path, "model file")->required();
  CLI::App* canon = app.add_subcommand("canon", "canonical geometric structures");
  canon->add_option("model", model_path, "model file")->required();
  CLI::App* equations = app.add_subcommand("equations", "field equations (text + JSON)");
  equations->add_option("model", model_path, "model file")->required();
  equations->add_option("--json", json_path, "write a JSON rendition to this file");
  CLI::App* legendre = app.add_subcommand("legendre", "Legendre map and regularity");
  legendre->add_option("model", model_path, "model file")->required();
  CLI::App* convert = app.add_subcommand("convert", "convert the model to another formalism");
  convert->add_option("model", model_path, "model file")->required();
  convert->add_option("--to", target_tag, "target formalism tag")->required();
  CLI::App* solve = app.add_subcommand("solve", "integrate the field equations to CSV");
  solve->add_option("model", model_path, "model file")->required();
  solve->add_option("--steps", steps_flag, "per-axis step counts s1,s2,...");
  solve->add_option("--ranges", ranges_flag, "per-axis ranges T1,T2,...");
  solve->add_option("--x0", x0_flag, "initial state overrides q1=...,p1_1=...");
  solve->add_option("-o,--output", output, "CSV output file (default stdout)");
  CLI::App* verify = app.add_subcommand("verify", "verify sections and/or theorems (JSON)");
  verify->add_option("model", model_path, "model file")->required();
  verify->add_flag("--theorems", theorems, "run the equivalence-theorem suite");
  verify->add_option("--json", json_path, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    gf::ModelFile model = gf::load_model(model_path);
    if (info->parsed()) return run_info(model);
    if (canon->parsed()) return run_canon(model);
    if (equations->parsed()) return run_equations(model, json_path);
    if (legendre->parsed()) return run_legendre(model);
    if (convert->parsed()) return run_convert(model, target_tag);
    if (solve->parsed()) return run_solve(model, steps_flag, ranges_flag, x0_flag, output);
    if (verify->parsed()) return run_verify(model, theorems, json_path);
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
