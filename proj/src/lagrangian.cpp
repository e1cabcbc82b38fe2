/**
 * @file  lagrangian.cpp
 * @brief Lagrangian forms, Legendre maps, Euler–Lagrange assembly, SOPDE
 *        analysis, and the Lagrangian k-vector-field equation.
 */
#include "geofield/lagrangian.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace geofield {

namespace {

Expr var(const std::string& name) { return Expr::variable(name); }

void require_lagrangian(const FieldTheory& sys, const std::string& op) {
  if (sys.variant != Variant::KSymLag && sys.variant != Variant::KCosymLag) {
    throw VariantError(op + " requires a k-symplectic or k-cosymplectic Lagrangian system");
  }
}

bool is_cosym(const FieldTheory& sys) { return sys.variant == Variant::KCosymLag; }

/// Momentum function ∂L/∂v^A_i.
Expr momentum_fn(const FieldTheory& sys, int a, int i) {
  return diff(sys.generator, velocity_name(a, i));
}

/// Flat (A,i) index into Hessian rows/columns.
std::size_t flat(int a, int i, int n) {
  return static_cast<std::size_t>((a - 1) * n + (i - 1));
}

ExprMatrix velocity_hessian(const FieldTheory& sys) {
  const std::size_t kn = static_cast<std::size_t>(sys.k) * static_cast<std::size_t>(sys.n);
  ExprMatrix h(kn, std::vector<Expr>(kn, Expr::integer(0)));
  for (int a = 1; a <= sys.k; ++a) {
    for (int i = 1; i <= sys.n; ++i) {
      const Expr g = momentum_fn(sys, a, i);
      for (int b = 1; b <= sys.k; ++b) {
        for (int j = 1; j <= sys.n; ++j) {
          h[flat(a, i, sys.n)][flat(b, j, sys.n)] = diff(g, velocity_name(b, j));
        }
      }
    }
  }
  return h;
}

/// Elimination recording pivot columns (structural zero test is exact for
/// polynomial entries).
std::vector<std::size_t> pivot_columns(ExprMatrix m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (!m[r][col].is_zero() && !is_probably_zero(m[r][col])) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(m[sel], m[pivot_row]);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      const Expr f = m[r][col] / m[pivot_row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[pivot_row][c];
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

double numeric_determinant(std::vector<std::vector<double>> m) {
  const std::size_t dim = m.size();
  double det = 1.0;
  for (std::size_t p = 0; p < dim; ++p) {
    std::size_t sel = p;
    for (std::size_t r = p + 1; r < dim; ++r) {
      if (std::fabs(m[r][p]) > std::fabs(m[sel][p])) sel = r;
    }
    if (std::fabs(m[sel][p]) == 0.0) return 0.0;
    if (sel != p) {
      std::swap(m[sel], m[p]);
      det = -det;
    }
    det *= m[p][p];
    for (std::size_t r = p + 1; r < dim; ++r) {
      const double f = m[r][p] / m[p][p];
      for (std::size_t c = p; c < dim; ++c) m[r][c] -= f * m[p][c];
    }
  }
  return det;
}

/// Substitution sending every velocity to the matching configuration jet.
std::map<std::string, Expr> velocity_to_jet(const FieldTheory& sys) {
  std::map<std::string, Expr> subs;
  for (int b = 1; b <= sys.k; ++b) {
    for (int j = 1; j <= sys.n; ++j) {
      subs[velocity_name(b, j)] = var(jet_symbol(config_name(j), b));
    }
  }
  return subs;
}

/// Total derivative D_A along the base, acting on a function of (t,q,v),
/// expressed in jet symbols.
Expr total_derivative(const FieldTheory& sys, const Expr& f, int a) {
  Expr out = is_cosym(sys) ? diff(f, base_name(a)) : Expr::integer(0);
  for (int j = 1; j <= sys.n; ++j) {
    out += diff(f, config_name(j)) * var(jet_symbol(config_name(j), a));
    for (int b = 1; b <= sys.k; ++b) {
      out += diff(f, velocity_name(b, j)) * var(second_jet_symbol(j, b, a));
    }
  }
  return out;
}

}  // namespace

LagrangianForms lagrangian_forms(const FieldTheory& sys) {
  require_lagrangian(sys, "lagrangian_forms");
  LagrangianForms forms;
  forms.frame = sys.frame;
  const auto tangent = k_tangent_structure(sys.k, sys.n, sys.frame);
  const DifferentialForm dl = d(DifferentialForm::scalar(sys.frame, sys.generator));
  for (int a = 1; a <= sys.k; ++a) {
    forms.theta.push_back(apply_tensor(tangent[static_cast<std::size_t>(a - 1)], dl));
    forms.omega.push_back(-d(forms.theta.back()));
  }
  return forms;
}

Expr energy(const FieldTheory& sys) {
  require_lagrangian(sys, "energy");
  return liouville_field(sys.frame).apply(sys.generator) - sys.generator;
}

SmoothMap legendre(const FieldTheory& sys) {
  require_lagrangian(sys, "legendre");
  const FrameRef target = is_cosym(sys) ? extended_phase_frame(sys.k, sys.n)
                                        : phase_frame(sys.k, sys.n);
  std::vector<Expr> exprs;
  for (const auto& coord : target->coords()) {
    switch (coord.role) {
      case Role::Base:
      case Role::Config:
        exprs.push_back(var(coord.name));
        break;
      case Role::Momentum:
        exprs.push_back(momentum_fn(sys, coord.a, coord.i));
        break;
      default:
        throw VariantError("unexpected coordinate role in Legendre target frame");
    }
  }
  return SmoothMap(sys.frame, target, std::move(exprs));
}

SmoothMap legendre_inverse(const FieldTheory& sys) {
  require_lagrangian(sys, "legendre_inverse");
  const ExprMatrix hess = velocity_hessian(sys);
  for (const auto& row : hess) {
    for (const auto& entry : row) {
      for (int b = 1; b <= sys.k; ++b) {
        for (int j = 1; j <= sys.n; ++j) {
          if (entry.depends_on(velocity_name(b, j))) {
            throw VariantError(
                "legendre_inverse: momentum relations are not linear in the velocities");
          }
        }
      }
    }
  }
  std::map<std::string, Expr> v_zero;
  for (int b = 1; b <= sys.k; ++b) {
    for (int j = 1; j <= sys.n; ++j) v_zero[velocity_name(b, j)] = Expr::integer(0);
  }
  std::vector<Expr> rhs;
  for (int b = 1; b <= sys.k; ++b) {
    for (int j = 1; j <= sys.n; ++j) {
      rhs.push_back(var(momentum_name(b, j)) - substitute(momentum_fn(sys, b, j), v_zero));
    }
  }
  std::vector<Expr> sol;
  if (!solve_linear(hess, rhs, sol)) {
    throw VariantError("legendre_inverse: the Lagrangian is singular");
  }
  const FrameRef source = is_cosym(sys) ? extended_phase_frame(sys.k, sys.n)
                                        : phase_frame(sys.k, sys.n);
  std::vector<Expr> exprs;
  for (const auto& coord : sys.frame->coords()) {
    switch (coord.role) {
      case Role::Base:
      case Role::Config:
        exprs.push_back(var(coord.name));
        break;
      case Role::Velocity:
        exprs.push_back(sol[flat(coord.a, coord.i, sys.n)]);
        break;
      default:
        throw VariantError("unexpected coordinate role in Lagrangian frame");
    }
  }
  return SmoothMap(source, sys.frame, std::move(exprs));
}

RegularityReport regularity(const FieldTheory& sys) {
  require_lagrangian(sys, "regularity");
  RegularityReport report;
  report.hessian = velocity_hessian(sys);
  const int kn = sys.k * sys.n;
  if (kn <= 6) {
    report.determinant = determinant(report.hessian);
    report.has_determinant = true;
  }
  report.rank = symbolic_rank(report.hessian);
  report.sopde_forced = report.rank == kn;
  if (!report.sopde_forced) {
    const auto pivots = pivot_columns(report.hessian);
    for (std::size_t col = 0; col < static_cast<std::size_t>(kn); ++col) {
      bool is_pivot = false;
      for (std::size_t p : pivots) is_pivot = is_pivot || p == col;
      if (!is_pivot) {
        const int a = static_cast<int>(col) / sys.n + 1;
        const int i = static_cast<int>(col) % sys.n + 1;
        report.not_forced.push_back(velocity_name(a, i));
      }
    }
  }
  SampleRng rng(global_seed() ^ 0x6865737273ull);
  report.regular = true;
  for (int trial = 0; trial < 20 && report.regular; ++trial) {
    Assignment point;
    for (const auto& coord : sys.frame->coords()) point[coord.name] = rng.uniform(-2.0, 2.0);
    if (report.has_determinant) {
      report.regular = std::fabs(eval_expr(report.determinant, point)) > 1e-10;
    } else {
      std::vector<std::vector<double>> m;
      for (const auto& row : report.hessian) {
        std::vector<double> out;
        for (const auto& e : row) out.push_back(e.is_zero() ? 0.0 : eval_expr(e, point));
        m.push_back(std::move(out));
      }
      report.regular = std::fabs(numeric_determinant(std::move(m))) > 1e-10;
    }
  }
  return report;
}

EquationSet euler_lagrange_equations(const FieldTheory& sys) {
  require_lagrangian(sys, "euler_lagrange_equations");
  EquationSet set;
  set.alphabet = Alphabet::Jet;
  set.k = sys.k;
  set.n = sys.n;
  set.frame = sys.frame;
  const auto to_jets = velocity_to_jet(sys);
  for (int i = 1; i <= sys.n; ++i) {
    Expr residual = -diff(sys.generator, config_name(i));
    for (int a = 1; a <= sys.k; ++a) {
      residual += total_derivative(sys, momentum_fn(sys, a, i), a);
    }
    set.equations.push_back({config_name(i), substitute(residual, to_jets)});
  }
  for (int i = 1; i <= sys.n; ++i) {
    for (int a = 1; a <= sys.k; ++a) set.unknowns.push_back(jet_symbol(config_name(i), a));
  }
  for (int i = 1; i <= sys.n; ++i) {
    for (int a = 1; a <= sys.k; ++a) {
      for (int b = a; b <= sys.k; ++b) set.unknowns.push_back(second_jet_symbol(i, a, b));
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

GeometricResidual lagrangian_geometric_residual(const FieldTheory& sys, const KVectorField& g) {
  require_lagrangian(sys, "lagrangian_geometric_residual");
  if (!same_frame(g.frame(), sys.frame) || g.k() != sys.k) {
    throw FrameError("candidate k-vector field does not live on the system frame");
  }
  const LagrangianForms forms = lagrangian_forms(sys);
  GeometricResidual r{DifferentialForm(sys.frame, 1), {}};
  DifferentialForm acc = -d(DifferentialForm::scalar(sys.frame, energy(sys)));
  for (int a = 1; a <= sys.k; ++a) {
    acc = acc + interior(g.factor(a), forms.omega[static_cast<std::size_t>(a - 1)]);
  }
  if (is_cosym(sys)) {
    for (int a = 1; a <= sys.k; ++a) {
      acc = acc - DifferentialForm::basis_one_form(sys.frame, base_name(a))
                      .scaled(diff(sys.generator, base_name(a)));
      for (int b = 1; b <= sys.k; ++b) {
        const Expr delta = Expr::integer(a == b ? 1 : 0);
        r.scalar_residuals.push_back(
            {"eta" + std::to_string(a) + "(X" + std::to_string(b) + ")",
             g.factor(b).component(sys.frame->index_of(base_name(a))) - delta});
      }
    }
  }
  r.one_form = acc;
  return r;
}

EquationSet lagrangian_kvector_equations(const FieldTheory& sys) {
  require_lagrangian(sys, "lagrangian_kvector_equations");
  const KVectorField g = unknown_kvector(sys.frame, /*base_components_are_delta=*/false);
  return equations_from_geometric_residual(sys, lagrangian_geometric_residual(sys, g),
                                           component_unknowns(sys.frame, /*include_base=*/true));
}

KVectorField solve_lagrangian_kvector(const FieldTheory& sys, Gauge gauge) {
  require_lagrangian(sys, "solve_lagrangian_kvector");
  (void)gauge;
  const ExprMatrix hess = velocity_hessian(sys);
  const Expr inv_k = Expr::rational(1, sys.k);
  std::vector<VectorField> factors;
  for (int a = 1; a <= sys.k; ++a) {
    std::vector<Expr> rhs;
    for (int b = 1; b <= sys.k; ++b) {
      for (int i = 1; i <= sys.n; ++i) {
        const Expr g = momentum_fn(sys, b, i);
        Expr row = b == a ? inv_k * diff(sys.generator, config_name(i)) : Expr::integer(0);
        for (int j = 1; j <= sys.n; ++j) {
          row -= var(velocity_name(a, j)) * diff(g, config_name(j));
        }
        if (is_cosym(sys)) row -= diff(g, base_name(a));
        rhs.push_back(row);
      }
    }
    std::vector<Expr> accel;
    if (!solve_linear(hess, rhs, accel)) {
      throw VariantError(
          "solve_lagrangian_kvector: singular Lagrangian, the equations do not determine a "
          "solution");
    }
    std::vector<Expr> comps;
    for (const auto& coord : sys.frame->coords()) {
      switch (coord.role) {
        case Role::Base:
          comps.push_back(Expr::integer(coord.a == a ? 1 : 0));
          break;
        case Role::Config:
          comps.push_back(var(velocity_name(a, coord.i)));
          break;
        case Role::Velocity:
          comps.push_back(accel[flat(coord.a, coord.i, sys.n)]);
          break;
        default:
          throw VariantError("unexpected coordinate role in Lagrangian frame");
      }
    }
    factors.emplace_back(sys.frame, std::move(comps));
  }
  return KVectorField(sys.k, std::move(factors));
}

SectionReport sopde_check(const FieldTheory& sys, const KVectorField& g) {
  require_lagrangian(sys, "sopde_check");
  if (!same_frame(g.frame(), sys.frame) || g.k() != sys.k) {
    throw FrameError("candidate k-vector field does not live on the system frame");
  }
  SectionReport report;
  report.pass = true;
  for (int a = 1; a <= sys.k; ++a) {
    if (is_cosym(sys)) {
      for (int b = 1; b <= sys.k; ++b) {
        const Expr residual = g.factor(a).component(sys.frame->index_of(base_name(b))) -
                              Expr::integer(a == b ? 1 : 0);
        const Verdict v = equal(residual, Expr::integer(0));
        report.pass = report.pass && v != Verdict::NotEqual;
        report.rows.push_back({component_symbol(a, base_name(b)), residual, v});
      }
    }
    for (int i = 1; i <= sys.n; ++i) {
      const Expr residual =
          g.factor(a).component(sys.frame->index_of(config_name(i))) - var(velocity_name(a, i));
      const Verdict v = equal(residual, Expr::integer(0));
      report.pass = report.pass && v != Verdict::NotEqual;
      report.rows.push_back({component_symbol(a, config_name(i)), residual, v});
    }
  }
  return report;
}

SymbolicSection prolong(const FieldTheory& sys, const SymbolicSection& phi) {
  require_lagrangian(sys, "prolong");
  if (phi.k != sys.k) throw VariantError("prolong: section base dimension mismatch");
  std::map<std::string, Expr> values;
  for (int i = 1; i <= sys.n; ++i) {
    auto it = phi.values.find(config_name(i));
    if (it == phi.values.end()) {
      throw VariantError("prolong: section is missing a value for " + config_name(i));
    }
    values[config_name(i)] = it->second;
    for (int a = 1; a <= sys.k; ++a) {
      values[velocity_name(a, i)] = diff(it->second, base_name(a));
    }
  }
  for (const auto& [name, value] : phi.values) {
    (void)value;
    if (sys.frame->index_of(name) < 0 || sys.frame->coord(sys.frame->index_of(name)).role != Role::Config) {
      throw VariantError("prolong: " + name + " is not a configuration coordinate");
    }
  }
  return make_section(sys.k, std::move(values));
}

SectionReport verify_euler_lagrange(const FieldTheory& sys, const SymbolicSection& phi) {
  require_lagrangian(sys, "verify_euler_lagrange");
  if (phi.k != sys.k) throw VariantError("section base dimension mismatch");
  std::map<std::string, Expr> subs;
  for (int i = 1; i <= sys.n; ++i) {
    auto it = phi.values.find(config_name(i));
    if (it == phi.values.end()) {
      throw VariantError("section is missing a value for " + config_name(i));
    }
    subs[config_name(i)] = it->second;
    for (int a = 1; a <= sys.k; ++a) {
      subs[jet_symbol(config_name(i), a)] = diff(it->second, base_name(a));
      for (int b = a; b <= sys.k; ++b) {
        subs[second_jet_symbol(i, a, b)] = diff(diff(it->second, base_name(a)), base_name(b));
      }
    }
  }
  const EquationSet set = euler_lagrange_equations(sys);
  SectionReport report;
  report.pass = true;
  for (const auto& eq : set.equations) {
    const Expr value = substitute(eq.residual, subs);
    const Verdict v = equal(value, Expr::integer(0));
    report.pass = report.pass && v != Verdict::NotEqual;
    report.rows.push_back({eq.label, value, v});
  }
  return report;
}

}  // namespace geofield
