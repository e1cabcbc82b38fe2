/**
 * @file  canonical.cpp
 * @brief Construction of the canonical structures in Darboux coordinates and
 *        symbolic/numeric verification of their defining relations.
 */
#include "geofield/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace geofield {

namespace {

Expr var(const std::string& name) { return Expr::variable(name); }

DifferentialForm momentum_potential(const FrameRef& frame, int a, int n) {
  DifferentialForm form(frame, 1);
  for (int i = 1; i <= n; ++i) {
    form = form + DifferentialForm::basis_one_form(frame, config_name(i))
                      .scaled(var(momentum_name(a, i)));
  }
  return form;
}

DifferentialForm darboux_two_form(const FrameRef& frame, int a, int n) {
  DifferentialForm form(frame, 2);
  for (int i = 1; i <= n; ++i) {
    form = form + wedge(DifferentialForm::basis_one_form(frame, config_name(i)),
                        DifferentialForm::basis_one_form(frame, momentum_name(a, i)));
  }
  return form;
}

std::vector<VectorField> momentum_span(const FrameRef& frame, int k, int n) {
  std::vector<VectorField> fields;
  for (int a = 1; a <= k; ++a) {
    for (int i = 1; i <= n; ++i) {
      fields.push_back(VectorField::basis(frame, momentum_name(a, i)));
    }
  }
  return fields;
}

/// Rank of a numeric matrix via partial-pivot elimination.
int numeric_rank(std::vector<std::vector<double>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  double max_abs = 1.0;
  for (const auto& row : m) {
    for (double v : row) max_abs = std::max(max_abs, std::fabs(v));
  }
  const double eps = 1e-9 * max_abs;
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = pivot_row;
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[sel][col])) sel = r;
    }
    if (std::fabs(m[sel][col]) <= eps) continue;
    std::swap(m[sel], m[pivot_row]);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      const double f = m[r][col] / m[pivot_row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[pivot_row][c];
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

Assignment random_point(const FrameRef& frame, SampleRng& rng) {
  Assignment point;
  for (const auto& coord : frame->coords()) {
    point[coord.name] = rng.uniform(-2.0, 2.0);
  }
  return point;
}

/// True when the joint kernel of the 2-forms is trivial at 20 random points.
bool jointly_nondegenerate(const FrameRef& frame, const std::vector<DifferentialForm>& forms) {
  const int dim = frame->dim();
  SampleRng rng(global_seed() ^ 0x6b73796d70ull);
  for (int trial = 0; trial < 20; ++trial) {
    const Assignment point = random_point(frame, rng);
    std::vector<std::vector<double>> m;
    for (const auto& form : forms) {
      for (int r = 0; r < dim; ++r) {
        std::vector<double> row(static_cast<std::size_t>(dim), 0.0);
        for (int c = 0; c < dim; ++c) {
          Expr value = form.coefficient(std::vector<int>{std::min(r, c), std::max(r, c)});
          if (r == c || value.is_zero()) continue;
          double entry = eval_expr(value, point);
          row[static_cast<std::size_t>(c)] = (r < c) ? entry : -entry;
        }
        m.push_back(std::move(row));
      }
    }
    if (numeric_rank(std::move(m)) != dim) return false;
  }
  return true;
}

/// True when v -> i(v)Omega has trivial kernel at 20 random points.
bool one_nondegenerate(const MultisymplecticStructure& s) {
  const FrameRef& frame = s.frame;
  const int dim = frame->dim();
  std::vector<DifferentialForm> columns;
  std::set<std::vector<int>> tuples;
  for (int c = 0; c < dim; ++c) {
    columns.push_back(interior(VectorField::basis(frame, frame->coord(c).name), s.omega));
    for (const auto& [tuple, coeff] : columns.back().terms()) tuples.insert(tuple);
  }
  SampleRng rng(global_seed() ^ 0x6d756c7469ull);
  for (int trial = 0; trial < 20; ++trial) {
    const Assignment point = random_point(frame, rng);
    std::vector<std::vector<double>> m;
    for (const auto& tuple : tuples) {
      std::vector<double> row;
      for (int c = 0; c < dim; ++c) {
        const Expr coeff = columns[static_cast<std::size_t>(c)].coefficient(tuple);
        row.push_back(coeff.is_zero() ? 0.0 : eval_expr(coeff, point));
      }
      m.push_back(std::move(row));
    }
    if (numeric_rank(std::move(m)) != dim) return false;
  }
  return true;
}

bool vanishes_on_pairs(const DifferentialForm& form, const std::vector<VectorField>& span) {
  for (const auto& u : span) {
    for (const auto& w : span) {
      if (!interior(w, interior(u, form)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

KSymplecticStructure canonical_ksymplectic(int k, int n) {
  KSymplecticStructure s;
  s.frame = phase_frame(k, n);
  for (int a = 1; a <= k; ++a) {
    s.theta.push_back(momentum_potential(s.frame, a, n));
    s.omega.push_back(darboux_two_form(s.frame, a, n));
  }
  s.vertical = momentum_span(s.frame, k, n);
  return s;
}

KCosymplecticStructure canonical_kcosymplectic(int k, int n) {
  KCosymplecticStructure s;
  s.frame = extended_phase_frame(k, n);
  for (int a = 1; a <= k; ++a) {
    s.eta.push_back(DifferentialForm::basis_one_form(s.frame, base_name(a)));
    s.theta.push_back(momentum_potential(s.frame, a, n));
    s.omega.push_back(darboux_two_form(s.frame, a, n));
    s.reeb.push_back(VectorField::basis(s.frame, base_name(a)));
  }
  s.vertical = momentum_span(s.frame, k, n);
  return s;
}

MultisymplecticStructure canonical_multisymplectic(int k, int n) {
  FrameRef frame = multimomentum_frame(k, n);
  DifferentialForm theta = volume_form(frame).scaled(var("p"));
  for (int a = 1; a <= k; ++a) {
    for (int i = 1; i <= n; ++i) {
      theta = theta + wedge(DifferentialForm::basis_one_form(frame, config_name(i))
                                .scaled(var(momentum_name(a, i))),
                            dk1t(frame, a));
    }
  }
  DifferentialForm omega = -d(theta);
  return MultisymplecticStructure{std::move(frame), std::move(theta), std::move(omega)};
}

std::vector<OneOneTensor> k_tangent_structure(int k, int n, const FrameRef& frame) {
  if (!frame || frame->k() != k || frame->n() != n || !frame->has_role(Role::Velocity)) {
    throw FrameError("k_tangent_structure: frame must carry velocity coordinates for (k,n)");
  }
  std::vector<OneOneTensor> tensors;
  for (int a = 1; a <= k; ++a) {
    OneOneTensor s = OneOneTensor::zero(frame);
    for (int i = 1; i <= n; ++i) {
      s.set_entry(frame->index_of(velocity_name(a, i)), frame->index_of(config_name(i)),
                  Expr::integer(1));
    }
    tensors.push_back(std::move(s));
  }
  return tensors;
}

VectorField liouville_field(const FrameRef& frame) {
  if (!frame || !frame->has_role(Role::Velocity)) {
    throw FrameError("liouville_field: frame must carry velocity coordinates");
  }
  std::vector<Expr> comps(static_cast<std::size_t>(frame->dim()), Expr::integer(0));
  for (int idx : frame->indices_with_role(Role::Velocity)) {
    comps[static_cast<std::size_t>(idx)] = var(frame->coord(idx).name);
  }
  return VectorField(frame, std::move(comps));
}

DifferentialForm volume_form(int k) { return volume_form(base_frame(k)); }

DifferentialForm volume_form(const FrameRef& frame) {
  if (!frame || !frame->has_role(Role::Base)) {
    throw FrameError("volume_form: frame carries no base coordinates");
  }
  std::vector<int> tuple = frame->indices_with_role(Role::Base);
  std::sort(tuple.begin(), tuple.end());
  DifferentialForm vol(frame, static_cast<int>(tuple.size()));
  vol.add_term(tuple, Expr::integer(1));
  return vol;
}

DifferentialForm dk1t(const FrameRef& frame, int a) {
  return interior(VectorField::basis(frame, base_name(a)), volume_form(frame));
}

std::vector<std::pair<std::string, bool>> check_invariants(const KSymplecticStructure& s) {
  std::vector<std::pair<std::string, bool>> out;
  bool potentials = true, closed = true, vertical = true;
  for (std::size_t a = 0; a < s.omega.size(); ++a) {
    potentials = potentials && identical(s.omega[a], -d(s.theta[a]));
    closed = closed && d(s.omega[a]).is_zero();
    vertical = vertical && vanishes_on_pairs(s.omega[a], s.vertical);
  }
  out.emplace_back("omega^A = -d(theta^A)", potentials);
  out.emplace_back("d(omega^A) = 0", closed);
  out.emplace_back("omega^A vanishes on V x V", vertical);
  out.emplace_back("common kernel of the omega^A is trivial",
                   jointly_nondegenerate(s.frame, s.omega));
  return out;
}

std::vector<std::pair<std::string, bool>> check_invariants(const KCosymplecticStructure& s) {
  std::vector<std::pair<std::string, bool>> out;
  DifferentialForm top = DifferentialForm::scalar(s.frame, Expr::integer(1));
  for (const auto& eta : s.eta) top = wedge(top, eta);
  out.emplace_back("eta^1 ^ ... ^ eta^k != 0", !top.is_zero());

  bool eta_vertical = true, potentials = true, closed = true, omega_vertical = true;
  bool reeb_eta = true, reeb_omega = true;
  for (std::size_t a = 0; a < s.omega.size(); ++a) {
    potentials = potentials && identical(s.omega[a], -d(s.theta[a]));
    closed = closed && d(s.omega[a]).is_zero();
    omega_vertical = omega_vertical && vanishes_on_pairs(s.omega[a], s.vertical);
    for (const auto& v : s.vertical) {
      eta_vertical = eta_vertical && pairing(s.eta[a], v).is_zero();
    }
    for (std::size_t b = 0; b < s.omega.size(); ++b) {
      const Expr delta = Expr::integer(a == b ? 1 : 0);
      reeb_eta = reeb_eta && (pairing(s.eta[b], s.reeb[a]) - delta).is_zero();
      reeb_omega = reeb_omega && interior(s.reeb[a], s.omega[b]).is_zero();
    }
  }
  out.emplace_back("eta^A vanishes on V", eta_vertical);
  out.emplace_back("Omega^A = -d(Theta^A)", potentials);
  out.emplace_back("d(Omega^A) = 0", closed);
  out.emplace_back("Omega^A vanishes on V x V", omega_vertical);
  out.emplace_back("i(R_A) eta^B = delta(A,B)", reeb_eta);
  out.emplace_back("i(R_A) Omega^B = 0", reeb_omega);
  // The stacked pair (eta, Omega) is jointly nondegenerate: ker eta ∩ ker Omega = 0.
  std::vector<DifferentialForm> stacked = s.omega;
  bool joint = true;
  {
    const int dim = s.frame->dim();
    SampleRng rng(global_seed() ^ 0x636f73796dull);
    for (int trial = 0; trial < 20 && joint; ++trial) {
      const Assignment point = random_point(s.frame, rng);
      std::vector<std::vector<double>> m;
      for (const auto& eta : s.eta) {
        std::vector<double> row;
        for (int c = 0; c < dim; ++c) {
          const Expr coeff = eta.coefficient(std::vector<int>{c});
          row.push_back(coeff.is_zero() ? 0.0 : eval_expr(coeff, point));
        }
        m.push_back(std::move(row));
      }
      for (const auto& omega : stacked) {
        for (int r = 0; r < dim; ++r) {
          std::vector<double> row(static_cast<std::size_t>(dim), 0.0);
          for (int c = 0; c < dim; ++c) {
            if (r == c) continue;
            Expr value = omega.coefficient(std::vector<int>{std::min(r, c), std::max(r, c)});
            if (value.is_zero()) continue;
            const double entry = eval_expr(value, point);
            row[static_cast<std::size_t>(c)] = (r < c) ? entry : -entry;
          }
          m.push_back(std::move(row));
        }
      }
      joint = numeric_rank(std::move(m)) == dim;
    }
  }
  out.emplace_back("ker(eta) ∩ ker(Omega) is trivial", joint);
  return out;
}

std::vector<std::pair<std::string, bool>> check_invariants(const MultisymplecticStructure& s) {
  std::vector<std::pair<std::string, bool>> out;
  out.emplace_back("Omega = -d(Theta)", identical(s.omega, -d(s.theta)));
  out.emplace_back("d(Omega) = 0", d(s.omega).is_zero());
  out.emplace_back("Omega is 1-nondegenerate at random points", one_nondegenerate(s));
  return out;
}

}  // namespace geofield
