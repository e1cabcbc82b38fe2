#include "geofield/bridges.hpp"

#include "geofield/canonical.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>

namespace geofield {

namespace {

Expr minus_one_to(int power) { return Expr::integer(power % 2 == 0 ? 1 : -1); }

/// Builds a map between two frames from a per-target-coordinate rule.
SmoothMap frame_map(FrameRef source, FrameRef target,
                    const std::function<Expr(const Coordinate&)>& image) {
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(target->dim()));
  for (int idx = 0; idx < target->dim(); ++idx) exprs.push_back(image(target->coord(idx)));
  return SmoothMap(std::move(source), std::move(target), std::move(exprs));
}

Expr same_name(const Coordinate& c) { return Expr::variable(c.name); }

/// The tuple (∂/∂t¹,…,∂/∂tᵏ), optionally omitting one index and optionally
/// led by the affine direction ∂/∂p.
KVectorField base_tuple(const FrameRef& frame, int omit_a, bool lead_with_affine) {
  std::vector<VectorField> factors;
  if (lead_with_affine) {
    std::vector<int> affine = frame->indices_with_role(Role::Affine);
    if (affine.empty()) throw FrameError("frame carries no affine coordinate");
    factors.push_back(VectorField::basis(frame, frame->coord(affine.front()).name));
  }
  for (int b = 1; b <= frame->k(); ++b)
    if (b != omit_a) factors.push_back(VectorField::basis(frame, base_name(b)));
  int count = static_cast<int>(factors.size());
  return KVectorField(count, std::move(factors));
}

/// i(∂/∂tᵏ)…i(∂/∂t¹)(form ∧ dtᴬ), the common core of every extraction.
DifferentialForm contract_with_volume_slot(const DifferentialForm& form, int a) {
  const FrameRef& frame = form.frame();
  DifferentialForm dta = DifferentialForm::basis_one_form(frame, base_name(a));
  return contract_k(base_tuple(frame, 0, false), wedge(form, dta));
}

void require_multimomentum(const DifferentialForm& form, const char* who) {
  const FrameRef& frame = form.frame();
  if (!frame->has_role(Role::Base) || !frame->has_role(Role::Affine))
    throw FrameError(std::string(who) + " expects forms on the extended multimomentum frame");
}

std::string affine_name(const FrameRef& frame) {
  return frame->coord(frame->indices_with_role(Role::Affine).front()).name;
}

/// Θ = c·vol + Σ_A family_theta[A]∧i(∂tᴬ)vol and the matching Ω with
/// −dc∧vol; verifies Ω = −dΘ before returning.
MsForms assemble_pair(const FrameRef& frame, const Expr& c, const DifferentialForm& vol,
                      const std::vector<DifferentialForm>& thetas,
                      const std::vector<DifferentialForm>& omegas, const SmoothMap* pull,
                      const char* who) {
  if (thetas.size() != static_cast<std::size_t>(frame->k()) || thetas.size() != omegas.size())
    throw FrameError(std::string(who) + ": expected one form per base direction");
  DifferentialForm theta = vol.scaled(c);
  DifferentialForm omega =
      wedge(d(DifferentialForm::scalar(frame, c)), vol).scaled(Expr::integer(-1));
  for (int a = 1; a <= frame->k(); ++a) {
    const DifferentialForm& th_in = thetas[static_cast<std::size_t>(a - 1)];
    const DifferentialForm& om_in = omegas[static_cast<std::size_t>(a - 1)];
    DifferentialForm th = pull ? pullback(*pull, th_in) : th_in;
    DifferentialForm om = pull ? pullback(*pull, om_in) : om_in;
    DifferentialForm slot = interior(VectorField::basis(frame, base_name(a)), vol);
    theta = theta + wedge(th, slot);
    omega = omega + wedge(om, slot);
  }
  if (!identical(omega, -d(theta)))
    throw Error(std::string(who) + ": reconstructed pair fails Omega = -dTheta");
  return MsForms{std::move(theta), std::move(omega)};
}

CosymFamily extract_family_on_same_frame(const DifferentialForm& theta_big,
                                         const DifferentialForm& omega_big) {
  const FrameRef& frame = theta_big.frame();
  if (!frame->has_role(Role::Base))
    throw FrameError("extraction expects forms on a base-extended frame");
  int k = frame->k();
  CosymFamily out;
  for (int a = 1; a <= k; ++a) {
    out.theta.push_back(contract_with_volume_slot(theta_big, a).scaled(Expr::integer(-1)));
    out.omega.push_back(contract_with_volume_slot(omega_big, a).scaled(minus_one_to(k + 1)));
  }
  return out;
}

}  // namespace

FieldTheory autonomize(const FieldTheory& sys) {
  if (sys.variant != Variant::KSymHam)
    throw VariantError("autonomize requires " + to_string(Variant::KSymHam) + " (got " +
                       to_string(sys.variant) + ")");
  return make_field_theory(Variant::KCosymHam, sys.k, sys.n, sys.generator);
}

FieldTheory deautonomize(const FieldTheory& sys) {
  if (sys.variant != Variant::KCosymHam)
    throw VariantError("deautonomize requires " + to_string(Variant::KCosymHam) + " (got " +
                       to_string(sys.variant) + ")");
  std::string offenders;
  for (int a = 1; a <= sys.k; ++a) {
    Expr da = diff(sys.generator, base_name(a));
    if (da.is_zero()) continue;
    if (!offenders.empty()) offenders += ", ";
    offenders += "dH/d" + base_name(a) + " = " + da.str();
  }
  if (!offenders.empty())
    throw NotAutonomous("generator is not autonomous: " + offenders);
  return make_field_theory(Variant::KSymHam, sys.k, sys.n, sys.generator);
}

KVectorField suspend(const KVectorField& x) {
  const FrameRef& frame = x.frame();
  if (frame->has_role(Role::Base))
    throw FrameError("suspend expects a field on an unextended frame (got " + frame->bundle() +
                     ")");
  int k = frame->k(), n = frame->n();
  if (x.k() != k) throw FrameError("suspend expects a k-tuple matching the frame");
  FrameRef target = frame->has_role(Role::Momentum) ? extended_phase_frame(k, n)
                                                    : extended_velocity_frame(k, n);
  std::vector<VectorField> factors;
  for (int a = 1; a <= k; ++a) {
    std::vector<Expr> comps(static_cast<std::size_t>(target->dim()));
    for (int idx = 0; idx < target->dim(); ++idx) {
      const Coordinate& coord = target->coord(idx);
      if (coord.role == Role::Base)
        comps[static_cast<std::size_t>(idx)] = Expr::integer(coord.a == a ? 1 : 0);
      else
        comps[static_cast<std::size_t>(idx)] = x.factor(a).component(coord.name);
    }
    factors.emplace_back(target, std::move(comps));
  }
  return KVectorField(k, std::move(factors));
}

KVectorField deproject(const KVectorField& x) {
  const FrameRef& frame = x.frame();
  if (!frame->has_role(Role::Base))
    throw FrameError("deproject expects a field on a base-extended frame (got " +
                     frame->bundle() + ")");
  int k = frame->k(), n = frame->n();
  if (x.k() != k) throw FrameError("deproject expects a k-tuple matching the frame");
  FrameRef target =
      frame->has_role(Role::Momentum) ? phase_frame(k, n) : velocity_frame(k, n);
  std::vector<VectorField> factors;
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      Expr c = x.factor(a).component(base_name(b)) - Expr::integer(a == b ? 1 : 0);
      if (!c.is_zero())
        throw VariantError("field is not a suspension: factor " + std::to_string(a) +
                           " has base component " + x.factor(a).component(base_name(b)).str() +
                           " along " + base_name(b));
    }
    std::vector<Expr> comps(static_cast<std::size_t>(target->dim()));
    for (int idx = 0; idx < target->dim(); ++idx) {
      const Coordinate& coord = target->coord(idx);
      Expr c = x.factor(a).component(coord.name);
      for (int b = 1; b <= k; ++b)
        if (c.depends_on(base_name(b)))
          throw VariantError("field is not projectable: factor " + std::to_string(a) +
                             " component " + coord.name + " depends on " + base_name(b));
      comps[static_cast<std::size_t>(idx)] = std::move(c);
    }
    factors.emplace_back(target, std::move(comps));
  }
  return KVectorField(k, std::move(factors));
}

SplitMaps split_multimomentum(int k, int n) {
  FrameRef mm = multimomentum_frame(k, n);
  return SplitMaps{SmoothMap::identity(mm), SmoothMap::identity(mm)};
}

SmoothMap zero_section_embedding(int k, int n) {
  return frame_map(phase_frame(k, n), multimomentum_frame(k, n), [](const Coordinate& c) {
    return (c.role == Role::Base || c.role == Role::Affine) ? Expr() : same_name(c);
  });
}

SmoothMap momentum_submersion(int k, int n) {
  return frame_map(multimomentum_frame(k, n), phase_frame(k, n), same_name);
}

SmoothMap extended_phase_embedding(int k, int n) {
  return frame_map(extended_phase_frame(k, n), multimomentum_frame(k, n),
                   [](const Coordinate& c) {
                     return c.role == Role::Affine ? Expr() : same_name(c);
                   });
}

SmoothMap affine_quotient(int k, int n) {
  return frame_map(multimomentum_frame(k, n), extended_phase_frame(k, n), same_name);
}

SmoothMap unit_section_embedding(int k, int n) {
  return frame_map(extended_phase_frame(k, n), multimomentum_frame(k, n),
                   [](const Coordinate& c) {
                     if (c.role == Role::Affine) return Expr::integer(1);
                     if (c.role == Role::Momentum) return Expr();
                     return same_name(c);
                   });
}

KSymplecticExtraction extract_ksymplectic(const DifferentialForm& big_theta,
                                          const DifferentialForm& big_omega) {
  require_multimomentum(big_theta, "extract_ksymplectic");
  const FrameRef& frame = big_theta.frame();
  int k = frame->k(), n = frame->n();
  SmoothMap j = zero_section_embedding(k, n);
  KSymplecticExtraction out;
  for (int a = 1; a <= k; ++a) {
    out.theta.push_back(
        pullback(j, contract_with_volume_slot(big_theta, a).scaled(Expr::integer(-1))));
    out.omega.push_back(
        pullback(j, contract_with_volume_slot(big_omega, a).scaled(minus_one_to(k + 1))));
  }
  return out;
}

MsForms rebuild_ms_from_ksymplectic(const std::vector<DifferentialForm>& theta,
                                    const std::vector<DifferentialForm>& omega) {
  if (theta.empty()) throw FrameError("rebuild_ms_from_ksymplectic: empty family");
  const FrameRef& phase = theta.front().frame();
  int k = phase->k(), n = phase->n();
  SmoothMap sigma2 = momentum_submersion(k, n);
  const FrameRef& mm = sigma2.source();
  return assemble_pair(mm, Expr::variable(affine_name(mm)), volume_form(mm), theta, omega,
                       &sigma2, "rebuild_ms_from_ksymplectic");
}

KCosymplecticExtraction extract_kcosymplectic(const DifferentialForm& big_theta,
                                              const DifferentialForm& big_omega) {
  require_multimomentum(big_theta, "extract_kcosymplectic");
  const FrameRef& frame = big_theta.frame();
  int k = frame->k(), n = frame->n();
  SmoothMap embed = extended_phase_embedding(k, n);
  SmoothMap unit = unit_section_embedding(k, n);
  KCosymplecticExtraction out;
  for (int a = 1; a <= k; ++a) {
    out.theta.push_back(
        pullback(embed, contract_with_volume_slot(big_theta, a).scaled(Expr::integer(-1))));
    out.omega.push_back(
        pullback(embed, contract_with_volume_slot(big_omega, a).scaled(minus_one_to(k + 1))));
    out.eta.push_back(pullback(embed, contract_k(base_tuple(frame, a, true), big_omega))
                          .scaled(minus_one_to(k - a + 1)));
    if (k == 1)
      out.eta_alt.push_back(pullback(unit, big_theta));
    else
      out.eta_alt.push_back(
          pullback(unit, contract_k(base_tuple(frame, a, false), big_theta))
              .scaled(minus_one_to(k - a)));
  }
  return out;
}

MsForms rebuild_ms_from_kcosymplectic(const std::vector<DifferentialForm>& eta,
                                      const std::vector<DifferentialForm>& theta,
                                      const std::vector<DifferentialForm>& omega) {
  if (eta.empty()) throw FrameError("rebuild_ms_from_kcosymplectic: empty family");
  const FrameRef& extended = eta.front().frame();
  int k = extended->k(), n = extended->n();
  SmoothMap mu = affine_quotient(k, n);
  const FrameRef& mm = mu.source();
  DifferentialForm vol = pullback(mu, eta.front());
  for (std::size_t a = 1; a < eta.size(); ++a) vol = wedge(vol, pullback(mu, eta[a]));
  return assemble_pair(mm, Expr::variable(affine_name(mm)), vol, theta, omega, &mu,
                       "rebuild_ms_from_kcosymplectic");
}

CosymFamily extract_cosym_from_hamcartan(const DifferentialForm& theta_h,
                                         const DifferentialForm& omega_h) {
  return extract_family_on_same_frame(theta_h, omega_h);
}

MsForms rebuild_hamcartan_from_cosym(const Expr& h, const std::vector<DifferentialForm>& theta,
                                     const std::vector<DifferentialForm>& omega) {
  if (theta.empty()) throw FrameError("rebuild_hamcartan_from_cosym: empty family");
  const FrameRef& frame = theta.front().frame();
  return assemble_pair(frame, -h, volume_form(frame), theta, omega, nullptr,
                       "rebuild_hamcartan_from_cosym");
}

CosymFamily extract_cosym_from_poincare(const DifferentialForm& theta_l,
                                        const DifferentialForm& omega_l) {
  return extract_family_on_same_frame(theta_l, omega_l);
}

MsForms rebuild_poincare_from_cosym(const Expr& energy, const std::vector<DifferentialForm>& theta,
                                    const std::vector<DifferentialForm>& omega) {
  if (theta.empty()) throw FrameError("rebuild_poincare_from_cosym: empty family");
  const FrameRef& frame = theta.front().frame();
  return assemble_pair(frame, -energy, volume_form(frame), theta, omega, nullptr,
                       "rebuild_poincare_from_cosym");
}

// ---------------------------------------------------------------------------
// Equivalence certification.
// ---------------------------------------------------------------------------

namespace {

/// A monomial in the unknown symbols: sorted (name, degree) pairs.
using MonoKey = std::vector<std::pair<std::string, int>>;
using MonoVector = std::map<MonoKey, Expr>;

void decompose_rec(const Expr& r, const std::vector<std::string>& unknowns, std::size_t idx,
                   MonoKey& current, MonoVector& out) {
  if (r.is_zero()) return;
  if (idx == unknowns.size()) {
    Expr& slot = out[current];
    slot = slot + r;
    return;
  }
  const std::string& u = unknowns[idx];
  if (!r.depends_on(u)) {
    decompose_rec(r, unknowns, idx + 1, current, out);
    return;
  }
  std::map<std::string, Expr> at_zero{{u, Expr()}};
  Expr deriv = r;
  long long factorial = 1;
  for (int degree = 0; degree <= 4; ++degree) {
    if (degree > 0) {
      deriv = diff(deriv, u);
      factorial *= degree;
    }
    Expr coeff = substitute(deriv, at_zero) / Expr::integer(factorial);
    if (!coeff.is_zero()) {
      if (degree > 0) current.emplace_back(u, degree);
      decompose_rec(coeff, unknowns, idx + 1, current, out);
      if (degree > 0) current.pop_back();
    }
  }
  if (!diff(deriv, u).is_zero())
    throw Error("certify_equation_equivalence: residual has degree > 4 in unknown " + u);
}

MonoVector decompose(const Expr& r, const std::vector<std::string>& unknowns) {
  MonoVector out;
  MonoKey current;
  decompose_rec(r, unknowns, 0, current, out);
  return out;
}

struct LabeledRow {
  std::string label;
  MonoVector row;
};

/// Rows of the echelon basis keyed by pivot monomial; every pivot is the
/// smallest monomial of its row, so reducing in ascending pivot order only
/// ever introduces larger monomials and one pass is complete.
using EchelonBasis = std::map<MonoKey, MonoVector>;

/// Subtracts multiples of the basis rows; prunes entries that are zero,
/// flagging the probabilistic ones.
void reduce_row(MonoVector& row, const EchelonBasis& basis, bool* probabilistic) {
  for (const auto& [pivot, b] : basis) {
    auto it = row.find(pivot);
    if (it == row.end() || it->second.is_zero()) continue;
    Expr factor = it->second;
    for (const auto& [key, value] : b) {
      Expr& slot = row[key];
      slot = slot - factor * value;
    }
  }
  for (auto it = row.begin(); it != row.end();) {
    if (it->second.is_zero()) {
      it = row.erase(it);
    } else if (is_probably_zero(it->second)) {
      if (probabilistic != nullptr) *probabilistic = true;
      it = row.erase(it);
    } else {
      ++it;
    }
  }
}

Expr rebuild_witness(const MonoVector& row) {
  Expr w;
  for (const auto& [key, coeff] : row) {
    Expr term = coeff;
    for (const auto& [name, degree] : key) term = term * Expr::variable(name).pow(degree);
    w = w + term;
  }
  return w;
}

EchelonBasis echelon_basis(const std::vector<LabeledRow>& rows, bool* probabilistic) {
  EchelonBasis basis;
  for (const LabeledRow& labeled : rows) {
    MonoVector row = labeled.row;
    reduce_row(row, basis, probabilistic);
    if (row.empty()) continue;
    MonoKey pivot_key = row.begin()->first;
    Expr pivot = row.begin()->second;
    for (auto& entry : row) entry.second = entry.second / pivot;
    basis.emplace(std::move(pivot_key), std::move(row));
  }
  return basis;
}

/// First row of `rows` that fails to reduce against `basis`, if any.
bool contained(const std::vector<LabeledRow>& rows, const EchelonBasis& basis,
               bool* probabilistic, std::string* witness_label, Expr* witness) {
  for (const LabeledRow& labeled : rows) {
    MonoVector row = labeled.row;
    reduce_row(row, basis, probabilistic);
    if (!row.empty()) {
      *witness_label = labeled.label;
      *witness = rebuild_witness(row);
      return false;
    }
  }
  return true;
}

}  // namespace

EquivalenceCertificate certify_equation_equivalence(const EquationSet& e1,
                                                    const EquationSet& e2) {
  if (e1.alphabet != e2.alphabet)
    throw VariantError("cannot certify equivalence across alphabets (" + to_string(e1.alphabet) +
                       " vs " + to_string(e2.alphabet) + ")");
  std::vector<std::string> unknowns = e1.unknowns;
  for (const std::string& u : e2.unknowns)
    if (std::find(unknowns.begin(), unknowns.end(), u) == unknowns.end()) unknowns.push_back(u);

  auto rows_of = [&unknowns](const EquationSet& set) {
    std::vector<LabeledRow> rows;
    rows.reserve(set.equations.size());
    for (const Equation& eq : set.equations) rows.push_back({eq.label, decompose(eq.residual, unknowns)});
    return rows;
  };

  EquivalenceCertificate cert;
  std::vector<LabeledRow> rows1 = rows_of(e1);
  std::vector<LabeledRow> rows2 = rows_of(e2);
  EchelonBasis basis1 = echelon_basis(rows1, &cert.probabilistic);
  EchelonBasis basis2 = echelon_basis(rows2, &cert.probabilistic);

  if (!contained(rows2, basis1, &cert.probabilistic, &cert.witness_label, &cert.witness)) {
    cert.equivalent = false;
    cert.detail = "residual of the second set is not generated by the first";
    return cert;
  }
  if (!contained(rows1, basis2, &cert.probabilistic, &cert.witness_label, &cert.witness)) {
    cert.equivalent = false;
    cert.detail = "residual of the first set is not generated by the second";
    return cert;
  }
  cert.equivalent = true;
  return cert;
}

}  // namespace geofield
