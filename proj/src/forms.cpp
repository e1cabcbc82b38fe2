/**
 * @file  forms.cpp
 * @brief Sparse exterior calculus in a fixed adapted chart.
 */
#include "geofield/forms.hpp"

#include <algorithm>
#include <sstream>

namespace geofield {

// ---------------------------------------------------------------------------
// CoordinateFrame.
// ---------------------------------------------------------------------------

CoordinateFrame::CoordinateFrame(int k, int n, std::string bundle, std::vector<Coordinate> coords)
    : k_(k), n_(n), bundle_(std::move(bundle)), coords_(std::move(coords)) {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    for (std::size_t j = i + 1; j < coords_.size(); ++j)
      if (coords_[i].name == coords_[j].name)
        throw FrameError("duplicate coordinate name: " + coords_[i].name);
}

int CoordinateFrame::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].name == name) return static_cast<int>(i);
  return -1;
}

bool CoordinateFrame::has_role(Role r) const {
  for (const auto& c : coords_)
    if (c.role == r) return true;
  return false;
}

std::vector<int> CoordinateFrame::indices_with_role(Role r) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].role == r) out.push_back(static_cast<int>(i));
  return out;
}

bool same_frame(const FrameRef& a, const FrameRef& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

std::string base_name(int A) { return "t" + std::to_string(A); }
std::string config_name(int i) { return "q" + std::to_string(i); }
std::string momentum_name(int A, int i) {
  return "p" + std::to_string(A) + "_" + std::to_string(i);
}
std::string velocity_name(int A, int i) {
  return "v" + std::to_string(A) + "_" + std::to_string(i);
}

namespace {

void check_counts(int k, int n) {
  if (k < 1 || n < 1) throw FrameError("frame requires k >= 1 and n >= 1");
}

void push_base(std::vector<Coordinate>& cs, int k) {
  for (int A = 1; A <= k; ++A) cs.push_back({base_name(A), Role::Base, A, 0});
}
void push_config(std::vector<Coordinate>& cs, int n) {
  for (int i = 1; i <= n; ++i) cs.push_back({config_name(i), Role::Config, 0, i});
}
void push_momenta(std::vector<Coordinate>& cs, int k, int n) {
  for (int A = 1; A <= k; ++A)
    for (int i = 1; i <= n; ++i) cs.push_back({momentum_name(A, i), Role::Momentum, A, i});
}
void push_velocities(std::vector<Coordinate>& cs, int k, int n) {
  for (int A = 1; A <= k; ++A)
    for (int i = 1; i <= n; ++i) cs.push_back({velocity_name(A, i), Role::Velocity, A, i});
}

}  // namespace

FrameRef base_frame(int k) {
  if (k < 1) throw FrameError("frame requires k >= 1");
  std::vector<Coordinate> cs;
  push_base(cs, k);
  return std::make_shared<CoordinateFrame>(k, 0, "R^k", std::move(cs));
}

FrameRef phase_frame(int k, int n) {
  check_counts(k, n);
  std::vector<Coordinate> cs;
  push_config(cs, n);
  push_momenta(cs, k, n);
  return std::make_shared<CoordinateFrame>(k, n, "(T^1_k)*Q", std::move(cs));
}

FrameRef extended_phase_frame(int k, int n) {
  check_counts(k, n);
  std::vector<Coordinate> cs;
  push_base(cs, k);
  push_config(cs, n);
  push_momenta(cs, k, n);
  return std::make_shared<CoordinateFrame>(k, n, "R^k x (T^1_k)*Q", std::move(cs));
}

FrameRef velocity_frame(int k, int n) {
  check_counts(k, n);
  std::vector<Coordinate> cs;
  push_config(cs, n);
  push_velocities(cs, k, n);
  return std::make_shared<CoordinateFrame>(k, n, "T^1_k Q", std::move(cs));
}

FrameRef extended_velocity_frame(int k, int n) {
  check_counts(k, n);
  std::vector<Coordinate> cs;
  push_base(cs, k);
  push_config(cs, n);
  push_velocities(cs, k, n);
  return std::make_shared<CoordinateFrame>(k, n, "R^k x T^1_k Q", std::move(cs));
}

FrameRef multimomentum_frame(int k, int n) {
  check_counts(k, n);
  std::vector<Coordinate> cs;
  push_base(cs, k);
  push_config(cs, n);
  push_momenta(cs, k, n);
  cs.push_back({"p", Role::Affine, 0, 0});
  return std::make_shared<CoordinateFrame>(k, n, "M(pi) = R^k x R x (T^1_k)*Q", std::move(cs));
}

// ---------------------------------------------------------------------------
// VectorField.
// ---------------------------------------------------------------------------

VectorField::VectorField(FrameRef frame, std::vector<Expr> components)
    : frame_(std::move(frame)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != frame_->dim())
    throw FrameError("vector field component count does not match frame dimension");
}

VectorField VectorField::zero(const FrameRef& frame) {
  return VectorField(frame, std::vector<Expr>(static_cast<std::size_t>(frame->dim())));
}

VectorField VectorField::basis(const FrameRef& frame, const std::string& coord) {
  int ix = frame->index_of(coord);
  if (ix < 0) throw FrameError("no coordinate named " + coord + " in frame " + frame->bundle());
  std::vector<Expr> comps(static_cast<std::size_t>(frame->dim()));
  comps[static_cast<std::size_t>(ix)] = Expr::integer(1);
  return VectorField(frame, std::move(comps));
}

const Expr& VectorField::component(const std::string& coord) const {
  int ix = frame_->index_of(coord);
  if (ix < 0) throw FrameError("no coordinate named " + coord);
  return comps_[static_cast<std::size_t>(ix)];
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (!same_frame(frame_, o.frame_)) throw FrameError("vector field frame mismatch");
  std::vector<Expr> comps(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps[i] = comps_[i] + o.comps_[i];
  return VectorField(frame_, std::move(comps));
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (!same_frame(frame_, o.frame_)) throw FrameError("vector field frame mismatch");
  std::vector<Expr> comps(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps[i] = comps_[i] - o.comps_[i];
  return VectorField(frame_, std::move(comps));
}

VectorField VectorField::scaled(const Expr& c) const {
  std::vector<Expr> comps(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps[i] = comps_[i] * c;
  return VectorField(frame_, std::move(comps));
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

Expr VectorField::apply(const Expr& f) const {
  Expr acc;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    acc += comps_[i] * diff(f, frame_->coord(static_cast<int>(i)).name);
  }
  return acc;
}

std::string VectorField::str() const {
  std::string out;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    std::string c = comps_[i].str();
    std::string basis = "d/d" + frame_->coord(static_cast<int>(i)).name;
    std::string term;
    if (c == "1") term = basis;
    else if (c == "-1") term = "-" + basis;
    else if (c.find(' ') != std::string::npos) term = "(" + c + ")*" + basis;
    else term = c + "*" + basis;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

KVectorField::KVectorField(int k, std::vector<VectorField> factors) : factors_(std::move(factors)) {
  if (static_cast<int>(factors_.size()) != k || k < 1)
    throw FrameError("k-vector field needs exactly k factors");
  for (const auto& f : factors_)
    if (!same_frame(f.frame(), factors_.front().frame()))
      throw FrameError("k-vector field factors must share one frame");
}

// ---------------------------------------------------------------------------
// DifferentialForm.
// ---------------------------------------------------------------------------

DifferentialForm::DifferentialForm(FrameRef frame, int degree)
    : frame_(std::move(frame)), degree_(degree) {
  if (degree < 0) throw FrameError("form degree must be nonnegative");
}

DifferentialForm DifferentialForm::scalar(const FrameRef& frame, const Expr& value) {
  DifferentialForm f(frame, 0);
  f.add_term({}, value);
  return f;
}

DifferentialForm DifferentialForm::basis_one_form(const FrameRef& frame, const std::string& coord) {
  int ix = frame->index_of(coord);
  if (ix < 0) throw FrameError("no coordinate named " + coord + " in frame " + frame->bundle());
  DifferentialForm f(frame, 1);
  f.add_term({ix}, Expr::integer(1));
  return f;
}

Expr DifferentialForm::coefficient(const std::vector<int>& tuple) const {
  auto it = terms_.find(tuple);
  return it == terms_.end() ? Expr() : it->second;
}

Expr DifferentialForm::coefficient(const std::vector<std::string>& coords) const {
  std::vector<int> tuple;
  tuple.reserve(coords.size());
  for (const auto& c : coords) {
    int ix = frame_->index_of(c);
    if (ix < 0) throw FrameError("no coordinate named " + c);
    tuple.push_back(ix);
  }
  return coefficient(tuple);
}

void DifferentialForm::add_term(const std::vector<int>& tuple, const Expr& coeff) {
  if (static_cast<int>(tuple.size()) != degree_)
    throw FrameError("index tuple length does not match form degree");
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
    if (tuple[i] >= tuple[i + 1]) throw FrameError("index tuple must be strictly increasing");
  if (!tuple.empty() &&
      (tuple.front() < 0 || tuple.back() >= frame_->dim()))
    throw FrameError("index tuple out of range");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(tuple, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  if (!same_frame(frame_, o.frame_)) throw FrameError("form frame mismatch");
  if (degree_ != o.degree_) throw FrameError("form degree mismatch in addition");
  DifferentialForm r = *this;
  for (const auto& [t, c] : o.terms_) r.add_term(t, c);
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const {
  return *this + (-o);
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r(frame_, degree_);
  for (const auto& [t, c] : terms_) r.add_term(t, -c);
  return r;
}

DifferentialForm DifferentialForm::scaled(const Expr& c) const {
  DifferentialForm r(frame_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [t, coeff] : terms_) r.add_term(t, coeff * c);
  return r;
}

Expr DifferentialForm::scalar_value() const {
  if (degree_ != 0) throw FrameError("scalar_value requires a degree-0 form");
  return coefficient(std::vector<int>{});
}

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  if (degree_ == 0) return terms_.begin()->second.str();
  std::string out;
  for (const auto& [t, c] : terms_) {
    std::string basis;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) basis += "∧";  // wedge
      basis += "d" + frame_->coord(t[i]).name;
    }
    std::string cs = c.str();
    std::string term;
    if (cs == "1") term = basis;
    else if (cs == "-1") term = "-" + basis;
    else if (cs.find(' ') != std::string::npos) term = "(" + cs + ")*" + basis;
    else term = cs + "*" + basis;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SmoothMap / OneOneTensor.
// ---------------------------------------------------------------------------

SmoothMap::SmoothMap(FrameRef source, FrameRef target, std::vector<Expr> target_exprs)
    : source_(std::move(source)), target_(std::move(target)), exprs_(std::move(target_exprs)) {
  if (static_cast<int>(exprs_.size()) != target_->dim())
    throw FrameError("smooth map needs one expression per target coordinate");
  for (const auto& e : exprs_)
    for (const auto& v : e.free_variables())
      if (!source_->has(v))
        throw FrameError("map expression uses " + v + " which is not a source coordinate");
}

SmoothMap SmoothMap::identity(const FrameRef& frame) {
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(frame->dim()));
  for (const auto& c : frame->coords()) exprs.push_back(Expr::variable(c.name));
  return SmoothMap(frame, frame, std::move(exprs));
}

const Expr& SmoothMap::expr_for(const std::string& target_coord) const {
  int ix = target_->index_of(target_coord);
  if (ix < 0) throw FrameError("no target coordinate named " + target_coord);
  return exprs_[static_cast<std::size_t>(ix)];
}

std::map<std::string, Expr> SmoothMap::substitution() const {
  std::map<std::string, Expr> m;
  for (int i = 0; i < target_->dim(); ++i)
    m.emplace(target_->coord(i).name, exprs_[static_cast<std::size_t>(i)]);
  return m;
}

std::string SmoothMap::str() const {
  std::string out;
  for (int i = 0; i < target_->dim(); ++i) {
    if (i) out += ", ";
    out += target_->coord(i).name + " = " + exprs_[static_cast<std::size_t>(i)].str();
  }
  return out;
}

OneOneTensor::OneOneTensor(FrameRef frame, std::vector<std::vector<Expr>> matrix)
    : frame_(std::move(frame)), matrix_(std::move(matrix)) {
  std::size_t dim = static_cast<std::size_t>(frame_->dim());
  if (matrix_.size() != dim) throw FrameError("tensor matrix must be square of frame dimension");
  for (const auto& row : matrix_)
    if (row.size() != dim) throw FrameError("tensor matrix must be square of frame dimension");
}

OneOneTensor OneOneTensor::zero(const FrameRef& frame) {
  std::size_t dim = static_cast<std::size_t>(frame->dim());
  return OneOneTensor(frame, std::vector<std::vector<Expr>>(dim, std::vector<Expr>(dim)));
}

const Expr& OneOneTensor::entry(int a, int b) const {
  return matrix_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

void OneOneTensor::set_entry(int a, int b, const Expr& v) {
  matrix_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
}

VectorField OneOneTensor::apply(const VectorField& X) const {
  if (!same_frame(frame_, X.frame())) throw FrameError("tensor frame mismatch");
  int dim = frame_->dim();
  std::vector<Expr> comps(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    Expr acc;
    for (int b = 0; b < dim; ++b) {
      if (entry(a, b).is_zero() || X.component(b).is_zero()) continue;
      acc += entry(a, b) * X.component(b);
    }
    comps[static_cast<std::size_t>(a)] = acc;
  }
  return VectorField(frame_, std::move(comps));
}

// ---------------------------------------------------------------------------
// Exterior-algebra operations.
// ---------------------------------------------------------------------------

namespace {

// Merge two strictly increasing tuples; returns false when they intersect,
// else fills `out` and the permutation sign of the concatenation.
bool merge_tuples(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out,
                  int& sign) {
  out.clear();
  out.reserve(a.size() + b.size());
  sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining a-entries.
      if ((a.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return true;
}

}  // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (!same_frame(a.frame(), b.frame())) throw FrameError("wedge frame mismatch");
  DifferentialForm r(a.frame(), a.degree() + b.degree());
  std::vector<int> merged;
  int sign;
  for (const auto& [ta, ca] : a.terms())
    for (const auto& [tb, cb] : b.terms()) {
      if (!merge_tuples(ta, tb, merged, sign)) continue;
      Expr c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(merged, c);
    }
  return r;
}

DifferentialForm d(const DifferentialForm& a) {
  DifferentialForm r(a.frame(), a.degree() + 1);
  int dim = a.frame()->dim();
  std::vector<int> merged;
  int sign;
  for (const auto& [t, c] : a.terms()) {
    for (int x = 0; x < dim; ++x) {
      Expr dc = diff(c, a.frame()->coord(x).name);
      if (dc.is_zero()) continue;
      if (!merge_tuples(std::vector<int>{x}, t, merged, sign)) continue;
      if (sign < 0) dc = -dc;
      r.add_term(merged, dc);
    }
  }
  return r;
}

DifferentialForm interior(const VectorField& X, const DifferentialForm& a) {
  if (!same_frame(X.frame(), a.frame())) throw FrameError("interior product frame mismatch");
  if (a.degree() < 1) throw FrameError("interior product requires degree >= 1");
  DifferentialForm r(a.frame(), a.degree() - 1);
  for (const auto& [t, c] : a.terms()) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Expr& comp = X.component(t[j]);
      if (comp.is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(t.size() - 1);
      for (std::size_t m = 0; m < t.size(); ++m)
        if (m != j) rest.push_back(t[m]);
      Expr term = comp * c;
      if (j % 2 == 1) term = -term;
      r.add_term(rest, term);
    }
  }
  return r;
}

DifferentialForm contract_k(const KVectorField& Xs, const DifferentialForm& a) {
  if (a.degree() < Xs.k()) throw FrameError("contract_k: form degree smaller than k");
  DifferentialForm r = a;
  for (int A = 1; A <= Xs.k(); ++A) r = interior(Xs.factor(A), r);
  return r;
}

DifferentialForm pullback(const SmoothMap& phi, const DifferentialForm& a) {
  if (!same_frame(phi.target(), a.frame())) throw FrameError("pullback: form not on map target");
  auto subst = phi.substitution();
  DifferentialForm r(phi.source(), a.degree());
  for (const auto& [t, c] : a.terms()) {
    DifferentialForm part = DifferentialForm::scalar(phi.source(), substitute(c, subst));
    for (int ix : t) {
      const std::string& name = a.frame()->coord(ix).name;
      part = wedge(part, d(DifferentialForm::scalar(phi.source(), phi.expr_for(name))));
      if (part.is_zero()) break;
    }
    if (!part.is_zero()) r = r + part;
  }
  return r;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (!same_frame(X.frame(), Y.frame())) throw FrameError("lie bracket frame mismatch");
  int dim = X.frame()->dim();
  std::vector<Expr> comps(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c)
    comps[static_cast<std::size_t>(c)] = X.apply(Y.component(c)) - Y.apply(X.component(c));
  return VectorField(X.frame(), std::move(comps));
}

DifferentialForm apply_tensor(const OneOneTensor& S, const DifferentialForm& eta) {
  if (!same_frame(S.frame(), eta.frame())) throw FrameError("tensor frame mismatch");
  if (eta.degree() != 1) throw FrameError("apply_tensor requires a 1-form");
  int dim = S.frame()->dim();
  DifferentialForm r(S.frame(), 1);
  // (S^t eta)_b = sum_a eta_a M[a][b]
  for (const auto& [t, c] : eta.terms()) {
    int a = t[0];
    for (int b = 0; b < dim; ++b) {
      const Expr& m = S.entry(a, b);
      if (m.is_zero()) continue;
      r.add_term({b}, c * m);
    }
  }
  return r;
}

Expr pairing(const DifferentialForm& alpha, const VectorField& X) {
  if (alpha.degree() != 1) throw FrameError("pairing requires a 1-form");
  return interior(X, alpha).scalar_value();
}

bool identical(const DifferentialForm& a, const DifferentialForm& b) {
  return (a - b).is_zero();
}

Verdict form_equal(const DifferentialForm& a, const DifferentialForm& b) {
  DifferentialForm diff_form = a - b;
  if (diff_form.is_zero()) return Verdict::Equal;
  bool not_equal = false, probably = false;
  for (const auto& [t, c] : diff_form.terms()) {
    switch (equal(c, Expr())) {
      case Verdict::Equal: break;
      case Verdict::ProbablyEqual: probably = true; break;
      case Verdict::NotEqual: not_equal = true; break;
    }
  }
  if (not_equal) return Verdict::NotEqual;
  return probably ? Verdict::ProbablyEqual : Verdict::Equal;
}

}  // namespace geofield
