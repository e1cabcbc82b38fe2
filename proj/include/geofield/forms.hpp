/**
 * @file  forms.hpp
 * @brief Exterior calculus over a fixed coordinate frame: differential forms,
 *        vector fields, k-vector fields, smooth maps, (1,1)-tensors.
 *
 * Everything lives in a single global adapted chart; a CoordinateFrame lists
 * the chart's coordinates with their roles and fixes which bundle the chart
 * models. Forms are stored sparsely: strictly increasing index tuples mapped
 * to nonzero coefficients. All values are immutable and thread-safe.
 */
#pragma once

#include "geofield/symexpr.hpp"

#include <memory>
#include <string>
#include <vector>

namespace geofield {

/// Frame/degree mismatch and related structural errors.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Coordinate roles. Base = t^A, Config = q^i, Momentum = p^A_i,
/// Velocity = v^A_i, Affine = the single extended-bundle coordinate p.
enum class Role { Base, Config, Momentum, Velocity, Affine };

struct Coordinate {
  std::string name;
  Role role;
  int a = 0;  // 1-based A index for Base/Momentum/Velocity, else 0
  int i = 0;  // 1-based i index for Config/Momentum/Velocity, else 0

  bool operator==(const Coordinate& o) const {
    return name == o.name && role == o.role && a == o.a && i == o.i;
  }
};

class CoordinateFrame;
using FrameRef = std::shared_ptr<const CoordinateFrame>;

class CoordinateFrame {
 public:
  CoordinateFrame(int k, int n, std::string bundle, std::vector<Coordinate> coords);

  int k() const { return k_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const std::string& bundle() const { return bundle_; }
  const std::vector<Coordinate>& coords() const { return coords_; }
  const Coordinate& coord(int index) const { return coords_[static_cast<std::size_t>(index)]; }

  /// Index of a coordinate name, or -1 when absent.
  int index_of(const std::string& name) const;
  bool has(const std::string& name) const { return index_of(name) >= 0; }
  bool has_role(Role r) const;
  std::vector<int> indices_with_role(Role r) const;

  bool operator==(const CoordinateFrame& o) const {
    return k_ == o.k_ && n_ == o.n_ && coords_ == o.coords_;
  }

 private:
  int k_, n_;
  std::string bundle_;
  std::vector<Coordinate> coords_;
};

bool same_frame(const FrameRef& a, const FrameRef& b);

/// Canonical coordinate names.
std::string base_name(int A);
std::string config_name(int i);
std::string momentum_name(int A, int i);
std::string velocity_name(int A, int i);

/// The six charts used by the formalisms (plus the bare base space).
FrameRef base_frame(int k);                       // R^k                : t
FrameRef phase_frame(int k, int n);               // (T^1_k)*Q          : q,p
FrameRef extended_phase_frame(int k, int n);      // R^k x (T^1_k)*Q    : t,q,p
FrameRef velocity_frame(int k, int n);            // T^1_k Q            : q,v
FrameRef extended_velocity_frame(int k, int n);   // R^k x T^1_k Q      : t,q,v
FrameRef multimomentum_frame(int k, int n);       // R^k x R x (T^1_k)*Q: t,q,p,affine p

class VectorField {
 public:
  VectorField(FrameRef frame, std::vector<Expr> components);
  static VectorField zero(const FrameRef& frame);
  static VectorField basis(const FrameRef& frame, const std::string& coord);

  const FrameRef& frame() const { return frame_; }
  const Expr& component(int index) const { return comps_[static_cast<std::size_t>(index)]; }
  const Expr& component(const std::string& coord) const;
  const std::vector<Expr>& components() const { return comps_; }

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(const Expr& c) const;
  bool is_zero() const;

  /// Directional derivative X(f).
  Expr apply(const Expr& f) const;

  std::string str() const;

 private:
  FrameRef frame_;
  std::vector<Expr> comps_;
};

class KVectorField {
 public:
  KVectorField(int k, std::vector<VectorField> factors);
  int k() const { return static_cast<int>(factors_.size()); }
  const FrameRef& frame() const { return factors_.front().frame(); }
  const VectorField& factor(int A) const { return factors_[static_cast<std::size_t>(A - 1)]; }  // 1-based
  const std::vector<VectorField>& factors() const { return factors_; }

 private:
  std::vector<VectorField> factors_;
};

class DifferentialForm {
 public:
  DifferentialForm(FrameRef frame, int degree);
  static DifferentialForm scalar(const FrameRef& frame, const Expr& value);
  static DifferentialForm basis_one_form(const FrameRef& frame, const std::string& coord);

  const FrameRef& frame() const { return frame_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Expr>& terms() const { return terms_; }

  /// Coefficient of a strictly increasing index tuple (zero when absent).
  Expr coefficient(const std::vector<int>& tuple) const;
  Expr coefficient(const std::vector<std::string>& coords) const;
  void add_term(const std::vector<int>& tuple, const Expr& coeff);  // tuple must be sorted

  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator-() const;
  DifferentialForm scaled(const Expr& c) const;

  bool is_zero() const { return terms_.empty(); }
  /// Value of a degree-0 form.
  Expr scalar_value() const;

  /// Deterministic rendering with sorted basis monomials.
  std::string str() const;

 private:
  FrameRef frame_;
  int degree_;
  std::map<std::vector<int>, Expr> terms_;
};

class SmoothMap {
 public:
  SmoothMap(FrameRef source, FrameRef target, std::vector<Expr> target_exprs);
  static SmoothMap identity(const FrameRef& frame);

  const FrameRef& source() const { return source_; }
  const FrameRef& target() const { return target_; }
  const std::vector<Expr>& exprs() const { return exprs_; }
  const Expr& expr_for(const std::string& target_coord) const;

  /// target-coordinate-name -> source expression, for substitution.
  std::map<std::string, Expr> substitution() const;

  std::string str() const;

 private:
  FrameRef source_, target_;
  std::vector<Expr> exprs_;
};

class OneOneTensor {
 public:
  OneOneTensor(FrameRef frame, std::vector<std::vector<Expr>> matrix);
  static OneOneTensor zero(const FrameRef& frame);

  const FrameRef& frame() const { return frame_; }
  /// Entry M[a][b]: the coefficient of d/dx_a in S(d/dx_b).
  const Expr& entry(int a, int b) const;
  void set_entry(int a, int b, const Expr& v);

  /// S applied to a vector field (component action).
  VectorField apply(const VectorField& X) const;

 private:
  FrameRef frame_;
  std::vector<std::vector<Expr>> matrix_;
};

/// Exterior product; graded-commutative, associative.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// Exterior derivative; d(d(a)) == 0 exactly.
DifferentialForm d(const DifferentialForm& a);

/// Interior product in the first slot; requires degree >= 1.
DifferentialForm interior(const VectorField& X, const DifferentialForm& a);

/// Iterated interior product: contract_k((X1..Xk), a) = a(X1,...,Xk, . , ...);
/// X1 fills the first slot. Requires degree >= k.
DifferentialForm contract_k(const KVectorField& Xs, const DifferentialForm& a);

/// Pullback along a smooth map; commutes with d and wedge.
DifferentialForm pullback(const SmoothMap& phi, const DifferentialForm& a);

/// Lie bracket [X,Y], coordinatewise X(Y^c) - Y(X^c).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Transpose action of a (1,1)-tensor on a 1-form.
DifferentialForm apply_tensor(const OneOneTensor& S, const DifferentialForm& eta);

/// Evaluation of a 1-form on a vector field.
Expr pairing(const DifferentialForm& alpha, const VectorField& X);

/// Structural identity (exact zero difference).
bool identical(const DifferentialForm& a, const DifferentialForm& b);

/// Combined verdict over all coefficients of a - b.
Verdict form_equal(const DifferentialForm& a, const DifferentialForm& b);

}  // namespace geofield
