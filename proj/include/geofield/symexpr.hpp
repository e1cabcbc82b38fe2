/**
 * @file  symexpr.hpp
 * @brief Minimal symbolic-expression core: exact rational-function arithmetic
 *        over named real coordinates and opaque elementary-function atoms.
 *
 * Every Expr is kept in a canonical normal form at all times:
 *   - a pair of expanded multivariate polynomials (numerator / denominator)
 *     with exact rational coefficients,
 *   - monomials ordered deterministically (lexicographic on atom names,
 *     then descending exponent),
 *   - denominator scaled monic in that order, monomial content cancelled.
 *
 * sin/cos/exp/ln applications are opaque atoms: no trig/exp identities are
 * applied, only polynomial/rational simplification. Equality beyond the
 * structural check falls back to seeded randomized evaluation.
 *
 * Expr values are immutable and safe to share across threads.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofield {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Expression-text syntax error; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Numeric evaluation error (division by zero, ln domain, overflow).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Three-valued comparison verdict.
enum class Verdict { Equal, ProbablyEqual, NotEqual };

std::string to_string(Verdict v);

/// Variable-name -> real value map used by eval().
using Assignment = std::map<std::string, double>;

class Expr {
 public:
  /// The zero expression.
  Expr();

  static Expr integer(long long v);
  static Expr rational(long long num, long long den);
  static Expr variable(const std::string& name);

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;  // throws Error on zero divisor
  Expr pow(long long exponent) const;   // integer exponents only

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the expression is a rational constant (no atoms at all).
  bool is_constant() const;
  /// Constant value as double; requires is_constant().
  double constant_value() const;

  /// Structural equality of canonical forms (exact, not probabilistic).
  bool same(const Expr& o) const;

  /// All variable names occurring anywhere (including inside function atoms).
  std::set<std::string> free_variables() const;
  bool depends_on(const std::string& var) const;

  /// Deterministic canonical rendering; parse(str()) round-trips.
  std::string str() const;

  struct Rep;
  explicit Expr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  const Rep& rep() const { return *rep_; }

 private:
  std::shared_ptr<const Rep> rep_;
};

/// Opaque elementary-function applications.
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);

/// Parse the expression grammar (see docs/expression-grammar.md).
Expr parse_expr(const std::string& text);

/// Exact symbolic partial derivative with respect to a variable name.
Expr diff(const Expr& e, const std::string& var);

/// Canonical form. Exprs are canonical by construction, so this is the
/// identity; kept as the public name for the contract "normalize is
/// idempotent".
Expr normalize(const Expr& e);

/// IEEE-double evaluation at a full assignment. Throws EvalError on a zero
/// denominator, nonpositive ln argument, or non-finite result.
double eval_expr(const Expr& e, const Assignment& a);

/// Substitute variables by expressions (simultaneous substitution).
Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);

/// Equal  iff e1 - e2 is structurally zero.
/// Otherwise randomized evaluation at 32 points in [-2,2]^n with relative
/// tolerance 1e-9 decides ProbablyEqual / NotEqual. Singular sample points
/// are re-drawn (at most 256 attempts). Deterministic for a fixed seed.
Verdict equal(const Expr& e1, const Expr& e2);

/// True when equal() returns Equal or ProbablyEqual.
bool is_probably_zero(const Expr& e);

/// Global sampling seed: GEOFIELD_SEED environment variable when set,
/// otherwise a fixed default. Read once per process.
std::uint64_t global_seed();

/// Deterministic uniform double in [lo, hi) from a 64-bit generator state.
/// Exposed so every sampling site in the library draws identically
/// distributed, platform-independent values.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

}  // namespace geofield
