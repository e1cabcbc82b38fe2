/**
 * @file  symexpr.cpp
 * @brief Canonical rational-function arithmetic over interned atoms.
 */
#include "geofield/symexpr.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <deque>
#include <sstream>
#include <utility>

namespace geofield {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Atom interner.
//
// An atom is a variable or an opaque function application. The ordering key
// is the variable name, or "fn(<canonical arg>)" for applications; keys are
// unique because variable names cannot contain parentheses. Relative order
// of existing atoms never changes when new atoms are interned.
// ---------------------------------------------------------------------------

namespace {

enum class AtomKind { Var, Func };

struct AtomData {
  AtomKind kind;
  std::string name;                  // variable name or function name
  std::shared_ptr<const Expr> arg;   // argument for Func atoms
  std::string key;                   // deterministic ordering key
};

std::shared_mutex& atom_mutex() {
  static std::shared_mutex m;
  return m;
}

std::deque<AtomData>& atom_table() {
  static std::deque<AtomData> t;
  return t;
}

std::map<std::string, int>& atom_index() {
  static std::map<std::string, int> ix;
  return ix;
}

int intern_atom(AtomData data) {
  std::unique_lock lock(atom_mutex());
  auto it = atom_index().find(data.key);
  if (it != atom_index().end()) return it->second;
  int id = static_cast<int>(atom_table().size());
  atom_index().emplace(data.key, id);
  atom_table().push_back(std::move(data));
  return id;
}

AtomData atom(int id) {
  std::shared_lock lock(atom_mutex());
  return atom_table()[static_cast<std::size_t>(id)];
}

std::string atom_key(int id) {
  std::shared_lock lock(atom_mutex());
  return atom_table()[static_cast<std::size_t>(id)].key;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

int intern_var(const std::string& name) {
  if (!valid_identifier(name)) throw Error("invalid variable name: " + name);
  return intern_atom({AtomKind::Var, name, nullptr, name});
}

// ---------------------------------------------------------------------------
// Monomials and polynomials.
// ---------------------------------------------------------------------------

// Factors sorted by atom key; exponents >= 1.
using Monomial = std::vector<std::pair<int, int>>;

// Lexicographic on atom keys, descending exponent on ties, longer-wins on
// common prefixes; the empty (constant) monomial sorts last.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
      if (a[i].first != b[i].first) return atom_key(a[i].first) < atom_key(b[i].first);
      if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() > b.size();
  }
};

using Poly = std::map<Monomial, Rational, MonoLess>;

Poly poly_const(const Rational& c) {
  Poly p;
  if (c != 0) p.emplace(Monomial{}, c);
  return p;
}

Poly poly_one() { return poly_const(1); }

bool poly_is_zero(const Poly& p) { return p.empty(); }

bool poly_is_const(const Poly& p) {
  return p.empty() || (p.size() == 1 && p.begin()->first.empty());
}

void poly_add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) poly_add_term(r, m, c);
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r;
  for (const auto& [m, c] : a) r.emplace(m, -c);
  return r;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    } else if (atom_key(a[i].first) < atom_key(b[j].first)) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) poly_add_term(r, mono_mul(ma, mb), ca * cb);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr representation: canonical fraction num/den.
// ---------------------------------------------------------------------------

struct Expr::Rep {
  Poly num;
  Poly den;  // never zero; monic leading coefficient; no common monomial content
};

namespace {

// Divide out the common monomial content of num and den, then scale the
// denominator monic. Assumes den is nonzero.
Expr make_expr(Poly num, Poly den) {
  if (poly_is_zero(den)) throw Error("division by zero");
  if (poly_is_zero(num)) {
    auto rep = std::make_shared<Expr::Rep>();
    rep->den = poly_one();
    return Expr(std::move(rep));
  }
  // Monomial content: per-atom minimum exponent over every monomial of both.
  std::map<int, int> content;
  bool first = true;
  auto meet = [&](const Monomial& m) {
    if (first) {
      for (auto& [a, e] : m) content[a] = e;
      first = false;
      return;
    }
    std::map<int, int> next;
    for (auto& [a, e] : m) {
      auto it = content.find(a);
      if (it != content.end()) next[a] = std::min(it->second, e);
    }
    content = std::move(next);
  };
  for (const auto& [m, c] : num) meet(m);
  for (const auto& [m, c] : den) meet(m);
  if (!content.empty()) {
    auto strip = [&](const Poly& p) {
      Poly r;
      for (const auto& [m, c] : p) {
        Monomial reduced;
        for (auto& [a, e] : m) {
          auto it = content.find(a);
          int drop = (it == content.end()) ? 0 : it->second;
          if (e - drop > 0) reduced.emplace_back(a, e - drop);
        }
        r.emplace(std::move(reduced), c);
      }
      return r;
    };
    num = strip(num);
    den = strip(den);
  }
  const Rational lead = den.begin()->second;
  if (lead != 1) {
    for (auto& [m, c] : num) c /= lead;
    for (auto& [m, c] : den) c /= lead;
  }
  auto rep = std::make_shared<Expr::Rep>();
  rep->num = std::move(num);
  rep->den = std::move(den);
  return Expr(std::move(rep));
}

Expr from_poly(Poly p) { return make_expr(std::move(p), poly_one()); }

const Poly& num_of(const Expr& e) { return e.rep().num; }
const Poly& den_of(const Expr& e) { return e.rep().den; }

}  // namespace

Expr::Expr() {
  auto rep = std::make_shared<Rep>();
  rep->den = poly_one();
  rep_ = std::move(rep);
}

Expr Expr::integer(long long v) { return from_poly(poly_const(Rational(v))); }

Expr Expr::rational(long long num, long long den) {
  if (den == 0) throw Error("division by zero");
  return from_poly(poly_const(Rational(num, den)));
}

Expr Expr::variable(const std::string& name) {
  Poly p;
  p.emplace(Monomial{{intern_var(name), 1}}, Rational(1));
  return from_poly(std::move(p));
}

Expr Expr::operator-() const { return make_expr(poly_neg(num_of(*this)), den_of(*this)); }

Expr Expr::operator+(const Expr& o) const {
  if (den_of(*this) == den_of(o))
    return make_expr(poly_add(num_of(*this), num_of(o)), den_of(*this));
  return make_expr(poly_add(poly_mul(num_of(*this), den_of(o)), poly_mul(num_of(o), den_of(*this))),
                   poly_mul(den_of(*this), den_of(o)));
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
  return make_expr(poly_mul(num_of(*this), num_of(o)), poly_mul(den_of(*this), den_of(o)));
}

Expr Expr::operator/(const Expr& o) const {
  if (o.is_zero()) throw Error("division by zero");
  return make_expr(poly_mul(num_of(*this), den_of(o)), poly_mul(den_of(*this), num_of(o)));
}

Expr Expr::pow(long long exponent) const {
  if (exponent == 0) return Expr::integer(1);
  bool invert = exponent < 0;
  unsigned long long n = invert ? static_cast<unsigned long long>(-exponent)
                                : static_cast<unsigned long long>(exponent);
  Expr base = *this, acc = Expr::integer(1);
  while (n > 0) {
    if (n & 1ULL) acc = acc * base;
    base = base * base;
    n >>= 1ULL;
  }
  if (invert) return Expr::integer(1) / acc;
  return acc;
}

bool Expr::is_zero() const { return poly_is_zero(num_of(*this)); }

bool Expr::is_one() const {
  return poly_is_const(num_of(*this)) && poly_is_const(den_of(*this)) && !is_zero() &&
         num_of(*this).begin()->second == den_of(*this).begin()->second;
}

bool Expr::is_constant() const {
  return poly_is_const(num_of(*this)) && poly_is_const(den_of(*this));
}

double Expr::constant_value() const {
  if (!is_constant()) throw Error("not a constant expression");
  if (is_zero()) return 0.0;
  Rational q = num_of(*this).begin()->second / den_of(*this).begin()->second;
  return static_cast<double>(q);
}

bool Expr::same(const Expr& o) const {
  return num_of(*this) == num_of(o) && den_of(*this) == den_of(o);
}

namespace {

void collect_vars(const Poly& p, std::set<std::string>& out) {
  for (const auto& [m, c] : p) {
    for (auto& [a, e] : m) {
      AtomData d = atom(a);
      if (d.kind == AtomKind::Var) {
        out.insert(d.name);
      } else {
        auto sub = d.arg->free_variables();
        out.insert(sub.begin(), sub.end());
      }
    }
  }
}

}  // namespace

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  collect_vars(num_of(*this), out);
  collect_vars(den_of(*this), out);
  return out;
}

bool Expr::depends_on(const std::string& var) const {
  return free_variables().count(var) > 0;
}

// ---------------------------------------------------------------------------
// Printing.
// ---------------------------------------------------------------------------

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string atom_str(int id) {
  AtomData d = atom(id);
  if (d.kind == AtomKind::Var) return d.name;
  return d.name + "(" + d.arg->str() + ")";
}

std::string mono_str(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += "*";
    out += atom_str(m[i].first);
    if (m[i].second != 1) out += "^" + std::to_string(m[i].second);
  }
  return out;
}

std::string term_str(const Monomial& m, const Rational& c) {
  if (m.empty()) return rational_str(c);
  if (c == 1) return mono_str(m);
  if (c == -1) return "-" + mono_str(m);
  return rational_str(c) + "*" + mono_str(m);
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p) {
    std::string t = term_str(m, c);
    if (first) {
      out = t;
      first = false;
    } else if (!t.empty() && t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

}  // namespace

std::string Expr::str() const {
  if (poly_is_const(den_of(*this))) return poly_str(num_of(*this));
  return "(" + poly_str(num_of(*this)) + ")/(" + poly_str(den_of(*this)) + ")";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::ProbablyEqual: return "ProbablyEqual";
    case Verdict::NotEqual: return "NotEqual";
  }
  return "NotEqual";
}

// ---------------------------------------------------------------------------
// Elementary-function atoms.
// ---------------------------------------------------------------------------

namespace {

Expr func_atom(const std::string& fname, const Expr& arg) {
  AtomData d;
  d.kind = AtomKind::Func;
  d.name = fname;
  d.arg = std::make_shared<const Expr>(arg);
  d.key = fname + "(" + arg.str() + ")";
  Poly p;
  p.emplace(Monomial{{intern_atom(std::move(d)), 1}}, Rational(1));
  return from_poly(std::move(p));
}

}  // namespace

Expr sin(const Expr& e) { return func_atom("sin", e); }
Expr cos(const Expr& e) { return func_atom("cos", e); }
Expr exp(const Expr& e) { return func_atom("exp", e); }
Expr ln(const Expr& e) { return func_atom("ln", e); }

// ---------------------------------------------------------------------------
// Differentiation.
// ---------------------------------------------------------------------------

namespace {

Expr atom_diff(int id, const std::string& var) {
  AtomData d = atom(id);
  if (d.kind == AtomKind::Var) {
    return d.name == var ? Expr::integer(1) : Expr();
  }
  Expr du = diff(*d.arg, var);
  if (du.is_zero()) return Expr();
  if (d.name == "sin") return cos(*d.arg) * du;
  if (d.name == "cos") return -sin(*d.arg) * du;
  if (d.name == "exp") return exp(*d.arg) * du;
  if (d.name == "ln") return du / *d.arg;
  throw Error("unknown function name: " + d.name);
}

Expr poly_diff(const Poly& p, const std::string& var) {
  Expr acc;
  for (const auto& [m, c] : p) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      Expr da = atom_diff(m[i].first, var);
      if (da.is_zero()) continue;
      // c * e_i * atom_i^(e_i-1) * prod_{j != i} atom_j^(e_j) * da
      Monomial mm;
      for (std::size_t j = 0; j < m.size(); ++j) {
        int e = m[j].second - (j == i ? 1 : 0);
        if (e > 0) mm.emplace_back(m[j].first, e);
      }
      Poly term;
      term.emplace(std::move(mm), c * m[i].second);
      acc += from_poly(std::move(term)) * da;
    }
  }
  return acc;
}

}  // namespace

Expr diff(const Expr& e, const std::string& var) {
  const Poly& n = num_of(e);
  const Poly& d = den_of(e);
  Expr dn = poly_diff(n, var);
  if (poly_is_const(d)) return dn;  // den is monic constant == 1
  Expr dd = poly_diff(d, var);
  Expr den_expr = from_poly(d);
  return (dn * den_expr - from_poly(n) * dd) / (den_expr * den_expr);
}

Expr normalize(const Expr& e) { return e; }

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace {

double eval_atom(int id, const Assignment& a) {
  AtomData d = atom(id);
  if (d.kind == AtomKind::Var) {
    auto it = a.find(d.name);
    if (it == a.end()) throw EvalError("unassigned variable: " + d.name);
    return it->second;
  }
  double x = eval_expr(*d.arg, a);
  if (d.name == "sin") return std::sin(x);
  if (d.name == "cos") return std::cos(x);
  if (d.name == "exp") return std::exp(x);
  if (d.name == "ln") {
    if (x <= 0.0) throw EvalError("ln domain error: argument not positive");
    return std::log(x);
  }
  throw Error("unknown function name: " + d.name);
}

double eval_poly(const Poly& p, const Assignment& a) {
  double acc = 0.0;
  for (const auto& [m, c] : p) {
    double t = static_cast<double>(c);
    for (auto& [id, e] : m) t *= std::pow(eval_atom(id, a), e);
    acc += t;
  }
  return acc;
}

}  // namespace

double eval_expr(const Expr& e, const Assignment& a) {
  double den = eval_poly(den_of(e), a);
  if (den == 0.0) throw EvalError("division by zero in evaluation");
  double v = eval_poly(num_of(e), a) / den;
  if (!std::isfinite(v)) throw EvalError("non-finite evaluation result");
  return v;
}

// ---------------------------------------------------------------------------
// Substitution.
// ---------------------------------------------------------------------------

namespace {

Expr subst_poly(const Poly& p, const std::map<std::string, Expr>& repl) {
  Expr acc;
  for (const auto& [m, c] : p) {
    Expr t = from_poly(poly_const(c));
    for (auto& [id, e] : m) {
      AtomData d = atom(id);
      Expr base;
      if (d.kind == AtomKind::Var) {
        auto it = repl.find(d.name);
        base = (it != repl.end()) ? it->second : Expr::variable(d.name);
      } else {
        Expr arg = substitute(*d.arg, repl);
        if (d.name == "sin") base = sin(arg);
        else if (d.name == "cos") base = cos(arg);
        else if (d.name == "exp") base = exp(arg);
        else if (d.name == "ln") base = ln(arg);
        else throw Error("unknown function name: " + d.name);
      }
      t *= base.pow(e);
    }
    acc += t;
  }
  return acc;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
  Expr n = subst_poly(num_of(e), repl);
  Expr d = subst_poly(den_of(e), repl);
  if (d.is_zero()) throw Error("substitution produced a zero denominator");
  return n / d;
}

// ---------------------------------------------------------------------------
// Randomized equality.
// ---------------------------------------------------------------------------

std::uint64_t global_seed() {
  static const std::uint64_t seed = [] {
    if (const char* env = std::getenv("GEOFIELD_SEED")) {
      const bool hex = env[0] == '0' && (env[1] == 'x' || env[1] == 'X');
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, hex ? 16 : 10);
      if (end && end != env && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(0x67656F6669656C64ULL);  // default seed
  }();
  return seed;
}

SampleRng::SampleRng(std::uint64_t seed) : state_(seed) {}

std::uint64_t SampleRng::next_u64() {
  // splitmix64: deterministic and platform-independent.
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SampleRng::uniform(double lo, double hi) {
  double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

Verdict equal(const Expr& e1, const Expr& e2) {
  if ((e1 - e2).is_zero()) return Verdict::Equal;
  std::set<std::string> vars = e1.free_variables();
  for (const auto& v : e2.free_variables()) vars.insert(v);
  SampleRng rng(global_seed() ^ 0xC0FFEE1234567890ULL);
  const int wanted = 32, max_attempts = 256;
  int good = 0;
  for (int attempt = 0; attempt < max_attempts && good < wanted; ++attempt) {
    Assignment a;
    for (const auto& v : vars) a[v] = rng.uniform(-2.0, 2.0);
    double v1, v2;
    try {
      v1 = eval_expr(e1, a);
      v2 = eval_expr(e2, a);
    } catch (const EvalError&) {
      continue;  // singular sample; redraw
    }
    double scale = std::max({1.0, std::fabs(v1), std::fabs(v2)});
    if (std::fabs(v1 - v2) > 1e-9 * scale) return Verdict::NotEqual;
    ++good;
  }
  return Verdict::ProbablyEqual;
}

bool is_probably_zero(const Expr& e) { return equal(e, Expr()) != Verdict::NotEqual; }

// ---------------------------------------------------------------------------
// Parser.
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("syntax error at offset " + std::to_string(pos) + ": " + msg, pos);
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  Expr parse_expression() {
    Expr acc = parse_term();
    for (;;) {
      if (consume('+')) acc += parse_term();
      else if (consume('-')) acc -= parse_term();
      else return acc;
    }
  }

  Expr parse_term() {
    Expr acc = parse_unary();
    for (;;) {
      if (consume('*')) acc *= parse_unary();
      else if (consume('/')) {
        Expr d = parse_unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Expr parse_unary() {
    int sign = 1;
    for (;;) {
      if (consume('-')) sign = -sign;
      else if (consume('+')) continue;
      else break;
    }
    Expr e = parse_power();
    return sign < 0 ? -e : e;
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_ws();
    if (consume('^')) {
      skip_ws();
      bool neg = consume('-');
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected integer exponent after '^'");
      long long e = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        e = e * 10 + (text[pos] - '0');
        if (e > 1000000) fail("exponent too large");
        ++pos;
      }
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Expr e = parse_expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (peek('(')) {
        if (name != "sin" && name != "cos" && name != "exp" && name != "ln") {
          pos = start;
          fail("unknown function name: " + name);
        }
        ++pos;  // '('
        Expr arg = parse_expression();
        if (!consume(')')) fail("expected ')'");
        if (name == "sin") return sin(arg);
        if (name == "cos") return cos(arg);
        if (name == "exp") return exp(arg);
        return ln(arg);
      }
      return Expr::variable(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // Decimal literals become exact rationals: 0.25 -> 1/4, 1e-3 -> 1/1000.
  Expr parse_number() {
    BigInt mantissa = 0;
    long long frac_digits = 0, exponent = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      any = true;
      ++pos;
    }
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        mantissa = mantissa * 10 + (text[pos] - '0');
        ++frac_digits;
        any = true;
        ++pos;
      }
    }
    if (!any) fail("malformed number");
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t save = pos;
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        pos = save;  // not an exponent; leave 'e' for the caller (will fail there)
      } else {
        long long e = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          e = e * 10 + (text[pos] - '0');
          if (e > 1000) fail("exponent too large");
          ++pos;
        }
        exponent = neg ? -e : e;
      }
    }
    Rational q(mantissa);
    long long net = exponent - frac_digits;
    BigInt scale = 1;
    for (long long i = 0; i < std::llabs(net); ++i) scale *= 10;
    if (net >= 0) q *= Rational(scale);
    else q /= Rational(scale);
    return from_poly(poly_const(q));
  }
};

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p(text);
  Expr e = p.parse_expression();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace geofield
