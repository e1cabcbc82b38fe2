#include "geofield/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace geofield {

namespace {

struct RawValue {
  enum class Kind { String, Number, Array } kind{};
  std::string text;            // String: unquoted content; Number: literal
  std::vector<double> array;   // Array of numbers
  int line = 0;
};

struct RawModel {
  // table name ("" for top level) -> ordered key/value pairs
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, RawValue>>>> tables;

  std::vector<std::pair<std::string, RawValue>>& table(const std::string& name) {
    for (auto& [n, entries] : tables) {
      if (n == name) return entries;
    }
    tables.emplace_back(name, std::vector<std::pair<std::string, RawValue>>{});
    return tables.back().second;
  }
  const std::vector<std::pair<std::string, RawValue>>* find(const std::string& name) const {
    for (const auto& [n, entries] : tables) {
      if (n == name) return &entries;
    }
    return nullptr;
  }
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + message,
                   static_cast<std::size_t>(line));
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Removes a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

double parse_number(const std::string& origin, int line, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) fail(origin, line, "malformed number '" + text + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(origin, line, "malformed number '" + text + "'");
  } catch (const std::out_of_range&) {
    fail(origin, line, "number out of range '" + text + "'");
  }
}

RawValue parse_value(const std::string& origin, int line, const std::string& text) {
  RawValue v;
  v.line = line;
  if (text.empty()) fail(origin, line, "missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') fail(origin, line, "unterminated string");
    v.kind = RawValue::Kind::String;
    v.text = text.substr(1, text.size() - 2);
    if (v.text.find('"') != std::string::npos) fail(origin, line, "stray quote inside string");
    return v;
  }
  if (text.front() == '[') {
    if (text.back() != ']') fail(origin, line, "unterminated array");
    v.kind = RawValue::Kind::Array;
    std::string body = strip(text.substr(1, text.size() - 2));
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        v.array.push_back(parse_number(origin, line, strip(item)));
      }
    }
    return v;
  }
  v.kind = RawValue::Kind::Number;
  v.text = text;
  parse_number(origin, line, text);  // validate eagerly
  return v;
}

RawModel parse_raw(const std::string& text, const std::string& origin) {
  RawModel raw;
  raw.table("");  // ensure the top level exists and comes first
  std::string current;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, lineno, "unterminated table header");
      std::string name = strip(s.substr(1, s.size() - 2));
      std::string bare = name;
      bare.erase(std::remove(bare.begin(), bare.end(), '.'), bare.end());
      if (name.empty() || !valid_key(bare) || name.front() == '.' || name.back() == '.') {
        fail(origin, lineno, "malformed table name '" + name + "'");
      }
      if (raw.find(name) && !raw.find(name)->empty()) {
        fail(origin, lineno, "duplicate table [" + name + "]");
      }
      raw.table(name);
      current = name;
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
    std::string key = strip(s.substr(0, eq));
    if (!valid_key(key)) fail(origin, lineno, "malformed key '" + key + "'");
    auto& entries = raw.table(current);
    for (const auto& [k, v] : entries) {
      if (k == key) fail(origin, lineno, "duplicate key '" + key + "'");
    }
    entries.emplace_back(key, parse_value(origin, lineno, strip(s.substr(eq + 1))));
  }
  return raw;
}

const RawValue* find_key(const std::vector<std::pair<std::string, RawValue>>& entries,
                         const std::string& key) {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

Expr parse_model_expr(const std::string& origin, const RawValue& v, const std::string& what) {
  if (v.kind != RawValue::Kind::String) {
    fail(origin, v.line, what + " must be a quoted expression string");
  }
  try {
    return parse_expr(v.text);
  } catch (const ParseError& e) {
    fail(origin, v.line, what + ": " + e.what());
  }
}

long long integer_value(const std::string& origin, const RawValue& v, const std::string& what) {
  if (v.kind != RawValue::Kind::Number) fail(origin, v.line, what + " must be an integer");
  double d = parse_number(origin, v.line, v.text);
  long long i = static_cast<long long>(d);
  if (static_cast<double>(i) != d) fail(origin, v.line, what + " must be an integer");
  return i;
}

}  // namespace

ModelFile parse_model(const std::string& text, const std::string& origin) {
  RawModel raw = parse_raw(text, origin);
  const auto& top = *raw.find("");

  const RawValue* formalism = find_key(top, "formalism");
  if (!formalism) throw ParseError(origin + ": missing formalism", 0);
  if (formalism->kind != RawValue::Kind::String) {
    fail(origin, formalism->line, "formalism must be a quoted tag");
  }
  Variant variant;
  try {
    variant = variant_from_tag(formalism->text);
  } catch (const VariantError& e) {
    fail(origin, formalism->line, e.what());
  }
  const RawValue* kval = find_key(top, "k");
  if (!kval) throw ParseError(origin + ": missing k", 0);
  const RawValue* nval = find_key(top, "n");
  if (!nval) throw ParseError(origin + ": missing n", 0);
  long long k = integer_value(origin, *kval, "k");
  long long n = integer_value(origin, *nval, "n");
  if (k < 1) fail(origin, kval->line, "k must be >= 1");
  if (n < 1) fail(origin, nval->line, "n must be >= 1");
  const RawValue* gen = find_key(top, "generator");
  if (!gen) throw ParseError(origin + ": missing generator", 0);
  Expr generator = parse_model_expr(origin, *gen, "generator");
  for (const auto& [key, value] : top) {
    if (key != "formalism" && key != "k" && key != "n" && key != "generator") {
      fail(origin, value.line, "unknown key '" + key + "'");
    }
  }

  ModelFile model;
  model.system = make_field_theory(variant, static_cast<int>(k), static_cast<int>(n), generator);
  const FrameRef& frame = model.system.frame;

  for (const auto& [name, entries] : raw.tables) {
    if (name.empty()) continue;
    if (name == "components") {
      std::vector<std::string> allowed = component_unknowns(frame, false);
      for (const auto& [key, value] : entries) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
          fail(origin, value.line,
               key + " is not a fiber component symbol of the " + to_string(variant) + " frame");
        }
        Expr e = parse_model_expr(origin, value, key);
        for (const std::string& fv : e.free_variables()) {
          if (!frame->has(fv)) {
            fail(origin, value.line, fv + " not in " + to_string(variant) + " frame");
          }
        }
        model.components[key] = e;
      }
    } else if (name == "section" || name.rfind("section.", 0) == 0) {
      std::string label = name == "section" ? "section" : name.substr(8);
      if (label.empty()) fail(origin, 1, "malformed table name '" + name + "'");
      SymbolicSection s;
      s.k = static_cast<int>(k);
      for (const auto& [key, value] : entries) {
        if (!frame->has(key) || frame->coord(frame->index_of(key)).role == Role::Base) {
          fail(origin, value.line,
               "section key '" + key + "' is not a fiber coordinate of the " +
                   to_string(variant) + " frame");
        }
        Expr e = parse_model_expr(origin, value, name + "." + key);
        for (const std::string& fv : e.free_variables()) {
          bool base = false;
          for (int a = 1; a <= static_cast<int>(k); ++a) base = base || fv == base_name(a);
          if (!base) {
            fail(origin, value.line,
                 "section value for " + key + " depends on non-base variable " + fv);
          }
        }
        s.values[key] = e;
      }
      model.sections.emplace_back(label, std::move(s));
    } else if (name == "grid") {
      model.has_grid = true;
      std::vector<double> ranges(static_cast<std::size_t>(k), 1.0);
      std::vector<double> steps(static_cast<std::size_t>(k), 100.0);
      for (const auto& [key, value] : entries) {
        if (key != "ranges" && key != "steps") {
          fail(origin, value.line, "unknown grid key '" + key + "'");
        }
        if (value.kind != RawValue::Kind::Array ||
            value.array.size() != static_cast<std::size_t>(k)) {
          fail(origin, value.line, key + " must be an array of " + std::to_string(k) + " numbers");
        }
        (key == "ranges" ? ranges : steps) = value.array;
      }
      for (std::size_t a = 0; a < static_cast<std::size_t>(k); ++a) {
        if (!(ranges[a] > 0)) fail(origin, 1, "ranges must be positive");
        if (steps[a] < 1 || steps[a] != static_cast<double>(static_cast<int>(steps[a]))) {
          fail(origin, 1, "steps must be positive integers");
        }
        model.grid.axes.push_back(AxisSpec{ranges[a], static_cast<int>(steps[a])});
      }
    } else if (name == "x0") {
      for (const auto& [key, value] : entries) {
        if (!frame->has(key)) {
          fail(origin, value.line, key + " not in " + to_string(variant) + " frame");
        }
        if (value.kind != RawValue::Kind::Number) {
          fail(origin, value.line, key + " must be a number");
        }
        model.x0[key] = parse_number(origin, value.line, value.text);
      }
    } else {
      fail(origin, 1, "unknown table [" + name + "]");
    }
  }
  if (!model.has_grid) {
    for (long long a = 0; a < k; ++a) model.grid.axes.push_back(AxisSpec{1.0, 100});
  }
  return model;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path);
}

}  // namespace geofield
