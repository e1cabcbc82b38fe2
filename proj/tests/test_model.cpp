#include "doctest.h"

#include "geofield/model.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace geofield;

namespace {
Expr V(const std::string& name) { return Expr::variable(name); }

const char* kOscillator = R"gf(# harmonic oscillator
formalism = "k-symplectic-hamiltonian"
k = 1
n = 1
generator = "1/2*(q1^2 + p1_1^2)"

[section]
q1 = "sin(t1)"
p1_1 = "cos(t1)"

[grid]
ranges = [10.0]
steps = [10000]

[x0]
q1 = 0.0
p1_1 = 1.0
)gf";
}  // namespace

TEST_CASE("a complete model file parses into a validated theory") {
  ModelFile m = parse_model(kOscillator, "osc.toml");
  CHECK(m.system.variant == Variant::KSymHam);
  CHECK(m.system.k == 1);
  CHECK(m.system.n == 1);
  CHECK((m.system.generator -
         Expr::rational(1, 2) * (V("q1") * V("q1") + V("p1_1") * V("p1_1")))
            .is_zero());
  REQUIRE(m.sections.size() == 1);
  CHECK(m.sections[0].first == "section");
  CHECK((m.sections[0].second.values.at("q1") - sin(V("t1"))).is_zero());
  CHECK(m.has_grid);
  REQUIRE(m.grid.axes.size() == 1);
  CHECK(m.grid.axes[0].length == doctest::Approx(10.0));
  CHECK(m.grid.axes[0].steps == 10000);
  CHECK(m.x0.at("p1_1") == doctest::Approx(1.0));
  CHECK(m.components.empty());
}

TEST_CASE("defaults: no grid table gives unit axes, 100 steps each") {
  ModelFile m = parse_model(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 2\nn = 1\n"
      "generator = \"1/2*(p1_1^2 + p2_1^2)\"\n");
  CHECK(!m.has_grid);
  REQUIRE(m.grid.axes.size() == 2);
  for (const AxisSpec& ax : m.grid.axes) {
    CHECK(ax.length == doctest::Approx(1.0));
    CHECK(ax.steps == 100);
  }
  CHECK(m.sections.empty());
  CHECK(m.x0.empty());
}

TEST_CASE("named sections and component overrides") {
  ModelFile m = parse_model(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 2\nn = 1\n"
      "generator = \"1/2*(p1_1^2 + p2_1^2)\"\n"
      "\n[components]\nX1_p2_1 = \"q1\"\n"
      "\n[section.flat]\nq1 = \"0\"\np1_1 = \"0\"\np2_1 = \"0\"\n"
      "\n[section.linear]\nq1 = \"t1\"\np1_1 = \"1\"\np2_1 = \"0\"\n");
  REQUIRE(m.sections.size() == 2);
  CHECK(m.sections[0].first == "flat");
  CHECK(m.sections[1].first == "linear");
  CHECK((m.components.at("X1_p2_1") - V("q1")).is_zero());
}

TEST_CASE("syntax errors carry origin and line number") {
  auto expect_message = [](const std::string& text, const std::string& needle) {
    try {
      parse_model(text, "m.toml");
      FAIL_CHECK("expected a ParseError for: " << needle);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_message("formalism = \n", "m.toml:1");
  expect_message("junk\n", "expected key = value");
  expect_message("formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\n", "missing generator");
  expect_message("k = 1\nn = 1\ngenerator = \"q1\"\n", "missing formalism");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\nwhat = 1\n",
      "what");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[grid]\nranges = [1.0, 2.0]\nsteps = [10]\n",
      "ranges");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[grid]\nranges = [1.0]\nsteps = [0]\n",
      "steps");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[x0]\nq9 = 1.0\n",
      "q9");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[components]\nX9_q1 = \"q1\"\n",
      "X9_q1");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[components]\nX1_q1 = \"t1\"\n",
      "t1");
  // duplicate keys and tables
  expect_message("k = 1\nk = 2\n", "duplicate");
  expect_message(
      "formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"
      "[grid]\nranges = [1.0]\nsteps = [2]\n[grid]\nranges = [1.0]\nsteps = [2]\n",
      "duplicate");
}

TEST_CASE("semantic validation delegates to the theory constructors") {
  // generator referencing a coordinate outside the frame
  CHECK_THROWS_AS(parse_model("formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\n"
                              "generator = \"v1_1\"\n"),
                  VariantError);
  // unknown formalism tag is reported with the offending line
  CHECK_THROWS_WITH_AS(parse_model("formalism = \"nope\"\nk = 1\nn = 1\ngenerator = \"q1\"\n"),
                       doctest::Contains("unknown formalism tag"), ParseError);
  // section values must live over the base
  CHECK_THROWS_WITH_AS(
      parse_model("formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\n"
                  "generator = \"q1\"\n[section]\nq1 = \"p1_1\"\np1_1 = \"0\"\n"),
      doctest::Contains("depends on non-base variable"), ParseError);
  // section keys must be fiber coordinates of the frame
  CHECK_THROWS_WITH_AS(
      parse_model("formalism = \"k-symplectic-hamiltonian\"\nk = 1\nn = 1\n"
                  "generator = \"q1\"\n[section]\nbogus = \"t1\"\n"),
      doctest::Contains("not a fiber coordinate"), ParseError);
}

TEST_CASE("comments, whitespace, and string escapes") {
  ModelFile m = parse_model(
      "  formalism = \"k-cosymplectic-hamiltonian\"   # tag\n"
      "\n"
      "# full-line comment\n"
      "k = 1   # one base direction\n"
      "n = 1\n"
      "generator = \"t1*q1\"  # '#' inside quotes would be kept\n");
  CHECK(m.system.variant == Variant::KCosymHam);
  CHECK((m.system.generator - V("t1") * V("q1")).is_zero());
}

TEST_CASE("load_model reads from disk and names the file in errors") {
  std::string path = "geofield_test_model.toml";
  {
    std::ofstream out(path);
    out << kOscillator;
  }
  ModelFile m = load_model(path);
  CHECK(m.system.k == 1);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model("definitely_missing_geofield.toml"), Error);
}
