#include "doctest.h"

#include "geofield/canonical.hpp"

#include <string>

using namespace geofield;

namespace {
Expr V(const std::string& name) { return Expr::variable(name); }
DifferentialForm dbasis(const FrameRef& f, const std::string& c) {
  return DifferentialForm::basis_one_form(f, c);
}
}  // namespace

TEST_CASE("k-symplectic Darboux forms, exact strings") {
  KSymplecticStructure s = canonical_ksymplectic(2, 1);
  REQUIRE(s.theta.size() == 2);
  REQUIRE(s.omega.size() == 2);
  CHECK(s.theta[0].str() == "p1_1*dq1");
  CHECK(s.theta[1].str() == "p2_1*dq1");
  CHECK(s.omega[0].str() == "dq1∧dp1_1");
  CHECK(s.omega[1].str() == "dq1∧dp2_1");
  for (int a = 0; a < 2; ++a) CHECK(identical(s.omega[a], -d(s.theta[a])));

  KSymplecticStructure s2 = canonical_ksymplectic(3, 2);
  CHECK(s2.theta[2].str() == "p3_1*dq1 + p3_2*dq2");
  CHECK(s2.omega[2].str() == "dq1∧dp3_1 + dq2∧dp3_2");
  // vertical fields annihilate every theta
  for (const VectorField& v : s2.vertical)
    for (const DifferentialForm& th : s2.theta)
      CHECK(interior(v, th).is_zero());
}

TEST_CASE("k-cosymplectic structure carries eta and Reeb fields") {
  KCosymplecticStructure c = canonical_kcosymplectic(2, 2);
  REQUIRE(c.eta.size() == 2);
  REQUIRE(c.reeb.size() == 2);
  CHECK(c.eta[0].str() == "dt1");
  CHECK(c.eta[1].str() == "dt2");
  CHECK(c.theta[0].str() == "p1_1*dq1 + p1_2*dq2");
  CHECK(c.omega[1].str() == "dq1∧dp2_1 + dq2∧dp2_2");
  // defining relations: i(R_A) eta^B = delta, i(R_A) Omega^B = 0, d eta = 0
  for (int a = 0; a < 2; ++a) {
    CHECK(d(c.eta[static_cast<std::size_t>(a)]).is_zero());
    for (int b = 0; b < 2; ++b) {
      Expr want = (a == b) ? Expr::integer(1) : Expr{};
      CHECK((interior(c.reeb[static_cast<std::size_t>(a)], c.eta[static_cast<std::size_t>(b)])
                 .scalar_value() -
             want)
                .is_zero());
      CHECK(interior(c.reeb[static_cast<std::size_t>(a)], c.omega[static_cast<std::size_t>(b)])
                .is_zero());
    }
    CHECK(identical(c.omega[static_cast<std::size_t>(a)],
                    -d(c.theta[static_cast<std::size_t>(a)])));
  }
}

TEST_CASE("multisymplectic tautological forms, low-rank strings") {
  MultisymplecticStructure m1 = canonical_multisymplectic(1, 1);
  CHECK(m1.theta.str() == "p*dt1 + p1_1*dq1");
  CHECK(m1.omega.str() == "dt1∧dp + dq1∧dp1_1");

  MultisymplecticStructure m2 = canonical_multisymplectic(2, 1);
  CHECK(m2.theta.str() == "p*dt1∧dt2 + p2_1*dt1∧dq1 - p1_1*dt2∧dq1");
  CHECK(m2.omega.str() == "-dt1∧dt2∧dp - dt1∧dq1∧dp2_1 + dt2∧dq1∧dp1_1");

  for (auto [k, n] : {std::pair{1, 2}, {2, 2}, {3, 1}, {3, 2}}) {
    MultisymplecticStructure m = canonical_multisymplectic(k, n);
    CHECK(m.theta.degree() == k);
    CHECK(m.omega.degree() == k + 1);
    CHECK(identical(m.omega, -d(m.theta)));
    CHECK(d(m.omega).is_zero());
  }
}

TEST_CASE("volume form and its contractions pin the orientation") {
  FrameRef f = extended_phase_frame(3, 1);
  DifferentialForm vol = volume_form(f);
  CHECK(vol.str() == "dt1∧dt2∧dt3");
  CHECK(identical(dk1t(f, 1), wedge(dbasis(f, "t2"), dbasis(f, "t3"))));
  CHECK(identical(dk1t(f, 2), -wedge(dbasis(f, "t1"), dbasis(f, "t3"))));
  CHECK(identical(dk1t(f, 3), wedge(dbasis(f, "t1"), dbasis(f, "t2"))));
  // wedging back recovers the volume: dt^A ^ d^{k-1}t_A = d^k t
  for (int a = 1; a <= 3; ++a)
    CHECK(identical(wedge(dbasis(f, base_name(a)), dk1t(f, a)), vol));
  CHECK(volume_form(1).str() == "dt1");
  CHECK(identical(volume_form(base_frame(2)),
                  wedge(dbasis(base_frame(2), "t1"), dbasis(base_frame(2), "t2"))));
}

TEST_CASE("k-tangent structure and Liouville field") {
  FrameRef f = velocity_frame(2, 2);
  auto S = k_tangent_structure(2, 2, f);
  REQUIRE(S.size() == 2);
  // S^A (d/dq^i) = d/dv^A_i ; S^A kills velocity directions
  for (int a = 1; a <= 2; ++a) {
    for (int i = 1; i <= 2; ++i) {
      VectorField img = S[static_cast<std::size_t>(a - 1)].apply(VectorField::basis(f, config_name(i)));
      CHECK((img - VectorField::basis(f, velocity_name(a, i))).is_zero());
      CHECK(S[static_cast<std::size_t>(a - 1)]
                .apply(VectorField::basis(f, velocity_name(a, i)))
                .is_zero());
    }
  }
  // S^A S^B = 0
  VectorField probe(f, {V("q1"), V("q2"), V("v1_1"), V("v1_2"), V("v2_1"), V("v2_2")});
  CHECK(S[0].apply(S[1].apply(probe)).is_zero());

  VectorField delta = liouville_field(f);
  CHECK((delta.component("v1_2") - V("v1_2")).is_zero());
  CHECK(delta.component("q1").is_zero());
  // Liouville scales degree-2 velocity polynomials by 2
  Expr L = V("v1_1") * V("v2_2") - V("v2_1") * V("v1_2");
  CHECK((delta.apply(L) - Expr::integer(2) * L).is_zero());
  // extended velocity frame carries the same structures
  FrameRef ef = extended_velocity_frame(2, 1);
  CHECK((liouville_field(ef).component("v2_1") - V("v2_1")).is_zero());
}

TEST_CASE("invariant checks all hold for k,n up to 3x3") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      for (const auto& [label, ok] : check_invariants(canonical_ksymplectic(k, n))) {
        CAPTURE(label);
        CHECK(ok);
      }
      for (const auto& [label, ok] : check_invariants(canonical_kcosymplectic(k, n))) {
        CAPTURE(label);
        CHECK(ok);
      }
      for (const auto& [label, ok] : check_invariants(canonical_multisymplectic(k, n))) {
        CAPTURE(label);
        CHECK(ok);
      }
    }
  }
}
