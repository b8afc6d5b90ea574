#include <doctest.h>

#include "gaussum/identities.hpp"

using namespace gaussum;

TEST_CASE("conjugation identity sweeps") {
  CHECK(check_conjugation(make_field(5, 1, 1)) <= 1e-9);
  CHECK(check_conjugation(make_field(3, 2, 1)) <= 1e-9);  // q = 9
  CHECK(check_conjugation(make_field(2, 2, 1)) <= 1e-9);  // characteristic 2: chi(-1) = 1
}

TEST_CASE("frobenius invariance sweeps") {
  // q=5: the p-power map on indices is the identity mod 4, residual exactly 0
  CHECK(check_frobenius(make_field(5, 1, 1)) == 0.0);
  CHECK(check_frobenius(make_field(7, 1, 1)) <= 1e-9);
  CHECK(check_frobenius(make_field(3, 3, 1)) <= 1e-9);  // q = 27
}

TEST_CASE("hasse-davenport product sweeps") {
  FieldCtx F5 = make_field(5, 1, 1);
  CHECK(check_hd_product(F5, 1) <= 1e-14);  // both sides are G(chi)
  CHECK(check_hd_product(F5, 2) <= 1e-8);
  FieldCtx F13 = make_field(13, 1, 1);
  CHECK(check_hd_product(F13, 3) <= 1e-8);
  CHECK(check_hd_product(F13, 12) <= 1e-8);
  CHECK_THROWS_AS(check_hd_product(F13, 5), std::invalid_argument);
}

TEST_CASE("hasse-davenport lifting sweeps") {
  FieldTower t5(5, 1, 2);
  CHECK(check_hd_lifting(t5.level(1), t5.level(2)) <= 1e-8);
  FieldTower t3(3, 1, 3);
  CHECK(check_hd_lifting(t3.level(1), t3.level(3)) <= 1e-8);
  // m = 1: both contexts coincide, residual 0
  FieldTower t7(7, 1, 1);
  CHECK(check_hd_lifting(t7.level(1), t7.level(1)) == 0.0);
  // incompatible towers are rejected
  FieldTower other(5, 1, 4);
  CHECK_THROWS_AS(check_hd_lifting(t5.level(1), other.level(4)), std::invalid_argument);
}

TEST_CASE("scaled gauss sum sweep") {
  CHECK(check_scaled(make_field(7, 1, 1)) <= 1e-9);
  CHECK(check_scaled(make_field(3, 2, 1)) <= 1e-9);  // q = 9
}

TEST_CASE("jacobi quotient sweep") {
  CHECK(check_jacobi(make_field(5, 1, 1), 2) <= 1e-8);
  CHECK(check_jacobi(make_field(7, 1, 1), 3) <= 1e-8);
}

TEST_CASE("identity suite driver") {
  const auto reports = run_identity_suite(9);
  CHECK(reports.size() >= 6);
  bool saw_lifting = false;
  for (const auto& rep : reports) {
    CHECK(rep.residual <= 1e-8);
    CHECK(rep.sweep_size > 0);
    if (rep.identity.rfind("hd_lifting", 0) == 0) saw_lifting = true;
  }
  CHECK(saw_lifting);
}

TEST_CASE("identity suite survives the two-element field") {
  for (const auto& rep : run_identity_suite(2)) CHECK(rep.residual <= 1e-8);
}
