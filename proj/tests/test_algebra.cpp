#include "doctest.h"

#include "cdga/algebra.hpp"

using cdga::AlgebraTable;
using cdga::AlgElem;
using cdga::AlgLabel;
using cdga::CdgAlgebra;
using cdga::Cocycle;
using cdga::Grading;
using cdga::Rational;
using cdga::Rho;
using cdga::Window;
using AlgQ = CdgAlgebra<Rational>;

namespace {

Rational q(long long n) { return Rational(n); }

AlgebraTable<Rational> square_zero_even() {  // k[y]/y^2, |y| = 2
  AlgebraTable<Rational> t;
  t.names[0] = {"1"};
  t.names[2] = {"y"};
  t.gens = {{"y", {2, 0}}};
  t.factors[{0, 0}] = {};
  t.factors[{2, 0}] = {"y"};
  return t;
}

AlgebraTable<Rational> cube_zero_odd() {  // k[x]/x^3, |x| = 1, x^2 named y
  AlgebraTable<Rational> t;
  t.names[0] = {"1"};
  t.names[1] = {"x"};
  t.names[2] = {"y"};
  t.mul[{{1, 0}, {1, 0}}] = {{{2, 0}, q(1)}};
  t.gens = {{"x", {1, 0}}};
  t.factors[{0, 0}] = {};
  t.factors[{1, 0}] = {"x"};
  t.factors[{2, 0}] = {"x", "x"};
  return t;
}

}  // namespace

TEST_CASE("polynomial curvature algebra satisfies the axioms") {
  auto A = AlgQ::initial_poly();
  CHECK(check_cdg_axioms(*A, Window(-8, 8)).ok());
  CHECK(A->dim(4) == 1);
  CHECK(A->dim(3) == 0);
  CHECK(A->dim(-2) == 0);
  CHECK(A->name({4, 0}) == "c^2");
  CHECK(A->mul(AlgLabel{2, 0}, AlgLabel{4, 0}) == AlgElem<Rational>{{{6, 0}, q(1)}});
  CHECK(A->factor_tokens({6, 0}) == std::vector<std::string>{"c", "c", "c"});
  CHECK(A->c_via_dsquared());
}

TEST_CASE("truncated curvature algebra: c^3 = 0, c^2 != 0") {
  auto A = AlgQ::initial_trunc(3);
  CHECK(check_cdg_axioms(*A, Window(-10, 10)).ok());
  CHECK(A->mul(AlgLabel{2, 0}, AlgLabel{2, 0}) == AlgElem<Rational>{{{4, 0}, q(1)}});
  CHECK(A->mul(AlgLabel{4, 0}, AlgLabel{2, 0}).empty());
  CHECK(A->dim(4) == 1);
  CHECK(A->dim(6) == 0);
  CHECK(AlgQ::initial_trunc(1)->curvature().empty());
  CHECK_THROWS_AS(AlgQ::initial_trunc(0), cdga::UsageError);
}

TEST_CASE("tampered differential is reported against d(c) = 0") {
  AlgebraTable<Rational> t;
  t.names[0] = {"1"};
  t.names[2] = {"c"};
  t.names[3] = {"m"};
  t.curvature = {{{2, 0}, q(1)}};
  t.diff[{2, 0}] = {{{3, 0}, q(1)}};
  t.factors[{0, 0}] = {};
  t.factors[{2, 0}] = {};
  t.factors[{3, 0}] = {};
  auto A = AlgQ::table(t);
  auto rep = check_cdg_axioms(*A, Window(-4, 4));
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (auto& v : rep.violations)
    if (v.identity == "d(c) = 0" && v.witness == "c") found = true;
  CHECK(found);
}

TEST_CASE("remaining closed families satisfy the axioms") {
  CHECK(check_cdg_axioms(*AlgQ::base()).ok());
  CHECK(check_cdg_axioms(*AlgQ::dual_numbers()).ok());
  for (bool eps : {false, true})
    for (Rho r : {Rho::Zero, Rho::One}) {
      CHECK(check_cdg_axioms(*AlgQ::poly_u(eps, r)).ok());
      CHECK(check_cdg_axioms(*AlgQ::z2_rho(eps, r)).ok());
    }
  CHECK(check_cdg_axioms(*AlgQ::poly_u(true, Rho::Eps)).ok());
  CHECK(check_cdg_axioms(*AlgQ::z2_rho(true, Rho::Eps)).ok());
  CHECK_THROWS_AS(AlgQ::poly_u(false, Rho::Eps), cdga::UsageError);
}

TEST_CASE("eps-coefficient polynomial algebra structure") {
  auto A = AlgQ::poly_u(true, Rho::Eps);
  CHECK(A->name({2, 1}) == "eps*u");
  CHECK(A->curvature() == AlgElem<Rational>{{{2, 1}, q(1)}});
  // eps^2 = 0 kills eps * (eps*u)
  CHECK(A->mul(AlgLabel{0, 1}, AlgLabel{2, 1}).empty());
  CHECK(A->mul(AlgLabel{0, 1}, AlgLabel{2, 0}) == AlgElem<Rational>{{{2, 1}, q(1)}});
  CHECK(A->factor_tokens({4, 1}) == std::vector<std::string>{"u", "u", "eps"});
  auto gens = A->action_generators();
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].first == "u");
  CHECK(gens[1].first == "eps");
}

TEST_CASE("mod-2 graded family") {
  auto A = AlgQ::z2_rho(true, Rho::Eps);
  CHECK(A->grading() == Grading::Z2);
  CHECK(A->dim(0) == 2);
  CHECK(A->dim(1) == 0);
  CHECK(A->dim(2) == 2);  // degree normalizes mod 2
  CHECK(A->curvature() == AlgElem<Rational>{{{0, 1}, q(1)}});
  CHECK(AlgQ::z2_rho(false, Rho::One)->curvature() ==
        AlgElem<Rational>{{{0, 0}, q(1)}});
}

TEST_CASE("table algebra with odd generator") {
  auto A = AlgQ::table(cube_zero_odd());
  CHECK(check_cdg_axioms(*A, Window(-4, 4)).ok());
  CHECK(A->mul(AlgLabel{1, 0}, AlgLabel{1, 0}) == AlgElem<Rational>{{{2, 0}, q(1)}});
  CHECK(A->mul(AlgLabel{1, 0}, AlgLabel{2, 0}).empty());
  CHECK(A->factor_tokens({2, 0}) == std::vector<std::string>{"x", "x"});
}

TEST_CASE("deformation by a closed degree-2 element") {
  auto B = AlgQ::table(square_zero_even());
  Cocycle<Rational> t;
  t.t0 = {{{2, 0}, q(1)}};  // y
  auto A = AlgQ::deformed(B, t);
  CHECK(check_cdg_axioms(*A, Window(-6, 6)).ok());
  CHECK(A->curvature() == AlgElem<Rational>{{{2, 1}, q(1)}});
  CHECK(A->name({2, 1}) == "y*eps");
  CHECK(A->name({0, 1}) == "eps");
  // eps central and square-zero
  CHECK(A->mul(AlgLabel{0, 1}, AlgLabel{0, 1}).empty());
  CHECK(A->mul(AlgLabel{0, 1}, AlgLabel{2, 0}) == A->mul(AlgLabel{2, 0}, AlgLabel{0, 1}));
  CHECK(A->eps_quotient() == B);
  CHECK(A->factor_tokens({2, 1}) == std::vector<std::string>{"y", "eps"});
}

TEST_CASE("deformation twisting the differential") {
  auto B = AlgQ::table(cube_zero_odd());
  Cocycle<Rational> t;
  t.t1[{1, 0}] = {{{2, 0}, q(1)}};  // x goes to y*eps under d
  auto A = AlgQ::deformed(B, t);
  CHECK(check_cdg_axioms(*A, Window(-4, 4)).ok());
  CHECK(A->curvature().empty());
  CHECK(A->diff(AlgLabel{1, 0}) == AlgElem<Rational>{{{2, 1}, q(1)}});
  CHECK(A->diff(AlgLabel{1, 1}).empty());  // d(x*eps) = (dx)eps = y eps^2 = 0
}

TEST_CASE("malformed deformation data is rejected") {
  auto B = AlgQ::table(square_zero_even());
  Cocycle<Rational> bad0;
  bad0.t0 = {{{0, 0}, q(1)}};  // degree 0 instead of 2
  CHECK_THROWS_AS(AlgQ::deformed(B, bad0), cdga::PreconditionViolation);
  Cocycle<Rational> bad1;
  bad1.t1[{0, 0}] = {{{2, 0}, q(1)}};  // must kill the unit
  CHECK_THROWS_AS(AlgQ::deformed(B, bad1), cdga::PreconditionViolation);
}

TEST_CASE("initial morphisms land on the curvature") {
  auto S = AlgQ::initial_poly();
  auto T = AlgQ::poly_u(true, Rho::Eps);
  auto f = initial_morphism<Rational>(S, T);
  CHECK(f.image(AlgLabel{2, 0}) == AlgElem<Rational>{{{2, 1}, q(1)}});
  CHECK(f.image(AlgLabel{4, 0}).empty());  // (eps u)^2 = 0
  CHECK(check_strict(f, Window(-8, 8)).ok());

  auto g = initial_morphism<Rational>(S, AlgQ::base());
  CHECK(g.image(AlgLabel{2, 0}).empty());
  CHECK(check_strict(g, Window(-8, 8)).ok());
}

TEST_CASE("truncated source needs nilpotent curvature downstairs") {
  CHECK_THROWS_AS(initial_morphism<Rational>(AlgQ::initial_trunc(2), AlgQ::initial_poly()),
                  cdga::NotDefinedError);
  auto f = initial_morphism<Rational>(AlgQ::initial_trunc(3), AlgQ::initial_trunc(2));
  CHECK(check_strict(f, Window(-10, 10)).ok());
  auto quot = initial_morphism<Rational>(AlgQ::initial_poly(), AlgQ::initial_trunc(4));
  CHECK(check_strict(quot, Window(-10, 10)).ok());
  CHECK(quot.image(AlgLabel{8, 0}).empty());
  CHECK(quot.image(AlgLabel{6, 0}) == AlgElem<Rational>{{{6, 0}, q(1)}});
}

TEST_CASE("dropping the curvature is not strict") {
  auto f = cdga::StrictMorphism<Rational>::power(AlgQ::initial_poly(),
                                                 AlgQ::poly_u(true, Rho::Eps), {});
  auto rep = check_strict(f, Window(-6, 6));
  REQUIRE_FALSE(rep.ok());
  bool curv = false;
  for (auto& v : rep.violations)
    if (v.identity == "f(c) = c'") curv = true;
  CHECK(curv);
}

TEST_CASE("identity morphism is strict") {
  auto A = AlgQ::poly_u(true, Rho::Eps);
  CHECK(check_strict(cdga::StrictMorphism<Rational>::identity(A), Window(-6, 6)).ok());
}
