#include "doctest.h"

#include "cdga/module.hpp"

using cdga::AlgebraTable;
using cdga::AlgElem;
using cdga::AlgLabel;
using cdga::CdgAlgebra;
using cdga::CdgModule;
using cdga::GradedMap;
using cdga::GradedSpace;
using cdga::Matrix;
using cdga::Rational;
using cdga::Rho;
using cdga::Splitting;
using cdga::Window;
using AlgQ = CdgAlgebra<Rational>;
using ModQ = CdgModule<Rational>;
using MatQ = Matrix<Rational>;
using MapQ = GradedMap<Rational>;

namespace {

Rational q(long long n) { return Rational(n); }

MatQ mat(std::vector<std::vector<Rational>> rows) { return MatQ::from_rows(std::move(rows)); }

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

AlgebraTable<Rational> square_zero_even() {  // k[y]/y^2, |y| = 2
  AlgebraTable<Rational> t;
  t.names[0] = {"1"};
  t.names[2] = {"y"};
  t.gens = {{"y", {2, 0}}};
  t.factors[{0, 0}] = {};
  t.factors[{2, 0}] = {"y"};
  return t;
}

// Rank-two free module over k[eps]: generators in degrees 0 and 1, eps
// acting freely, d the eps-multiplication in both degrees.
ModQ dual_pair_module() {
  auto A = AlgQ::dual_numbers();
  GradedSpace sp = GradedSpace::z({{0, 2}, {1, 2}});
  MatQ e = mat({{q(0), q(0)}, {q(1), q(0)}});
  MapQ d(sp, sp, 1);
  d.set_block(0, e);
  MapQ E(sp, sp, 0);
  E.set_block(0, e);
  E.set_block(1, e);
  return cdga::make_module<Rational>(A, sp, d, {{"eps", E}});
}

// The two-periodic module over Z/2 k[eps] (rho = 0) whose differential is
// eps-multiplication in both degrees.
ModQ eps_mult_z2_module() {
  auto A = AlgQ::z2_rho(true, Rho::Zero);
  GradedSpace sp = GradedSpace::z2(2, 2);
  MatQ e = mat({{q(0), q(0)}, {q(1), q(0)}});
  MapQ d(sp, sp, 1);
  d.set_block(0, e);
  d.set_block(1, e);
  MapQ E(sp, sp, 0);
  E.set_block(0, e);
  E.set_block(1, e);
  return cdga::make_module<Rational>(A, sp, d, {{"eps", E}});
}

// Middle term of the mapping-cone extension over Z/2 k[eps] with c = eps:
// degree 0 is k, degree 1 is k{1, eps}, d^2 is forced to be the eps action.
ModQ curved_extension_module() {
  auto A = AlgQ::z2_rho(true, Rho::Eps);
  GradedSpace sp = GradedSpace::z2(1, 2);
  MapQ d(sp, sp, 1);
  d.set_block(0, mat({{q(0)}, {q(1)}}));
  d.set_block(1, mat({{q(1), q(0)}}));
  MapQ E(sp, sp, 0);
  E.set_block(1, mat({{q(0), q(0)}, {q(1), q(0)}}));
  return cdga::make_module<Rational>(A, sp, d, {{"eps", E}});
}

}  // namespace

TEST_CASE("interval precomplexes have the stated shape") {
  auto A = AlgQ::initial_poly();
  ModQ X2 = cdga::interval_precomplex<Rational>(A, 1, 2, 0);
  CHECK(X2.space == GradedSpace::z({{0, 1}, {1, 1}}));
  CHECK(X2.d.block(0) == mat({{q(1)}}));
  CHECK(X2.d.block(1).rows() == 0);
  CHECK(check_module_axioms(X2).ok());

  ModQ X2s = cdga::interval_precomplex<Rational>(A, 3, 2, 1);
  CHECK(X2s.space == GradedSpace::z({{1, 3}, {2, 3}}));
  CHECK(X2s.d.block(1) == MatQ::identity(3));

  CHECK(check_module_axioms(cdga::interval_precomplex<Rational>(AlgQ::initial_trunc(2), 1, 4, 0))
            .ok());
  CHECK_THROWS_AS(cdga::interval_precomplex<Rational>(AlgQ::dual_numbers(), 1, 2, 0),
                  cdga::UsageError);
  CHECK_THROWS_AS(cdga::interval_precomplex<Rational>(A, 1, 0, 0), cdga::UsageError);
}

TEST_CASE("module construction validates shapes and actions") {
  auto A = AlgQ::dual_numbers();
  GradedSpace sp = GradedSpace::z({{0, 1}});
  MapQ d(sp, sp, 1);
  MapQ E(sp, sp, 0);
  CHECK_THROWS_AS(cdga::make_module<Rational>(A, sp, d), cdga::UsageError);  // missing eps
  CHECK_THROWS_AS(cdga::make_module<Rational>(A, sp, E, {{"eps", E}}), cdga::UsageError);
  CHECK_THROWS_AS(cdga::make_module<Rational>(A, sp, d, {{"eps", E}, {"u", E}}),
                  cdga::UsageError);
  CHECK_NOTHROW(cdga::make_module<Rational>(A, sp, d, {{"eps", E}}));
}

TEST_CASE("axiom checker flags each failure mode") {
  // d^2 = 0 but the curvature acts as the identity
  auto A1 = AlgQ::z2_rho(false, Rho::One);
  GradedSpace sp1 = GradedSpace::z2(1, 1);
  ModQ flat{A1, sp1, MapQ(sp1, sp1, 1), {}, std::nullopt};
  auto rep1 = check_module_axioms(flat);
  REQUIRE(!rep1.ok());
  CHECK(rep1.violations[0].identity == "d^2 = c-action");

  // eps action fails eps^2 = 0
  auto A2 = AlgQ::dual_numbers();
  GradedSpace sp2 = GradedSpace::z({{0, 2}});
  MapQ E2(sp2, sp2, 0);
  E2.set_block(0, mat({{q(0), q(1)}, {q(1), q(0)}}));
  ModQ bad_sq{A2, sp2, MapQ(sp2, sp2, 1), {{"eps", E2}}, std::nullopt};
  auto rep2 = check_module_axioms(bad_sq);
  REQUIRE(!rep2.ok());
  CHECK(rep2.violations[0].identity == "(a b) m = a (b m)");

  // d does not commute with the (even, closed) eps action
  GradedSpace sp3 = GradedSpace::z({{0, 1}, {1, 1}});
  MapQ d3(sp3, sp3, 1);
  d3.set_block(0, mat({{q(1)}}));
  MapQ E3(sp3, sp3, 0);
  E3.set_block(0, mat({{q(1)}}));
  ModQ bad_leibniz{A2, sp3, d3, {{"eps", E3}}, std::nullopt};
  auto rep3 = check_module_axioms(bad_leibniz);
  REQUIRE(!rep3.ok());
  CHECK(rep3.violations[0].identity == "d(g m) = d(g) m + (-1)^{|g|} g d(m)");

  // over k[c]/c^2 a five-step interval violates d^4 = 0
  ModQ X5 = cdga::interval_precomplex<Rational>(AlgQ::initial_trunc(2), 1, 5, 0);
  auto rep4 = check_module_axioms(X5);
  REQUIRE(!rep4.ok());
  CHECK(rep4.violations[0].identity == "(a b) m = a (b m)");

  CHECK(check_module_axioms(dual_pair_module()).ok());
  CHECK(check_module_axioms(eps_mult_z2_module()).ok());
  CHECK(check_module_axioms(curved_extension_module()).ok());
}

TEST_CASE("direct sum carries canonical strict inclusions and projections") {
  auto A = AlgQ::initial_poly();
  ModQ X1 = cdga::interval_precomplex<Rational>(A, 1, 1, 0);
  ModQ X1m = cdga::shift_module(cdga::interval_precomplex<Rational>(A, 1, 1, 0), -1);
  auto s = cdga::direct_sum(X1, X1m);
  CHECK(s.module.space == GradedSpace::z({{0, 1}, {1, 1}}));
  CHECK(s.module.d.is_zero());
  CHECK(check_module_axioms(s.module).ok());
  CHECK(cdga::check_pdg_map(s.incl_left, X1, s.module).ok());
  CHECK(cdga::check_pdg_map(s.incl_right, X1m, s.module).ok());
  CHECK(cdga::check_pdg_map(s.proj_left, s.module, X1).ok());
  CHECK(compose(s.proj_left, s.incl_left) == cdga::identity_map<Rational>(X1.space));
  CHECK(compose(s.proj_left, s.incl_right).is_zero());

  auto B = AlgQ::initial_trunc(2);
  CHECK_THROWS_AS(cdga::direct_sum(X1, cdga::interval_precomplex<Rational>(B, 1, 1, 0)),
                  cdga::UsageError);
}

TEST_CASE("shift negates the differential and twists odd actions") {
  auto A = AlgQ::initial_poly();
  ModQ X2 = cdga::interval_precomplex<Rational>(A, 1, 2, 0);
  ModQ X2s = cdga::shift_module(X2, 1);
  CHECK(X2s.space == GradedSpace::z({{-1, 1}, {0, 1}}));
  CHECK(X2s.d.block(-1) == mat({{q(-1)}}));
  ModQ X2ss = cdga::shift_module(X2s, 1);
  CHECK(X2ss.d.block(-2) == mat({{q(1)}}));

  auto T = AlgQ::table(cube_zero_odd());
  ModQ R = cdga::regular_module<Rational>(T, std::nullopt);
  CHECK(R.actions.at("x").block(0) == mat({{q(1)}}));
  ModQ R1 = cdga::shift_module(R, 1);
  CHECK(R1.actions.at("x").block(-1) == mat({{q(-1)}}));
  CHECK(R1.actions.at("x").block(0) == mat({{q(-1)}}));

  ModQ D1 = cdga::shift_module(dual_pair_module(), 1);
  CHECK(check_module_axioms(D1).ok());
  CHECK(D1.actions.at("eps").block(-1) == mat({{q(0), q(0)}, {q(1), q(0)}}));  // even: no sign
}

TEST_CASE("two-periodic gluing reports its d^2 diagonal blocks") {
  auto A = AlgQ::initial_poly();
  ModQ N = cdga::interval_precomplex<Rational>(A, 1, 3, 0);
  ModQ M = cdga::interval_precomplex<Rational>(A, 1, 3, 0);
  MapQ phi(M.space, N.space, 1);
  phi.set_block(0, mat({{q(2)}}));
  phi.set_block(1, mat({{q(-2)}}));
  MapQ psi(N.space, M.space, 1);
  psi.set_block(0, mat({{q(3)}}));
  psi.set_block(1, mat({{q(-3)}}));
  auto cone = cdga::pdg_cone(N, M, phi, psi);
  CHECK(cone.module.space == GradedSpace::z({{0, 2}, {1, 2}, {2, 2}}));
  CHECK(cone.module.d.block(0) == mat({{q(1), q(2)}, {q(3), q(1)}}));
  CHECK(cone.module.d.block(1) == mat({{q(1), q(-2)}, {q(-3), q(1)}}));
  CHECK(cone.dsq_top.block(0) == mat({{q(-5)}}));
  CHECK(cone.dsq_bottom.block(0) == mat({{q(-5)}}));
  MapQ dd = compose(cone.module.d, cone.module.d);
  CHECK(compose(cone.proj_n, compose(dd, cone.incl_m)).is_zero());
  CHECK(compose(cone.proj_m, compose(dd, cone.incl_n)).is_zero());

  MapQ bad = phi;
  bad.set_block(1, mat({{q(5)}}));
  CHECK_THROWS_WITH_AS(cdga::pdg_cone(N, M, bad, psi),
                       doctest::Contains("phi"), cdga::PreconditionViolation);
}

TEST_CASE("cone of the identity is the shifted double") {
  auto A = AlgQ::initial_poly();
  ModQ X2 = cdga::interval_precomplex<Rational>(A, 1, 2, 0);
  auto cone = cdga::cone_of_map(cdga::identity_map<Rational>(X2.space), X2, X2);
  CHECK(cone.module.space == GradedSpace::z({{-1, 1}, {0, 2}, {1, 1}}));
  CHECK(cone.module.d.block(-1) == mat({{q(1)}, {q(-1)}}));
  CHECK(cone.module.d.block(0) == mat({{q(1), q(1)}}));
  CHECK(check_module_axioms(cone.module).ok());
  CHECK(cdga::check_pdg_map(cone.from_target, X2, cone.module).ok());
  ModQ X2s = cdga::shift_module(X2, 1);
  CHECK(cdga::check_pdg_map(cone.to_shifted_source, cone.module, X2s).ok());

  MapQ f(X2.space, X2.space, 0);
  f.set_block(0, mat({{q(1)}}));
  CHECK_THROWS_AS(cdga::cone_of_map(f, X2, X2), cdga::PreconditionViolation);
}

TEST_CASE("cone of the identity respects odd actions and curved algebras") {
  // over the odd deformation d(x) = y eps the shifted-part twist is what
  // makes the cone differential a derivation
  cdga::Cocycle<Rational> t;
  t.t1[{1, 0}] = AlgElem<Rational>{{{2, 0}, q(1)}};
  auto At = AlgQ::deformed(AlgQ::table(cube_zero_odd()), t);
  ModQ M = cdga::extend_zero_eps(At, cdga::regular_module<Rational>(AlgQ::table(cube_zero_odd()),
                                                                    std::nullopt));
  CHECK(check_module_axioms(M).ok());
  auto cone = cdga::cone_of_map(cdga::identity_map<Rational>(M.space), M, M);
  CHECK(check_module_axioms(cone.module).ok());

  ModQ P = curved_extension_module();
  auto cone2 = cdga::cone_of_map(cdga::identity_map<Rational>(P.space), P, P);
  CHECK(check_module_axioms(cone2.module).ok());
}

TEST_CASE("splitting cones over Z/2 produce the two-periodic pairs") {
  auto A1 = AlgQ::z2_rho(false, Rho::One);
  Splitting<Rational> s1{AlgElem<Rational>{{{0, 0}, q(1)}}, AlgElem<Rational>{{{0, 0}, q(1)}}, 1};
  ModQ C1 = cdga::splitting_cone(A1, s1);
  CHECK(C1.space == GradedSpace::z2(1, 1));
  CHECK(C1.d.block(0) == mat({{q(1)}}));
  CHECK(C1.d.block(1) == mat({{q(1)}}));
  CHECK(check_module_axioms(C1).ok());

  auto Ae = AlgQ::z2_rho(true, Rho::Eps);
  Splitting<Rational> s2{AlgElem<Rational>{{{0, 1}, q(1)}}, AlgElem<Rational>{{{0, 0}, q(1)}}, 1};
  ModQ C2 = cdga::splitting_cone(Ae, s2);
  CHECK(C2.space == GradedSpace::z2(2, 2));
  CHECK(C2.d.block(0) == MatQ::identity(2));
  CHECK(C2.d.block(1) == mat({{q(0), q(0)}, {q(1), q(0)}}));
  CHECK(check_module_axioms(C2).ok());

  Splitting<Rational> bad{AlgElem<Rational>{{{0, 0}, q(1)}}, AlgElem<Rational>{}, 1};
  CHECK_THROWS_WITH_AS(cdga::splitting_cone(A1, bad), doctest::Contains("splitting identity"),
                       cdga::PreconditionViolation);
}

TEST_CASE("zero splitting over the base field gives the two-step point module") {
  auto A = AlgQ::base();
  ModQ C = cdga::splitting_cone(A, Splitting<Rational>{{}, {}, -1});
  CHECK(C.space == GradedSpace::z({{0, 1}, {1, 1}}));
  CHECK(C.d.is_zero());
  CHECK(check_module_axioms(C).ok());
}

TEST_CASE("windowed splitting cone over k[c] repeats the unit pattern") {
  auto A = AlgQ::initial_poly();
  Splitting<Rational> s{AlgElem<Rational>{{{0, 0}, q(1)}}, AlgElem<Rational>{{{2, 0}, q(1)}}, 1};
  ModQ C = cdga::splitting_cone(A, s, Window(-6, 6));
  REQUIRE(C.mask.has_value());
  CHECK(*C.mask == std::make_pair(-6, 6));
  for (int j = -1; j <= 6; ++j) CHECK(C.space.dim(j) == 1);
  CHECK(C.space.dim(-2) == 0);
  for (int j = -1; j <= 5; ++j) CHECK(C.d.block(j) == mat({{q(1)}}));
  CHECK(check_module_axioms(C).ok());

  Splitting<Rational> wrong{AlgElem<Rational>{{{2, 0}, q(1)}}, AlgElem<Rational>{{{2, 0}, q(1)}},
                            1};
  CHECK_THROWS_WITH_AS(cdga::splitting_cone(A, wrong, Window(-6, 6)),
                       doctest::Contains("degree"), cdga::PreconditionViolation);
  CHECK_THROWS_AS(cdga::splitting_cone(A, s), cdga::UsageError);  // window required
}

TEST_CASE("windowed splitting cone over R[u] and mask-aware axiom checks") {
  auto A = AlgQ::poly_u(false, Rho::One);
  Splitting<Rational> s{AlgElem<Rational>{{{0, 0}, q(1)}}, AlgElem<Rational>{{{2, 0}, q(1)}}, 1};
  ModQ C = cdga::splitting_cone(A, s, Window(-4, 4));
  for (int j = -1; j <= 3; ++j) CHECK(C.d.block(j) == mat({{q(1)}}));
  CHECK(check_module_axioms(C, Window(-10, 10)).ok());

  ModQ tampered = C;
  tampered.d.set_block(0, mat({{q(2)}}));
  auto rep = check_module_axioms(tampered, Window(-10, 10));
  REQUIRE(!rep.ok());
  CHECK(rep.violations[0].identity == "d^2 = c-action");
}

TEST_CASE("three-step extension verifies and totalizes") {
  auto A = AlgQ::initial_poly();
  ModQ Mp = cdga::interval_precomplex<Rational>(A, 1, 2, 1);
  ModQ Mpp = cdga::interval_precomplex<Rational>(A, 1, 2, 0);
  GradedSpace msp = GradedSpace::z({{0, 1}, {1, 2}, {2, 1}});
  MapQ d(msp, msp, 1);
  d.set_block(0, mat({{q(1)}, {q(1)}}));
  d.set_block(1, mat({{q(1), q(-1)}}));
  ModQ Mid = cdga::make_module<Rational>(A, msp, d);
  CHECK(check_module_axioms(Mid).ok());

  MapQ i(Mp.space, msp, 0);
  i.set_block(1, mat({{q(1)}, {q(0)}}));
  i.set_block(2, mat({{q(1)}}));
  MapQ p(msp, Mpp.space, 0);
  p.set_block(0, mat({{q(1)}}));
  p.set_block(1, mat({{q(0), q(1)}}));
  cdga::ShortExactSeq<Rational> ses{Mp, Mid, Mpp, i, p};
  auto rep = cdga::verify_ses(ses);
  CHECK(rep.exact);
  CHECK(rep.graded_k_split);

  ModQ tot = cdga::totalize_ses(ses);
  CHECK(tot.space == GradedSpace::z({{0, 2}, {1, 4}, {2, 2}}));
  CHECK(tot.d.block(0) == mat({{q(-1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(0), q(1)}}));
  CHECK(tot.d.block(1) == mat({{q(1), q(1), q(-1), q(0)}, {q(0), q(0), q(1), q(-1)}}));
  CHECK(check_module_axioms(tot).ok());

  // the projection must kill the image of i; hitting the first middle
  // coordinate instead breaks exactness and totalization refuses
  cdga::ShortExactSeq<Rational> bad = ses;
  bad.p.set_block(1, mat({{q(1), q(0)}}));
  auto rep2 = cdga::verify_ses(bad);
  CHECK(!rep2.exact);
  CHECK_THROWS_AS(cdga::totalize_ses(bad), cdga::PreconditionViolation);
}

TEST_CASE("canonical sum sequence is exact") {
  auto A = AlgQ::initial_poly();
  ModQ M = cdga::interval_precomplex<Rational>(A, 1, 2, 0);
  ModQ N = cdga::interval_precomplex<Rational>(A, 2, 3, -1);
  auto s = cdga::direct_sum(M, N);
  cdga::ShortExactSeq<Rational> ses{M, s.module, N, s.incl_left, s.proj_right};
  CHECK(cdga::verify_ses(ses).exact);
  ModQ tot = cdga::totalize_ses(ses);
  CHECK(check_module_axioms(tot).ok());
}

TEST_CASE("scalar restriction transports actions through a morphism") {
  auto src = AlgQ::table(square_zero_even());
  auto tgt = AlgQ::table(cube_zero_odd());
  std::map<AlgLabel, AlgElem<Rational>> images;
  images[{0, 0}] = AlgElem<Rational>{{{0, 0}, q(1)}};
  images[{2, 0}] = AlgElem<Rational>{{{2, 0}, q(1)}};  // y -> x^2
  auto f = cdga::StrictMorphism<Rational>::explicit_images(src, tgt, images);
  CHECK(cdga::check_strict(f).ok());
  ModQ R = cdga::regular_module<Rational>(tgt, std::nullopt);
  ModQ res = cdga::restrict_scalars(f, R);
  CHECK(*res.algebra == *src);
  CHECK(res.actions.at("y").block(0) == mat({{q(1)}}));
  CHECK(res.actions.at("y").block(1).is_zero());
  CHECK(check_module_axioms(res).ok());

  auto g = cdga::initial_morphism<Rational>(AlgQ::initial_poly(), AlgQ::initial_trunc(3));
  ModQ X4 = cdga::interval_precomplex<Rational>(AlgQ::initial_trunc(3), 1, 4, 0);
  ModQ res2 = cdga::restrict_scalars(g, X4);
  CHECK(res2.actions.empty());
  CHECK(res2.d == X4.d);
  CHECK(check_module_axioms(res2).ok());
}

TEST_CASE("reducing mod eps peels off the free part") {
  ModQ M = dual_pair_module();
  auto red = cdga::reduce_mod_epsilon(M);
  CHECK(red.module.algebra->family() == AlgQ::Family::Base);
  CHECK(red.module.space == GradedSpace::z({{0, 1}, {1, 1}}));
  CHECK(red.module.d.is_zero());
  CHECK(red.projection.block(0) == mat({{q(1), q(0)}}));

  ModQ P = curved_extension_module();
  auto redp = cdga::reduce_mod_epsilon(P);
  CHECK(*redp.module.algebra == *AlgQ::z2_rho(false, Rho::Zero));
  CHECK(redp.module.space == GradedSpace::z2(1, 1));
  CHECK(redp.module.d.block(0) == mat({{q(0)}}));
  CHECK(redp.module.d.block(1) == mat({{q(1)}}));
  CHECK(check_module_axioms(redp.module).ok());

  // d must preserve the eps image for the quotient to make sense
  auto A = AlgQ::dual_numbers();
  GradedSpace sp = GradedSpace::z({{0, 2}, {1, 1}});
  MapQ d(sp, sp, 1);
  d.set_block(0, mat({{q(0), q(1)}}));
  MapQ E(sp, sp, 0);
  E.set_block(0, mat({{q(0), q(0)}, {q(1), q(0)}}));
  ModQ bad{A, sp, d, {{"eps", E}}, std::nullopt};
  CHECK_THROWS_WITH_AS(cdga::reduce_mod_epsilon(bad), doctest::Contains("descend"),
                       cdga::PreconditionViolation);

  MapQ E2(sp, sp, 0);
  E2.set_block(0, MatQ::identity(2));
  ModQ bad2{A, sp, MapQ(sp, sp, 1), {{"eps", E2}}, std::nullopt};
  CHECK_THROWS_WITH_AS(cdga::reduce_mod_epsilon(bad2), doctest::Contains("square"),
                       cdga::PreconditionViolation);
}

TEST_CASE("extending by zero eps is a section of the reduction") {
  auto A = AlgQ::initial_poly();
  ModQ X3 = cdga::interval_precomplex<Rational>(A, 2, 3, -1);
  auto At = AlgQ::deformed(AlgQ::table(square_zero_even()), cdga::Cocycle<Rational>{});
  ModQ base = cdga::regular_module<Rational>(AlgQ::table(square_zero_even()), std::nullopt);
  ModQ ext = cdga::extend_zero_eps(At, base);
  CHECK(ext.actions.at("eps").is_zero());
  CHECK(check_module_axioms(ext).ok());
  auto red = cdga::reduce_mod_epsilon(ext);
  CHECK(red.module.space == base.space);
  CHECK(red.module.d == base.d);
  CHECK(red.module.actions.at("y") == base.actions.at("y"));

  CHECK_THROWS_AS(cdga::extend_zero_eps(At, X3), cdga::UsageError);
  CHECK_THROWS_AS(cdga::reduce_mod_epsilon(X3), cdga::UsageError);
}
