#include "support/helpers.hpp"
#include "support/jet_oracle.hpp"
#include "support/suite.hpp"

#include "germlab/error.hpp"
#include "germlab/geometry.hpp"

#include <doctest.h>

using namespace germlab;
using namespace germlab::geometry;
using invariants::make_germ;
using testing::P;
using testing::Ps;

namespace {

GermSpace germ(const VariableSet& v, std::initializer_list<const char*> F) { return make_germ(v, Ps(v, F)); }

FunctionGerm fn(const VariableSet& v, const char* f) { return FunctionGerm::function(P(v, f)); }

FunctionGerm exact_form(const VariableSet& v, const char* h) {
  std::vector<Polynomial> w;
  for (std::size_t i = 0; i < v.size(); ++i) w.push_back(ring::differentiate(P(v, h), i));
  return FunctionGerm::one_form(w);
}

LinearForm lf(std::initializer_list<long> c) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return LinearForm(r);
}

std::uint64_t oracle_ideal_colength(const std::vector<Polynomial>& gens, std::size_t n) {
  auto c = oracle::stable_colength(oracle::as_elements(gens), n, 1, 14);
  REQUIRE(c.has_value());
  return *c;
}

// Hilbert-Samuel multiplicity of the maximal ideal on a hypersurface surface
// germ: the second difference of dim O_X / m^k for large k.
std::int64_t oracle_surface_multiplicity(const Polynomial& g) {
  const std::size_t n = g.variables().size();
  auto len = [&](unsigned k) {
    return static_cast<std::int64_t>(oracle::jet_colength(oracle::as_elements({g}), n, 1, k));
  };
  const std::int64_t a = len(6) - 2 * len(5) + len(4);
  const std::int64_t b = len(7) - 2 * len(6) + len(5);
  REQUIRE(a == b);
  return a;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("Jacobian modules") {
  auto v = testing::vars({"x", "y", "z"});
  CHECK(jm(germ(v, {"x^2+y^2+z^2"})).matrix() == testing::matrix(v, {{"2*x", "2*y", "2*z"}}));
  CHECK(jm(germ(v, {"x*y", "z"})).matrix() == testing::matrix(v, {{"y", "x", "0"}, {"0", "0", "1"}}));
  auto dinf = germ(v, {"z^2-x^2*y"});
  CHECK(jm(dinf).matrix() == testing::matrix(v, {{"-2*x*y", "-x^2", "2*z"}}));
  CHECK(jm(dinf).relations == Ps(v, {"z^2-x^2*y"}));
  CHECK_THROWS_AS(jm(make_germ(v, {})), Error);

  auto cone = germ(v, {"x^2+y^2+z^2"});
  CHECK(jm_aug(cone, fn(v, "x")).matrix() == testing::matrix(v, {{"2*x", "2*y", "2*z"}, {"1", "0", "0"}}));
  auto w = testing::vars({"x", "y"});
  CHECK(jm_aug(make_germ(w, {}), exact_form(w, "x^2+y^2")).matrix() == testing::matrix(w, {{"2*x", "2*y"}}));
  CHECK(jm_aug(dinf, fn(v, "y-z")).matrix() == testing::matrix(v, {{"-2*x*y", "-x^2", "2*z"}, {"0", "1", "-1"}}));
}

TEST_CASE("relative Jacobian modules") {
  auto v = testing::vars({"x", "y", "z"});
  CHECK(jm_relative(germ(v, {"x^2+y^2+z^2"}), lf({0, 0, 1})).matrix() == testing::matrix(v, {{"2*x", "2*y"}}));
  CHECK(jm_relative(germ(v, {"x"}), lf({1, 0, 0})).generators.empty());
  CHECK(jm_relative(germ(v, {"z^2-x^2*y"}), lf({0, 0, 1})).matrix() == testing::matrix(v, {{"-2*x*y", "-x^2"}}));
  // pivot on the largest coefficient: h = x + 2y, v = e_x - 1/2 e_y, e_z
  CHECK(jm_relative(germ(v, {"x^2+y^2+z^2"}), lf({1, 2, 0})).matrix() == testing::matrix(v, {{"2*x-y", "2*z"}}));
  CHECK_THROWS_AS(jm_relative(germ(v, {"x"}), lf({1, 0})), Error);
}

TEST_CASE("limit tangent hyperplanes") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  auto cone = germ(v, {"x^2+y^2+z^2"});
  // e(JM(X)) is the multiplicity of the cone, e(JM(X)_z) the colength of (x, y) on it
  CHECK(invariants::br_multiplicity(jm(cone), cone, gen).value ==
        static_cast<std::uint64_t>(oracle_surface_multiplicity(P(v, "x^2+y^2+z^2"))));
  CHECK(invariants::br_multiplicity(jm_relative(cone, lf({0, 0, 1})), cone, gen).value ==
        oracle_ideal_colength(Ps(v, {"x", "y", "x^2+y^2+z^2"}), 3));
  CHECK_FALSE(is_limit_tangent_hyperplane(cone, lf({0, 0, 1}), gen));

  auto w = testing::vars({"x", "y"});
  CHECK(is_limit_tangent_hyperplane(germ(w, {"x*y"}), lf({1, 0}), gen));
  CHECK_FALSE(is_limit_tangent_hyperplane(make_germ(w, {}), lf({1, 3}), gen));
  // the tangent plane of a smooth surface
  CHECK(is_limit_tangent_hyperplane(germ(v, {"z+x^2"}), lf({0, 0, 1}), gen));
  CHECK_FALSE(is_limit_tangent_hyperplane(germ(v, {"z+x^2"}), lf({1, 0, 0}), gen));
  CHECK(code_of([&] { (void)is_limit_tangent_hyperplane(germ(v, {"x*y"}), lf({0, 0, 1}), gen); }) ==
        ErrorCode::UnsupportedRegime);
}

TEST_CASE("non-singular functions") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  auto cone = germ(v, {"x^2+y^2+z^2"});
  CHECK(is_nonsingular_function(cone, fn(v, "x"), gen));
  auto w = testing::vars({"x", "y"});
  CHECK_FALSE(is_nonsingular_function(make_germ(w, {}), fn(w, "x^2+y^3"), gen));
  CHECK(is_nonsingular_function(make_germ(w, {}), fn(w, "x-5*y"), gen));
  CHECK_FALSE(is_nonsingular_function(make_germ(w, {}), fn(w, "x^2"), gen));
  for (const auto& g : testing::icis_suite()) {
    CAPTURE(g.name);
    auto X = make_germ(g.vars, g.F);
    auto L = FunctionGerm::linear(ring::random_linear_form(g.vars, 77, 32), g.vars);
    CHECK(is_nonsingular_function(X, L, gen));
  }
}

TEST_CASE("isolated singularities") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  CHECK(has_isolated_singularity(germ(v, {"x^2+y^2+z^2"}), fn(v, "x"), gen));
  auto w = testing::vars({"x", "y"});
  CHECK_FALSE(has_isolated_singularity(make_germ(w, {}), fn(w, "x^2"), gen));
  CHECK(has_isolated_singularity(make_germ(w, {}), fn(w, "x^2+y^2"), gen));
}

TEST_CASE("defect") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto r = defect(make_germ(w, {}), fn(w, "x^2+y^3"), gen);
  CHECK(r.d == 2);
  CHECK(r.mu_X == 0);
  CHECK(r.mu_f_slice == oracle_ideal_colength(Ps(w, {"2*x", "3*y^2"}), 2));
  CHECK(r.mu_L_slice == 0);
  CHECK(r.e_pair == 2);
  CHECK(r.defect == 2);

  auto v = testing::vars({"x", "y", "z"});
  auto c = defect(germ(v, {"x^2+y^2+z^2"}), fn(v, "x"), gen);
  CHECK(c.mu_X == 1);
  CHECK(c.mu_f_slice == 1);
  CHECK(c.mu_L_slice == 1);
  CHECK(c.e_pair == 0);
  CHECK(c.defect == 0);
  CHECK(c.certifications.size() == 2);

  // odd dimension flips the sign
  auto A2 = defect(make_germ(testing::vars({"x"}), {}), fn(testing::vars({"x"}), "x^3"), gen);
  CHECK(A2.e_pair == 2);
  CHECK(A2.defect == -2);

  CHECK(code_of([&] { (void)defect(make_germ(w, {}), fn(w, "x^2"), gen); }) == ErrorCode::NonIsolated);
  CHECK(code_of([&] { (void)defect(germ(v, {"x*y"}), fn(v, "z"), gen); }) == ErrorCode::UnsupportedRegime);
}

TEST_CASE("defect of a generic linear form vanishes on the suite") {
  for (const auto& g : testing::icis_suite()) {
    CAPTURE(g.name);
    auto X = make_germ(g.vars, g.F);
    REQUIRE(X.is_icis);
    for (std::uint64_t seed : {1u, 2u}) {
      Genericity gen;
      gen.seed = seed;
      auto L = FunctionGerm::linear(ring::random_linear_form(g.vars, 1000 + seed, 32), g.vars);
      auto r = defect(X, L, gen);
      CHECK(r.e_pair == 0);
      CHECK(r.defect == 0);
      CHECK(r.defect == (r.d % 2 ? -r.e_pair : r.e_pair));
    }
  }
}

TEST_CASE("nonsingular implies zero defect") {
  Genericity gen;
  for (const auto& g : testing::icis_suite()) {
    CAPTURE(g.name);
    auto X = make_germ(g.vars, g.F);
    auto f = FunctionGerm::function(g.f);
    if (is_nonsingular_function(X, f, gen)) CHECK(defect(X, f, gen).defect == 0);
  }
}

TEST_CASE("radial index") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto v = testing::vars({"x", "y", "z"});
  CHECK(radial_index(make_germ(w, {}), exact_form(w, "x^2+y^2"), gen).index == 1);
  CHECK(radial_index(make_germ(v, {}), exact_form(v, "x^2+y^2+z^2"), gen).index == 1);
  CHECK(radial_index(make_germ(w, {}), exact_form(w, "x^2+y^3"), gen).index == 2);
  auto cone = radial_index(germ(v, {"x^2+y^2+z^2"}), exact_form(v, "x"), gen);
  CHECK(cone.e_pair == 0);
  CHECK(cone.link_term == 1);
  CHECK(cone.index == 1);
  // a holomorphic zero counts with its local degree, the colength of (x, -y)
  CHECK(radial_index(make_germ(w, {}), FunctionGerm::one_form(Ps(w, {"x", "-y"})), gen).index == 1);
  CHECK(code_of([&] { (void)radial_index(make_germ(w, {}), exact_form(w, "x^2"), gen); }) == ErrorCode::NonIsolated);
}

TEST_CASE("radial index of exact forms equals the Milnor number") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto v = testing::vars({"x", "y", "z"});
  for (const auto& [vars, h] : std::vector<std::pair<VariableSet, const char*>>{
           {w, "x^2+y^2"}, {w, "x^3+y^2"}, {w, "x^2*y+y^4"}, {v, "x^2+y^3+z^4"}, {v, "x^3+y^3+z^3"}}) {
    CAPTURE(h);
    CHECK(radial_index(make_germ(vars, {}), exact_form(vars, h), gen).index ==
          static_cast<std::int64_t>(invariants::milnor_hypersurface(P(vars, h))));
  }
}

TEST_CASE("D-module sums over strata") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto v = testing::vars({"x", "y", "z"});
  StratumDatum plane{"open", make_germ(w, {}), 1};
  CHECK(dmodule_vanishing_cycles({plane}, fn(w, "x^2+y^3"), gen).total == 2);

  StratumDatum open{"open", make_germ(v, {}), 2};
  StratumDatum cone{"cone", germ(v, {"x^2+y^2+z^2"}), 3};
  auto f = fn(v, "x^2+2*y^2+3*z^2");
  const auto a = defect(open.space, f, gen).e_pair;
  const auto b = defect(cone.space, f, gen).e_pair;
  auto r = dmodule_vanishing_cycles({open, cone}, f, gen);
  CHECK(r.total == 2 * a + 3 * b);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[1].multiplicity == b);

  // additive over lists and homogeneous in the weights
  CHECK(dmodule_vanishing_cycles({open}, f, gen).total + dmodule_vanishing_cycles({cone}, f, gen).total == r.total);
  StratumDatum open5 = open;
  open5.weight = 10;
  CHECK(dmodule_vanishing_cycles({open5}, f, gen).total == 5 * dmodule_vanishing_cycles({open}, f, gen).total);

  auto L = FunctionGerm::linear(ring::random_linear_form(v, 4, 32), v);
  CHECK(dmodule_vanishing_cycles({open, cone}, L, gen).total == 0);
  StratumDatum origin{"origin", germ(v, {"x", "y", "z"}), 4};
  CHECK(dmodule_vanishing_cycles({origin}, L, gen).total == 4);

  StratumDatum cross{"cross", germ(v, {"x*y"}), 1};
  try {
    (void)dmodule_vanishing_cycles({cross}, f, gen);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedRegime);
    CHECK(std::string(e.what()).find("stratum cross") == 0);
  }
}

TEST_CASE("Milnor fibre multiplicities") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto v = testing::vars({"x", "y", "z"});
  auto pt = milnor_fiber_report({StratumDatum{"0", germ(w, {"x", "y"}), 1}}, fn(w, "x^2+y^3"), gen);
  REQUIRE(pt.size() == 1);
  CHECK(pt[0].dimension == 0);
  CHECK(pt[0].multiplicity == 1);
  auto open = milnor_fiber_report({StratumDatum{"open", make_germ(w, {}), 1}}, fn(w, "x^2+y^3"), gen);
  CHECK(open[0].multiplicity == 2);
  std::vector<StratumDatum> strata{{"open", make_germ(v, {}), 1},
                                   {"cone", germ(v, {"x^2+y^2+z^2"}), 1},
                                   {"0", germ(v, {"x", "y", "z"}), 1}};
  auto L = FunctionGerm::linear(ring::random_linear_form(v, 8, 32), v);
  auto g = milnor_fiber_report(strata, L, gen);
  REQUIRE(g.size() == 3);
  CHECK(g[0].multiplicity == 0);
  CHECK(g[1].multiplicity == 0);
  CHECK(g[2].multiplicity == 1);
}

TEST_CASE("hypersurface bouquet report") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  auto stv = testing::vars({"s", "t", "v"});
  const Rational o(0);
  ChartFixture t1{"T1", stv, Ps(stv, {"-2*t^2", "v-s", "2*t-v"}), {{o, o, o}}};
  ChartFixture t3{"T3", stv, Ps(stv, {"-2*t^2*v", "1-s*v", "2*v*t-1"}), {{o, o, o}}};

  BReportInput in{P(v, "z^2-x^2*y"), Ps(v, {"x", "z"}), fn(v, "y-z"), {t1, t3}, {}, {}, 1, std::nullopt, 1,
                  std::nullopt, std::nullopt, true};
  auto r = hypersurface_b_report(in, gen);
  CHECK(r.dim_VI == 1);
  CHECK(r.e_main == 2);
  CHECK(r.e_VI_f == 0);
  CHECK(r.b == 2);
  CHECK_FALSE(r.lambda0_checked);

  // lambda0 = e(J(g),I) + e(JM(V(I))) + D_infty = 1 + 0 + 1
  in.lambda0 = 2;
  auto checked = hypersurface_b_report(in, gen);
  CHECK(checked.lambda0_checked);
  CHECK(checked.e_JM_VI == 0u);
  in.lambda0 = 3;
  CHECK(code_of([&] { (void)hypersurface_b_report(in, gen); }) == ErrorCode::Inconsistent);
  in.lambda0 = std::nullopt;

  BReportInput missing = in;
  missing.e_Jg_I = std::nullopt;
  CHECK(code_of([&] { (void)hypersurface_b_report(missing, gen); }) == ErrorCode::MissingInput);
  missing = in;
  missing.D_infty = std::nullopt;
  CHECK(code_of([&] { (void)hypersurface_b_report(missing, gen); }) == ErrorCode::MissingInput);
  missing = in;
  missing.main_charts.clear();
  CHECK(code_of([&] { (void)hypersurface_b_report(missing, gen); }) == ErrorCode::MissingInput);
}

TEST_CASE("bouquet report: the second identity with generic-form charts") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  auto stv = testing::vars({"s", "t", "v"});
  const Rational o(0);
  ChartFixture t1{"T1", stv, Ps(stv, {"-2*t^2", "v-s", "2*t-v"}), {{o, o, o}}};
  ChartFixture t3{"T3", stv, Ps(stv, {"-2*t^2*v", "1-s*v", "2*v*t-1"}), {{o, o, o}}};
  ChartFixture s1{"S1", stv, Ps(stv, {"s", "t+v", "v"}), {{o, o, o}}};
  // e_generic = lambda0 + mu_slice - 2 D_infty - 2 e(JM(V(I))) = 2 + 1 - 2 - 0
  BReportInput in{P(v, "z^2-x^2*y"), Ps(v, {"x", "z"}), fn(v, "y-z"), {t1, t3}, {}, {s1}, 1, 2, 1, std::nullopt, 1, true};
  auto r = hypersurface_b_report(in, gen);
  CHECK(r.b == 2);
  CHECK(r.e_generic == 1u);
  CHECK(r.generic_checked);
  in.mu_slice = 2;
  CHECK(code_of([&] { (void)hypersurface_b_report(in, gen); }) == ErrorCode::Inconsistent);
  in.mu_slice = 1;
  in.e_generic = 3;
  CHECK(code_of([&] { (void)hypersurface_b_report(in, gen); }) == ErrorCode::Inconsistent);
  // f = x vanishes on V(I)
  in.e_generic = std::nullopt;
  in.f = fn(v, "x");
  CHECK(code_of([&] { (void)hypersurface_b_report(in, gen); }) == ErrorCode::NonIsolated);
}

TEST_CASE("bouquet report with I the unit ideal") {
  Genericity gen;
  auto v = testing::vars({"x", "y", "z"});
  BReportInput in{P(v, "x^2+y^2+z^2"), Ps(v, {"1"}), fn(v, "x"), {}, {}, {}, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, std::nullopt, false};
  auto r = hypersurface_b_report(in, gen);
  CHECK(r.degenerate);
  // the Milnor number of the slice y^2 + z^2
  CHECK(r.b == static_cast<std::int64_t>(invariants::milnor_hypersurface(P(testing::vars({"y", "z"}), "y^2+z^2"))));
}

TEST_CASE("family defect scan") {
  Genericity gen;
  auto w = testing::vars({"x", "y"});
  auto wt = testing::vars({"x", "y", "t"});
  auto trivial = family_defect_scan(w, {"t"}, {}, P(wt, "x^2+y^3"), {{Rational(0)}, {Rational(1)}, {Rational(5)}}, gen);
  REQUIRE(trivial.samples.size() == 3);
  CHECK(trivial.verdict == FamilyVerdict::Constant);
  for (const auto& s : trivial.samples) CHECK(s.report.defect == 2);
  CHECK_FALSE(trivial.note.empty());

  auto fam = family_defect_scan(w, {"t"}, {}, P(wt, "x^2+y^3+y*t*x"), {{Rational(0)}, {Rational(1)}}, gen);
  REQUIRE(fam.samples.size() == 2);
  CHECK(fam.samples[0].report.defect ==
        static_cast<std::int64_t>(oracle_ideal_colength(Ps(w, {"2*x", "3*y^2"}), 2)));
  CHECK(fam.samples[1].report.defect ==
        static_cast<std::int64_t>(oracle_ideal_colength(Ps(w, {"2*x+y", "3*y^2+x"}), 2)));
  CHECK(fam.verdict == FamilyVerdict::Varies);
  CHECK(fam.first_deviation == 1u);

  auto empty = family_defect_scan(w, {"t"}, {}, P(wt, "x^2+y^3"), {}, gen);
  CHECK(empty.samples.empty());
  CHECK(empty.verdict == FamilyVerdict::Vacuous);

  CHECK(code_of([&] {
          (void)family_defect_scan(w, {"t"}, {}, P(wt, "x^2+t*y^3"), {{Rational(1)}, {Rational(0)}}, gen);
        }) == ErrorCode::NonIsolated);
}

}  // TEST_SUITE
