#include <doctest.h>

#include "bvk/catalog.hpp"
#include "bvk/errors.hpp"
#include "bvk/schrodinger.hpp"

using namespace bvk;

namespace {

const GridDomain kGrid = GridDomain::cube(-1.0, 1.0, 5);

double max_grid_diff(const Expr& a, const Expr& b, const GridDomain& grid) {
    ResidualAccumulator acc;
    accumulate_diff(a, b, grid, acc);
    return acc.max();
}

SchrodingerInstance exp_instance() { return nu_from_f0(exp(Expr::variable(Var::z1)), kGrid); }

}  // namespace

TEST_CASE("nu from a particular solution") {
    // exp(z1) -> nu = 1, cosh(z1) -> nu = 1, constants -> nu = 0
    CHECK(max_grid_diff(exp_instance().nu, Expr::constant(1.0), kGrid) < 1e-13);
    SchrodingerInstance ch = nu_from_f0(cosh(Expr::variable(Var::z1)), kGrid);
    CHECK(max_grid_diff(ch.nu, Expr::constant(1.0), kGrid) < 1e-12);
    SchrodingerInstance one = nu_from_f0(Expr::constant(1.0), kGrid);
    CHECK(max_grid_diff(one.nu, Expr::constant(0.0), kGrid) == 0.0);

    // (Delta_C - nu) f0 = 0 by construction
    for (const auto& entry : f0_catalog()) {
        SchrodingerInstance inst = nu_from_f0(entry.f0, kGrid);
        CAPTURE(entry.name);
        CHECK(max_grid_diff(laplacian_c(inst.f0), inst.nu * inst.f0, kGrid) <= 1e-11);
        // nu is C(i1)-valued
        CHECK(max_grid_diff(vector_part(inst.nu, ModulusAxis::i2), Expr::constant(0.0), kGrid) <=
              1e-13);
    }

    CHECK_THROWS_AS(nu_from_f0(Expr::variable(Var::z1), kGrid), VanishingF0Error);
    CHECK_THROWS_AS(nu_from_f0(Expr::constant(Bicomplex::i2()) * exp(Expr::variable(Var::z1)),
                               kGrid),
                    NotComplexValuedError);
}

TEST_CASE("factorization of the complexified operator") {
    SchrodingerInstance inst = exp_instance();

    // the right factor annihilates f0
    Expr a = wirtinger_apply(inst.f0, WirtingerOp::omega) / inst.f0;
    Expr annihilated = wirtinger_apply(inst.f0, WirtingerOp::omega) -
                       a * conjugate(inst.f0, Conjugation::dag2);
    CHECK(max_grid_diff(annihilated, Expr::constant(0.0), kGrid) <= 1e-13);
    CHECK(factorization_residual(inst, inst.f0).max_residual <= 1e-12);

    // generic C(i1)-valued test functions, including a cz-dependent one
    for (const char* phi : {"z1^2", "exp(z2)", "z1*z2", "cz1", "sin(z1)*cz2"}) {
        CAPTURE(phi);
        ResidualReport r = factorization_residual(inst, parse_expr(phi));
        CHECK(r.max_residual <= 1e-11);
        CHECK(r.pass);
    }

    // nonvanishing region of exp(z1)cos(z2) on the default cube
    SchrodingerInstance trig = nu_from_f0(f0_lookup("exp-z1-cos-z2"), kGrid);
    CHECK(factorization_residual(trig, parse_expr("exp(z2)")).max_residual <= 1e-11);

    CHECK_THROWS_AS(factorization_residual(inst, parse_expr("I2*z1")), NotComplexValuedError);
}

TEST_CASE("one-dimensional analogue") {
    GridDomain line{{-1, 1, 9}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
    Expr x = Expr::variable(Var::z1);

    // f0 = exp(x), phi = x^2: both sides equal x^2 - 2
    ResidualReport r = one_dim_factorization_check(exp(x), pow(x, 2), line);
    CHECK(r.max_residual <= 1e-12);
    // phi = f0 annihilates both sides
    CHECK(one_dim_factorization_check(exp(x), exp(x), line).max_residual <= 1e-13);
    // f0 = cosh, phi = sinh
    CHECK(one_dim_factorization_check(cosh(x), sinh(x), line).max_residual <= 1e-12);

    CHECK_THROWS_AS(one_dim_factorization_check(sin(x), Expr::constant(1.0), line),
                    VanishingF0Error);  // sin vanishes at 0
    CHECK_THROWS_AS(one_dim_factorization_check(exp(x), Expr::variable(Var::z2), line),
                    ConfigError);
    CHECK_THROWS_AS(one_dim_factorization_check(exp(x), pow(x, 2), kGrid), ConfigError);
}

TEST_CASE("main vekua equation") {
    // f0 = exp(z1): b = 1/2 and b_omega = 0 = nu/4 - 1/4
    VekuaMainEquation eq = main_vekua(exp_instance());
    CHECK(max_grid_diff(eq.b, Expr::constant(0.5), kGrid) < 1e-13);
    CHECK(max_grid_diff(wirtinger_apply(eq.b, WirtingerOp::omega), Expr::constant(0.0), kGrid) ==
          0.0);
    CHECK(eq.b_omega_identity.pass);
    CHECK(eq.b_omega_leak <= 1e-12);

    // f0 = 1: the equation degenerates to plain holomorphy
    VekuaMainEquation triv = main_vekua(nu_from_f0(Expr::constant(1.0), kGrid));
    CHECK(max_grid_diff(triv.b, Expr::constant(0.0), kGrid) == 0.0);

    // pair validation: Vec{f0^dag2 (i2/f0)} = 1
    PairValidation pv = validate_pair(eq.pair);
    CHECK(pv.nondegenerate);
    CHECK(pv.min_quantity == doctest::Approx(1.0).epsilon(1e-12));

    // both pair elements solve the main Vekua equation
    for (const Expr& sol : {eq.pair.F, eq.pair.G}) {
        Expr residual = wirtinger_apply(sol, WirtingerOp::dag2) -
                        eq.b * conjugate(sol, Conjugation::dag2);
        CHECK(max_grid_diff(residual, Expr::constant(0.0), kGrid) <= 1e-12);
    }

    // b_omega leak certified on every catalog instance
    for (const auto& entry : f0_catalog()) {
        VekuaMainEquation e = main_vekua(nu_from_f0(entry.f0, kGrid));
        CAPTURE(entry.name);
        CHECK(e.b_omega_leak <= 1e-12);
        CHECK(e.b_omega_identity.pass);
    }
}

TEST_CASE("darboux potential") {
    // f0 = exp(z1): eta = -1 + 2 = 1
    DarbouxPotential d = darboux_potential(exp_instance());
    CHECK(max_grid_diff(d.eta, Expr::constant(1.0), kGrid) <= 1e-13);
    CHECK(d.component_identity.pass);

    // f0 = 1: eta = 0
    DarbouxPotential d0 = darboux_potential(nu_from_f0(Expr::constant(1.0), kGrid));
    CHECK(max_grid_diff(d0.eta, Expr::constant(0.0), kGrid) == 0.0);

    // f0 = cosh(z1): eta = -1 + 2 tanh^2, nonconstant
    SchrodingerInstance ch = nu_from_f0(cosh(Expr::variable(Var::z1)), kGrid);
    DarbouxPotential dc = darboux_potential(ch);
    Expr tanh_sq = pow(sinh(Expr::variable(Var::z1)), 2) / pow(cosh(Expr::variable(Var::z1)), 2);
    CHECK(max_grid_diff(dc.eta, Expr::constant(2.0) * tanh_sq - Expr::constant(1.0), kGrid) <=
          1e-12);
    CHECK(dc.component_identity.pass);

    // eta agrees with the coefficient form 4(|b|^2 - b_omega)
    VekuaMainEquation eq = main_vekua(ch);
    Expr via_b = Expr::constant(4.0) * (eq.b * conjugate(eq.b, Conjugation::dag2) -
                                        wirtinger_apply(eq.b, WirtingerOp::omega));
    CHECK(max_grid_diff(dc.eta, via_b, kGrid) <= 1e-11);
}

TEST_CASE("splitting theorem") {
    VekuaMainEquation eq = main_vekua(exp_instance());

    // W = f0: u = f0 solves the original equation, v = 0
    SplitCheckResult base = split_check(eq, eq.pair.F);
    CHECK(base.is_vekua_solution);
    CHECK(base.report.pass);

    // W = i2/f0: u = 0, v = 1/f0 solves (Delta_C - eta) v = 0
    SplitCheckResult g = split_check(eq, eq.pair.G);
    CHECK(g.is_vekua_solution);
    CHECK(g.vector_eq.max_residual <= 1e-12);
    CHECK(g.report.pass);

    // complex-linear combinations stay solutions; all three residuals small
    Expr W = Expr::constant(Bicomplex{0.3, -1.2, 0, 0}) * eq.pair.F +
             Expr::constant(Bicomplex{2.0, 0.7, 0, 0}) * eq.pair.G;
    SplitCheckResult mix = split_check(eq, W);
    CHECK(mix.is_vekua_solution);
    CHECK(mix.vekua.max_residual <= 1e-11);
    CHECK(mix.scalar_eq.max_residual <= 1e-11);
    CHECK(mix.vector_eq.max_residual <= 1e-11);
    CHECK(mix.lemma.scalar_eq.pass);
    CHECK(mix.lemma.vector_eq.pass);

    // a non-solution is flagged advisory but still reported
    SplitCheckResult bad = split_check(eq, conjugate(omega_expr(), Conjugation::dag2));
    CHECK(!bad.is_vekua_solution);
    CHECK(!bad.report.pass);
    CHECK(bad.report.note.find("advisory") != std::string::npos);
}

TEST_CASE("general-coefficient splitting lemma") {
    // b = c constant: W = exp(2 c z1) and W = i2 exp(-2 c z1) are solutions
    Bicomplex c{0.4, 0.3, 0, 0};
    Expr b = Expr::constant(c);
    Expr z1 = Expr::variable(Var::z1);
    Expr w_plus = exp(Expr::constant(2.0 * c) * z1);
    Expr w_minus = Expr::constant(Bicomplex::i2()) * exp(Expr::constant(-2.0 * c) * z1);

    for (const Expr& W : {w_plus, w_minus}) {
        LemmaSplit ls = lemma_split_residuals(b, W, kGrid);
        CHECK(ls.b_omega_leak == 0.0);
        CHECK(ls.vekua.max_residual <= 1e-12);
        CHECK(ls.scalar_eq.max_residual <= 1e-11);
        CHECK(ls.vector_eq.max_residual <= 1e-11);
    }
}

TEST_CASE("plane specializations") {
    // f0 = exp(x) lives on both planes
    SchrodingerInstance inst = nu_from_f0(f0_lookup("exp-x"), GridDomain::defaults());
    Expr x = parse_expr("(z1 + cz1)/2");
    Expr p = parse_expr("(z2 + cz2)/2");
    Expr q = parse_expr("(z2 - cz2)/(2*I1)");

    Specialization lap = specialize(inst, Plane::c_i2, {pow(x, 2), x * p, exp(p)});
    CHECK(lap.plane_adapted);
    CHECK(lap.summary.pass);
    for (const auto& r : lap.reports) {
        CAPTURE(r.case_id);
        CHECK(r.pass);
    }
    // the classical-form cases are present for plane-adapted input
    bool found_classical = false;
    for (const auto& r : lap.reports)
        found_classical |= r.anchor == "classical-schrodinger-factorization";
    CHECK(found_classical);

    Specialization kg = specialize(inst, Plane::d, {pow(x, 2), x * q, exp(q)});
    CHECK(kg.plane_adapted);
    CHECK(kg.summary.pass);
    bool found_kg = false;
    for (const auto& r : kg.reports) found_kg |= r.anchor == "klein-gordon-factorization";
    CHECK(found_kg);

    // constant f0: everything reduces to zero potentials
    Specialization triv =
        specialize(nu_from_f0(Expr::constant(1.0), GridDomain::defaults()), Plane::c_i2,
                   {pow(x, 2)});
    CHECK(triv.summary.pass);

    // f0 = exp(z1) varies off the plane: restricted runs still pass, the
    // classical form is skipped
    Specialization off = specialize(exp_instance(), Plane::c_i2, {pow(x, 2)});
    CHECK(!off.plane_adapted);
    CHECK(off.summary.note.find("classical") != std::string::npos);
}
