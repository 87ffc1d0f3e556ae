#include <doctest.h>

#include <random>

#include "bvk/calculus.hpp"
#include "bvk/errors.hpp"

using namespace bvk;

namespace {

const Expr Z1 = Expr::variable(Var::z1);
const Expr Z2 = Expr::variable(Var::z2);
const Expr I2C = Expr::constant(Bicomplex::i2());

Expr omega() { return Z1 + I2C * Z2; }

double rel_err(const Bicomplex& a, const Bicomplex& b) {
    return euclid_norm(a - b) / std::max({1.0, euclid_norm(a), euclid_norm(b)});
}

double max_grid_diff(const Expr& a, const Expr& b, const GridDomain& grid) {
    ResidualAccumulator acc;
    accumulate_diff(a, b, grid, acc);
    return acc.max();
}

const GridDomain kSmall = GridDomain::cube(-1.0, 1.0, 5);

}  // namespace

TEST_CASE("wirtinger operators on omega") {
    // d_omega(omega) = (1 - i2*i2)/2 = 1, d_dag2(omega) = (1 + i2*i2)/2 = 0
    Expr w = omega();
    CHECK(max_grid_diff(wirtinger_apply(w, WirtingerOp::omega), Expr::constant(1.0), kSmall) ==
          0.0);
    CHECK(max_grid_diff(wirtinger_apply(w, WirtingerOp::dag2), Expr::constant(0.0), kSmall) ==
          0.0);
    // hand expansion: d_dag2 of (z1 - i2 z2) = (1 + i2*(-i2))/2 = 1
    Expr wbar = Z1 - I2C * Z2;
    CHECK(max_grid_diff(wirtinger_apply(wbar, WirtingerOp::dag2), Expr::constant(1.0), kSmall) ==
          0.0);
    // dag1/dag3 annihilate cz-free expressions
    CHECK(is_constant_zero(wirtinger_apply(pow(w, 3), WirtingerOp::dag1)));
    CHECK(is_constant_zero(wirtinger_apply(exp(Z1), WirtingerOp::dag3)));
}

TEST_CASE("complex laplacian and gradient") {
    CHECK(max_grid_diff(laplacian_c(pow(Z1, 2)), Expr::constant(2.0), kSmall) == 0.0);
    CHECK(max_grid_diff(laplacian_c(pow(omega(), 2)), Expr::constant(0.0), kSmall) == 0.0);
    CHECK(max_grid_diff(laplacian_c(exp(Z1)), exp(Z1), kSmall) < 1e-15);
    CHECK(max_grid_diff(gradient_c(exp(Z1)), exp(Z1), kSmall) < 1e-15);
    // grad_C omega^2 = 2 omega + i2 * 2 omega * i2 = 0? no: d_z2 omega^2 = 2 omega i2,
    // so grad = 2 omega + i2 * (2 omega i2) = 2 omega - 2 omega = 0
    CHECK(max_grid_diff(gradient_c(pow(omega(), 2)), Expr::constant(0.0), kSmall) == 0.0);
}

TEST_CASE("laplacian factorizes through the wirtinger pair") {
    CHECK(laplacian_factorization_residual(pow(omega(), 3), kSmall).max_residual == 0.0);
    ResidualReport r = laplacian_factorization_residual(exp(Z1) * sin(Z2), kSmall);
    CHECK(r.max_residual <= 1e-12);
    CHECK(r.pass);
    // Delta_C has no cz derivatives, so both sides vanish on cz1*z1
    CHECK(laplacian_factorization_residual(Expr::variable(Var::cz1) * Z1, kSmall).max_residual ==
          0.0);
}

TEST_CASE("real-partials expansion against finite differences") {
    // x^2 - y^2 written in Wirtinger variables is (z1^2 + cz1^2)/2
    Expr e = parse_expr("(z1^2 + cz1^2)/2");
    GridDomain grid = GridDomain::cube(-1.0, 1.0, 5);
    RealExpansionResult res = real_expansion_residual(e, grid);
    CHECK(res.report.max_residual < 1e-10);  // degree <= 3: central differences are exact
    CHECK(res.step[0] == doctest::Approx(0.5));

    RealExpansionResult cst = real_expansion_residual(Expr::constant(3.0), grid);
    CHECK(cst.report.max_residual <= 1e-13);

    // order sweep: halving h cuts the residual by ~4.  The test function
    // must mix z1 and cz1: for z1-holomorphic functions the h^2 truncation
    // terms of d2x and d2y cancel (f_xxxx = f_yyyy) and the convergence
    // jumps to h^4.
    GridDomain planar{{-1, 1, 5}, {-1, 1, 5}, {0, 0, 1}, {0, 0, 1}};
    Expr mixed = exp(Z1) * Expr::variable(Var::cz1);
    double prev = 0;
    for (int level = 0; level < 3; ++level) {
        RealExpansionResult r = real_expansion_residual(mixed, planar.refined(level));
        if (level > 0) {
            double ratio = prev / r.report.max_residual;
            CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
        }
        prev = r.report.max_residual;
    }
    // ... while exp(z1) itself superconverges
    double coarse = real_expansion_residual(exp(Z1), planar).report.max_residual;
    double fine = real_expansion_residual(exp(Z1), planar.refined(1)).report.max_residual;
    CHECK(coarse / fine > 8.0);

    // an expression varying along a frozen axis is rejected
    CHECK_THROWS_AS(real_expansion_residual(exp(Z2), planar), ConfigError);
}

TEST_CASE("holomorphy via Cauchy-Riemann") {
    HolomorphyCheck holo = check_t_holomorphic(pow(omega(), 2), kSmall);
    CHECK(holo.holomorphic);
    CHECK(holo.report.max_residual == 0.0);
    CHECK(max_grid_diff(holo.derivative, Expr::constant(2.0) * omega(), kSmall) == 0.0);

    // omega^dag2 breaks CR: f1_z1 = 1 while f2_z2 = -1
    HolomorphyCheck anti = check_t_holomorphic(Z1 - I2C * Z2, kSmall);
    CHECK(!anti.holomorphic);
    CHECK(anti.cr1_residual == doctest::Approx(2.0));
    CHECK(anti.zbar1_residual == 0.0);

    // exp(omega) = exp(z1)(cos z2 + i2 sin z2) and its derivative is itself
    Expr eo = exp(omega());
    Expr expanded = exp(Z1) * (cos(Z2) + I2C * sin(Z2));
    CHECK(max_grid_diff(eo, expanded, kSmall) < 1e-14);
    HolomorphyCheck h = check_t_holomorphic(eo, kSmall);
    CHECK(h.holomorphic);
    CHECK(h.report.max_residual <= 1e-12);
    CHECK(max_grid_diff(h.derivative, eo, kSmall) < 1e-14);
    CHECK(h.min_abs_det_jacobian > 0.0);
}

TEST_CASE("dagger-derivative criterion") {
    DaggerCriterion cubic = dagger_derivative_criterion(pow(omega(), 3), kSmall);
    CHECK(cubic.derivative_exists);
    CHECK(cubic.agrees_with_cr);
    CHECK(cubic.residuals[0] == 0.0);
    CHECK(cubic.residuals[1] == 0.0);
    CHECK(cubic.residuals[2] == 0.0);

    // f_{dag1}(cz1) = f_{dag3}(cz1) = 1/2, f_{dag2}(cz1) = 0
    DaggerCriterion zb = dagger_derivative_criterion(Expr::variable(Var::cz1), kSmall);
    CHECK(!zb.derivative_exists);
    CHECK(zb.agrees_with_cr);
    CHECK(zb.residuals[0] == doctest::Approx(0.5));
    CHECK(zb.residuals[1] == 0.0);
    CHECK(zb.residuals[2] == doctest::Approx(0.5));

    const char* mixed[] = {"z1", "exp(z1)", "cz1*z1", "sin(z2)"};
    for (const char* src : mixed) {
        DaggerCriterion d = dagger_derivative_criterion(parse_expr(src), kSmall);
        CAPTURE(src);
        CHECK(d.agrees_with_cr);
        CHECK(!d.derivative_exists);
    }
}

TEST_CASE("operator linearity and product rule") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const char* pool[] = {"exp(z1)", "sin(z2)", "z1^2*z2", "cz1 + J*z2", "cosh(z1*z2)"};
    for (auto op : {WirtingerOp::omega, WirtingerOp::dag1, WirtingerOp::dag2, WirtingerOp::dag3}) {
        for (int trial = 0; trial < 4; ++trial) {
            Expr e1 = parse_expr(pool[trial]);
            Expr e2 = parse_expr(pool[(trial + 2) % 5]);
            Bicomplex alpha{dist(rng), dist(rng), dist(rng), dist(rng)};
            Bicomplex beta{dist(rng), dist(rng), dist(rng), dist(rng)};
            Expr lin_lhs = wirtinger_apply(Expr::constant(alpha) * e1 + Expr::constant(beta) * e2, op);
            Expr lin_rhs = Expr::constant(alpha) * wirtinger_apply(e1, op) +
                           Expr::constant(beta) * wirtinger_apply(e2, op);
            CHECK(max_grid_diff(lin_lhs, lin_rhs, kSmall) <= 1e-12);

            Expr prod_lhs = wirtinger_apply(e1 * e2, op);
            Expr prod_rhs = e1 * wirtinger_apply(e2, op) + e2 * wirtinger_apply(e1, op);
            CHECK(max_grid_diff(prod_lhs, prod_rhs, kSmall) <= 1e-12);
        }
    }
}

TEST_CASE("restriction planes") {
    GridDomain grid = GridDomain::defaults();
    GridDomain c2 = restrict_plane(grid, Plane::c_i2);
    CHECK(c2.y.frozen());
    CHECK(c2.q.frozen());
    CHECK(!c2.x.frozen());
    GridDomain d = restrict_plane(grid, Plane::d);
    CHECK(d.y.frozen());
    CHECK(d.p.frozen());

    // x^2 + p^2: 4 Delta_C e = (d2x + d2p) e = 4 on the C(i2) plane
    Expr x = parse_expr("(z1 + cz1)/2");
    Expr p = parse_expr("(z2 + cz2)/2");
    Expr q = parse_expr("(z2 - cz2)/(2*I1)");
    Expr e = x * x + p * p;
    CHECK(max_grid_diff(Expr::constant(4.0) * laplacian_c(e), Expr::constant(4.0), c2) < 1e-14);
    ResidualReport rep = plane_reduction_residual(e, grid, Plane::c_i2);
    CHECK(rep.max_residual <= 1e-12);

    // x^2 + q^2 under the wave operator: 2 - 2 = 0
    Expr ew = x * x + q * q;
    CHECK(max_grid_diff(Expr::constant(4.0) * laplacian_c(ew), Expr::constant(0.0), d) < 1e-14);
    CHECK(plane_reduction_residual(ew, grid, Plane::d).max_residual <= 1e-12);

    CHECK(plane_reduction_residual(Expr::constant(5.0), grid, Plane::c_i2).max_residual == 0.0);
    CHECK(plane_reduction_residual(Expr::constant(5.0), grid, Plane::d).max_residual == 0.0);
}

TEST_CASE("sampling and grids") {
    GridDomain g{{-1, 1, 3}, {0, 0, 1}, {-1, 1, 5}, {0.5, 0.5, 1}};
    CHECK(g.size() == 15);
    SampledField f = sample(omega(), g);
    CHECK(f.values.size() == 15);
    // row-major ordering over (x, y, p, q)
    GridPoint first = g.point(0);
    CHECK(first.x == -1.0);
    CHECK(first.p == -1.0);
    CHECK(first.q == 0.5);
    GridPoint second = g.point(1);
    CHECK(second.p == -0.5);
    CHECK(f.values[1] == evaluate(omega(), second.z1(), second.z2()));

    CHECK_THROWS_AS(GridDomain({-1, 1, 2}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}).validate(3),
                    ConfigError);
    GridDomain refined = g.refined(1);
    CHECK(refined.x.count == 5);
    CHECK(refined.y.count == 1);
    CHECK(refined.p.count == 9);
}
