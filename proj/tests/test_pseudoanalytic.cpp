#include <doctest.h>

#include <random>

#include "bvk/catalog.hpp"
#include "bvk/errors.hpp"
#include "bvk/pseudoanalytic.hpp"

using namespace bvk;

namespace {

const GridDomain kGrid = GridDomain::cube(-1.0, 1.0, 5);

GeneratingPair unit_pair() {
    return {Expr::constant(1.0), Expr::constant(Bicomplex::i2()), PairClass::r1, kGrid};
}

GeneratingPair schrodinger_pair() {
    Expr z1 = Expr::variable(Var::z1);
    return {exp(z1), Expr::constant(Bicomplex::i2()) / exp(z1), PairClass::r1, kGrid};
}

double max_grid_diff(const Expr& a, const Expr& b, const GridDomain& grid) {
    ResidualAccumulator acc;
    accumulate_diff(a, b, grid, acc);
    return acc.max();
}

}  // namespace

TEST_CASE("pair validation") {
    PairValidation ok = validate_pair(unit_pair());
    CHECK(ok.nondegenerate);
    CHECK(ok.min_quantity == doctest::Approx(1.0));

    GeneratingPair bad{Expr::constant(1.0), Expr::constant(1.0), PairClass::r1, kGrid};
    CHECK(!validate_pair(bad).nondegenerate);
    CHECK_THROWS_AS(require_valid(bad), DegeneratePairError);

    // (f0, i2/f0): Vec{F^dag2 G} = 1 everywhere
    PairValidation sp = validate_pair(schrodinger_pair());
    CHECK(sp.nondegenerate);
    CHECK(sp.min_quantity == doctest::Approx(1.0).epsilon(1e-12));

    // R2 and R3 classes accept their natural unit pairs
    GeneratingPair r2{Expr::constant(1.0), Expr::constant(Bicomplex::i1()), PairClass::r2, kGrid};
    CHECK(validate_pair(r2).nondegenerate);
    GeneratingPair r3{Expr::constant(1.0), Expr::constant(Bicomplex::i1()), PairClass::r3, kGrid};
    CHECK(validate_pair(r3).nondegenerate);

    // the whole R1 catalog is admissible on the default grid
    for (const auto& entry : r1_pair_catalog()) {
        GeneratingPair p{entry.F, entry.G, PairClass::r1, GridDomain::defaults()};
        CAPTURE(entry.name);
        CHECK(validate_pair(p).nondegenerate);
    }
}

TEST_CASE("decomposition against the Cramer oracle") {
    GeneratingPair p = unit_pair();

    // w = F -> phi = 1, psi = 0
    Decomposition dF = decompose(p.F, p);
    CHECK(max_grid_diff(dF.phi, Expr::constant(1.0), kGrid) < 1e-14);
    CHECK(max_grid_diff(dF.psi, Expr::constant(0.0), kGrid) < 1e-14);

    // w = 3F + (2+5i1)G recovers the constants
    Bicomplex mu{2, 5, 0, 0};
    Expr w = Expr::constant(3.0) * p.F + Expr::constant(mu) * p.G;
    Decomposition d = decompose(w, p);
    CHECK(max_grid_diff(d.phi, Expr::constant(3.0), kGrid) < 1e-13);
    CHECK(max_grid_diff(d.psi, Expr::constant(mu), kGrid) < 1e-13);
    CHECK(d.reconstruction_residual < 1e-13);
    CHECK(d.subalgebra_residual < 1e-14);

    // random catalog w against (1, i2): phi = Sc(w), psi = Vec(w), and an
    // independent 2x2 Cramer solve at each grid point
    for (const char* name : {"exp-omega", "mod-z1", "dag1-omega"}) {
        Expr e = expr_lookup(name);
        Decomposition dd = decompose(e, p);
        CHECK(max_grid_diff(dd.phi, scalar_part(e, ModulusAxis::i2), kGrid) < 1e-12);
        CHECK(max_grid_diff(dd.psi, vector_part(e, ModulusAxis::i2), kGrid) < 1e-12);
        CHECK(dd.reconstruction_residual < 1e-12);
    }

    GeneratingPair sp = schrodinger_pair();
    CompiledExpr cF(sp.F), cG(sp.G), cw(expr_lookup("cosh-2x"));
    Decomposition ds = decompose(expr_lookup("cosh-2x"), sp);
    for (std::size_t i = 0; i < kGrid.size(); i += 7) {
        GridPoint pt = kGrid.point(i);
        Complex z1 = pt.z1(), z2 = pt.z2();
        // Cramer: solve [ScF ScG; VecF VecG] (phi psi)^T = (Sc w, Vec w)^T
        Bicomplex F = cF(z1, z2), G = cG(z1, z2), W = cw(z1, z2);
        Complex det = F.z1() * G.z2() - F.z2() * G.z1();
        Complex phi = (W.z1() * G.z2() - W.z2() * G.z1()) / det;
        Complex psi = (F.z1() * W.z2() - F.z2() * W.z1()) / det;
        CHECK(std::abs(ds.phi_field.values[i].z1() - phi) < 1e-12);
        CHECK(std::abs(ds.psi_field.values[i].z1() - psi) < 1e-12);
    }
}

TEST_CASE("characteristic coefficients") {
    // constant pair: all coefficients vanish
    CharCoefficients cc = char_coeffs(unit_pair());
    for (int k = 0; k < 3; ++k) {
        CHECK(max_grid_diff(cc.a[k], Expr::constant(0.0), kGrid) == 0.0);
        CHECK(max_grid_diff(cc.b[k], Expr::constant(0.0), kGrid) == 0.0);
    }
    CHECK(max_grid_diff(cc.A, Expr::constant(0.0), kGrid) == 0.0);
    CHECK(max_grid_diff(cc.B, Expr::constant(0.0), kGrid) == 0.0);
    // denominator of (1, i2) is -2 i2
    CHECK(max_grid_diff(cc.denominator, Expr::constant(-2.0 * Bicomplex::i2()), kGrid) == 0.0);

    // (f0, i2/f0) with f0 = exp(z1): a^(2) = 0 and b^(2) = 1/2
    CharCoefficients sc = char_coeffs(schrodinger_pair());
    CHECK(max_grid_diff(sc.a[1], Expr::constant(0.0), kGrid) < 1e-13);
    CHECK(max_grid_diff(sc.b[1], Expr::constant(0.5), kGrid) < 1e-13);

    // denominator identity: F G^dag2 - F^dag2 G = -2 Vec{F^dag2 G} i2
    for (const auto& entry : r1_pair_catalog()) {
        GeneratingPair p{entry.F, entry.G, PairClass::r1, kGrid};
        CharCoefficients c = char_coeffs(p);
        Expr vec = vector_part(conjugate(p.F, Conjugation::dag2) * p.G, ModulusAxis::i2);
        Expr rhs = Expr::constant(-2.0 * Bicomplex::i2()) * vec;
        CAPTURE(entry.name);
        CHECK(max_grid_diff(c.denominator, rhs, kGrid) <= 1e-12);
    }
}

TEST_CASE("generating pair elements are pseudoanalytic with zero derivative") {
    for (const auto& entry : r1_pair_catalog()) {
        GeneratingPair p{entry.F, entry.G, PairClass::r1, kGrid};
        CAPTURE(entry.name);
        for (int k = 1; k <= 3; ++k) {
            CHECK(vekua_residual(p.F, p, k).max_residual <= 1e-11);
            CHECK(vekua_residual(p.G, p, k).max_residual <= 1e-11);
        }
        CHECK(max_grid_diff(fg_derivative(p.F, p), Expr::constant(0.0), kGrid) <= 1e-11);
        CHECK(max_grid_diff(fg_derivative(p.G, p), Expr::constant(0.0), kGrid) <= 1e-11);
    }
}

TEST_CASE("fg derivative") {
    // (1, i2): the derivative reduces to the T-derivative; omega^2 -> 2 omega
    GeneratingPair p = unit_pair();
    Expr w = pow(omega_expr(), 2);
    CHECK(max_grid_diff(fg_derivative(w, p), Expr::constant(2.0) * omega_expr(), kGrid) == 0.0);

    // both derivative routes agree on Vekua solutions
    GeneratingPair sp = schrodinger_pair();
    for (const Expr& sol : {sp.F, sp.G, sp.F + Expr::constant(Bicomplex{0, 2, 0, 0}) * sp.G}) {
        CHECK(max_grid_diff(fg_derivative(sol, sp), fg_derivative_via_phi_psi(sol, sp), kGrid) <=
              1e-10);
    }
}

TEST_CASE("vekua residual of a non-solution") {
    // (1, i2), w = omega^dag2, k = 2: w_dag2 = 1 while a = b = 0
    GeneratingPair p = unit_pair();
    Expr w = conjugate(omega_expr(), Conjugation::dag2);
    ResidualReport r = vekua_residual(w, p, 2);
    CHECK(r.max_residual == doctest::Approx(1.0));
    CHECK(!r.pass);
}

TEST_CASE("reduction condition") {
    // constant pairs satisfy it trivially for every k
    for (int k = 1; k <= 3; ++k) {
        ReductionCondition rc = reduction_condition(unit_pair(), k, expr_lookup("exp-omega"));
        CAPTURE(k);
        CHECK(rc.holds);
        CHECK(rc.identity.max_residual == 0.0);
        CHECK(rc.equivalence.max_residual <= 1e-12);
    }
    // k = 2 is vacuous for class R1 ([G^dag2 - G^dag2] = 0)
    ReductionCondition vac = reduction_condition(schrodinger_pair(), 2, expr_lookup("mod-z1"));
    CHECK(vac.holds);
    CHECK(vac.identity.max_residual == 0.0);
    CHECK(vac.equivalence.max_residual <= 1e-11);

    // k = 1 for (exp(z1), i2 exp(-z1)): both sides evaluated on the grid
    ReductionCondition r1 = reduction_condition(schrodinger_pair(), 1, expr_lookup("z1"));
    CHECK(r1.holds);  // all dag1 derivatives of the pair vanish
    CHECK(r1.equivalence.max_residual <= 1e-11);
}

TEST_CASE("pi correspondence") {
    GeneratingPair p = unit_pair();

    // w = omega^2: transported derivative = pi(2 omega) at pi-points
    PiCorrespondence pc = pi_correspondence(pow(omega_expr(), 2), p);
    CHECK(pc.transported_validation.nondegenerate);
    CHECK(pc.transported.cls == PairClass::r2);
    CHECK(pc.report.max_residual <= 1e-12);

    // w = F: both derivatives vanish
    CHECK(pi_correspondence(p.F, p).report.max_residual <= 1e-12);

    // transported pairs stay admissible and transport commutes for the catalog
    for (const auto& entry : {r1_pair_catalog()[1], r1_pair_catalog()[4]}) {
        GeneratingPair q{entry.F, entry.G, PairClass::r1, kGrid};
        PiCorrespondence c = pi_correspondence(expr_lookup("exp-omega"), q);
        CAPTURE(entry.name);
        CHECK(c.transported_validation.nondegenerate);
        CHECK(c.report.max_residual <= 1e-10);
    }
}

TEST_CASE("e-pair construction") {
    GridDomain D = GridDomain::planar(-1.0, 1.0, 5);

    // Fe = 1, Ge = i1 on both components -> F = 1, G = i1
    EPair unit = build_e_pair(Expr::constant(1.0), Expr::constant(Bicomplex::i1()),
                              Expr::constant(1.0), Expr::constant(Bicomplex::i1()), D, D);
    CHECK(max_grid_diff(unit.pair.G, Expr::constant(Bicomplex::i1()), unit.pair.domain) == 0.0);
    CHECK(validate_pair(unit.pair).nondegenerate);

    // degenerate classical input
    CHECK_THROWS_AS(build_e_pair(Expr::constant(1.0), Expr::constant(1.0), Expr::constant(1.0),
                                 Expr::constant(Bicomplex::i1()), D, D),
                    DegeneratePairError);

    // Im{conj(Fe1)Ge1} != 0 and Im{conj(Fe2)Ge2} != 0 imply hyperbolic
    // invertibility of Vec{F^dag3 G}: the idempotent components of the Vec
    // are exactly the two planar Im quantities.
    for (const auto& entry : e_pair_catalog()) {
        EPair ep = build_e_pair(entry.Fe1, entry.Ge1, entry.Fe2, entry.Ge2, D, D);
        CAPTURE(entry.name);
        CHECK(validate_pair(ep.pair).nondegenerate);
        Expr vec = vector_part(conjugate(ep.pair.F, Conjugation::dag3) * ep.pair.G,
                               ModulusAxis::j);
        CompiledExpr cvec(vec);
        CompiledExpr cim1(conjugate(entry.Fe1, Conjugation::dag1) * entry.Ge1);
        CompiledExpr cim2(conjugate(entry.Fe2, Conjugation::dag1) * entry.Ge2);
        Complex zeta0{0.1, -0.2};
        for (std::size_t i = 0; i < D.size(); i += 3) {
            GridPoint zeta = D.point(i);
            Bicomplex omega = from_idempotent({zeta.z1(), zeta0});
            IdempotentPair v = to_idempotent(cvec(omega.z1(), omega.z2()));
            double im1 = cim1(zeta.z1(), Complex{}).w1;  // Im at zeta on D1
            double im2 = cim2(zeta0, Complex{}).w1;      // Im at the fixed zeta0 on D2
            CHECK(v.p1.real() == doctest::Approx(im1).epsilon(1e-10));
            CHECK(v.p2.real() == doctest::Approx(im2).epsilon(1e-10));
        }
    }
}

TEST_CASE("idempotent splitting round trip") {
    GridDomain D = GridDomain::planar(-1.0, 1.0, 5);
    const auto& entry = e_pair_catalog()[1];  // exp pair
    EPair ep = build_e_pair(entry.Fe1, entry.Ge1, entry.Fe2, entry.Ge2, D, D);

    // w = F: projections are Fe1, Fe2 and all derivatives vanish
    SplitCheck base = idempotent_split_check(ep.pair.F, ep);
    CHECK(base.report.pass);
    CHECK(max_grid_diff(base.we1, entry.Fe1, D) <= 1e-12);
    CHECK(max_grid_diff(base.we2, entry.Fe2, D) <= 1e-12);

    // construct-then-verify: planar pseudoanalytic components recombine to
    // a bicomplex pseudoanalytic function
    Expr we1 = Expr::constant(2.0) * entry.Fe1 - Expr::constant(3.0) * entry.Ge1;
    Expr we2 = Expr::constant(-1.0) * entry.Fe2 + Expr::constant(0.5) * entry.Ge2;
    Expr w = e_combine(we1, we2);
    CHECK(planar_vekua_residual(we1, ep.planar1).max_residual <= 1e-12);
    SplitCheck sc = idempotent_split_check(w, ep);
    CHECK(sc.bicomplex_vekua_residual <= 1e-11);
    CHECK(sc.independence_residual <= 1e-11);
    CHECK(sc.planar1.pass);
    CHECK(sc.planar2.pass);
    CHECK(sc.derivative_recombination.pass);
    CHECK(sc.report.pass);

    // a non-pseudoanalytic w fails the bicomplex residual
    Expr bad = e_combine(conjugate(entry.Fe1, Conjugation::dag1), entry.Fe2);
    SplitCheck scb = idempotent_split_check(bad, ep);
    CHECK(scb.bicomplex_vekua_residual > 1e-3);
}
