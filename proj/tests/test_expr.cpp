#include <doctest.h>

#include <limits>
#include <random>

#include "bvk/errors.hpp"
#include "bvk/expr.hpp"

using namespace bvk;

namespace {

const Expr Z1 = Expr::variable(Var::z1);
const Expr Z2 = Expr::variable(Var::z2);
const Expr CZ1 = Expr::variable(Var::cz1);
const Expr I2C = Expr::constant(Bicomplex::i2());

Expr omega() { return Z1 + I2C * Z2; }

double rel_err(const Bicomplex& a, const Bicomplex& b) {
    return euclid_norm(a - b) / std::max({1.0, euclid_norm(a), euclid_norm(b)});
}

// Central-difference oracle for a first derivative; step per the usual
// cbrt(eps) rule.  Perturbing z by a real step measures d_z + d_cz, which
// equals the Wirtinger partial on cz-free expressions (all callers).
Bicomplex fd_partial(const Expr& e, Var v, Complex z1, Complex z2) {
    REQUIRE((v == Var::z1 || v == Var::z2));
    double h = std::cbrt(std::numeric_limits<double>::epsilon());
    auto shift = [&](double d) {
        Complex a = z1, b = z2;
        (v == Var::z1 ? a : b) += d;
        return evaluate(e, a, b);
    };
    return (1.0 / (2.0 * h)) * (shift(h) - shift(-h));
}

}  // namespace

TEST_CASE("parser basics") {
    Expr e = parse_expr("exp(z1)");
    CHECK(e.node().kind == ExprKind::call);
    CHECK(e.node().fn == Fn::exp);
    CHECK(e.node().a->kind == ExprKind::variable);

    Expr omega_sq = parse_expr("z1^2 - z2^2 + (2*I2)*z1*z2");
    // numerically equal to (z1 + i2 z2)^2
    for (Complex z1 : {Complex{0.3, -0.2}, Complex{1.1, 0.4}}) {
        Complex z2{-0.5, 0.8};
        CHECK(rel_err(evaluate(omega_sq, z1, z2), evaluate(pow(omega(), 2), z1, z2)) < 1e-14);
    }

    CHECK_THROWS_AS(parse_expr("z1 +"), SyntaxError);
    try {
        parse_expr("z1 +");
    } catch (const SyntaxError& err) {
        CHECK(err.offset == 4);
    }
    CHECK_THROWS_AS(parse_expr("zz1"), UnknownIdentifierError);
    CHECK_THROWS_AS(parse_expr("exp z1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("(z1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("z1 ^ x"), SyntaxError);
}

TEST_CASE("print/parse round trip is structural") {
    const char* sources[] = {
        "z1",
        "z1^2 - z2^2 + (2*I2)*z1*z2",
        "exp(z1)*sin(z2) - cosh(cz1)/(1 + z1^2)",
        "(z1 + cz1)/2",
        "1.5*I1 - 2*J",
        "-z1 + z2^-3",
        "sinh(cos(z2))",
    };
    for (const char* src : sources) {
        Expr e = parse_expr(src);
        Expr again = parse_expr(to_string(e));
        CAPTURE(src);
        CAPTURE(to_string(e));
        CHECK(structurally_equal(e, again));
    }
    // trees built through the API round-trip too
    Expr built = pow(omega(), 3) / (Expr::constant(1.0) + exp(Z1 * Z2));
    CHECK(structurally_equal(built, parse_expr(to_string(built))));
}

TEST_CASE("evaluation substitutes conjugates") {
    Complex z1{0.4, -0.7}, z2{1.2, 0.3};
    CHECK(evaluate(CZ1, z1, z2) == Bicomplex::from_complex(std::conj(z1)));
    CHECK(evaluate(parse_expr("cz2"), z1, z2) == Bicomplex::from_complex(std::conj(z2)));
    // f = u + v i1 + r i2 + s j components recoverable
    Bicomplex w = evaluate(parse_expr("z1 + J*z2"), z1, z2);
    CHECK(w.w0 == doctest::Approx(z1.real()));
    CHECK(w.w1 == doctest::Approx(z1.imag()));
}

TEST_CASE("division guards the null cone") {
    Expr bad = Expr::constant(1.0) / (Z1 * Expr::constant(Bicomplex::e1()));
    CHECK_THROWS_AS(evaluate(bad, Complex{1, 0}, Complex{0, 0}), EvaluationError);
    CompiledExpr compiled(bad);
    CHECK_THROWS_AS(compiled(Complex{1, 0}, Complex{0, 0}), EvaluationError);
}

TEST_CASE("differentiation basics") {
    CHECK(is_constant_zero(differentiate(exp(Z1), Var::cz1)));
    CHECK(is_constant_zero(differentiate(CZ1, Var::z1)));

    Expr d = differentiate(pow(Z1, 2), Var::z1);
    for (Complex z1 : {Complex{0.2, 0.1}, Complex{-1.0, 0.5}}) {
        CHECK(rel_err(evaluate(d, z1, {}), Bicomplex::from_complex(2.0 * z1)) < 1e-14);
    }

    // chain rule: d/dz2 sin(z1 z2) = z1 cos(z1 z2)
    Expr s = differentiate(sin(Z1 * Z2), Var::z2);
    Complex z1{0.3, 0.4}, z2{-0.2, 0.9};
    Complex expect = z1 * std::cos(z1 * z2);
    CHECK(rel_err(evaluate(s, z1, z2), Bicomplex::from_complex(expect)) < 1e-13);
}

TEST_CASE("symbolic derivatives match a finite-difference oracle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    const char* sources[] = {"exp(z1)*sin(z2)", "z1^3 - 2*z2", "cosh(z1*z2)",
                             "(1 + z1^2)/(2 + z2^2)", "sin(z1)*cos(z1)"};
    for (const char* src : sources) {
        Expr e = parse_expr(src);
        for (Var v : {Var::z1, Var::z2}) {
            Expr de = differentiate(e, v);
            for (int i = 0; i < 5; ++i) {
                Complex z1{dist(rng), dist(rng)}, z2{dist(rng), dist(rng)};
                // the FD step perturbs z and cz together only when the
                // expression is cz-free, which holds for this list
                Bicomplex sym = evaluate(de, z1, z2);
                Bicomplex fd = fd_partial(e, v, z1, z2);
                CAPTURE(src);
                CHECK(euclid_norm(sym - fd) < 1e-8 * std::max(1.0, euclid_norm(sym)));
            }
        }
    }
}

TEST_CASE("expression conjugation matches value conjugation") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-0.9, 0.9);
    const char* sources[] = {"exp(z1)*sin(z2)", "z1 + (2*I2)*z2^2", "cz1*z1 - J*cz2",
                             "cosh(z2)/(2 + z1^2)"};
    for (const char* src : sources) {
        Expr e = parse_expr(src);
        for (auto k : {Conjugation::dag1, Conjugation::dag2, Conjugation::dag3}) {
            Expr ce = conjugate(e, k);
            for (int i = 0; i < 10; ++i) {
                Complex z1{dist(rng), dist(rng)}, z2{dist(rng), dist(rng)};
                CHECK(rel_err(evaluate(ce, z1, z2), conjugate(evaluate(e, z1, z2), k)) < 1e-12);
            }
        }
    }
}

TEST_CASE("pi transport matches the pointwise swap") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-0.9, 0.9);
    const char* sources[] = {"z1 + (1*I2)*z2", "exp(z1)*sin(z2)", "cz1*z1 - J*cz2",
                             "(2 + z1^2)/(3 + z2^2)", "sinh(z1) + I1*z2"};
    for (const char* src : sources) {
        Expr e = parse_expr(src);
        Expr te = pi_transport(e);
        for (int i = 0; i < 20; ++i) {
            Bicomplex w{dist(rng), dist(rng), dist(rng), dist(rng)};
            Bicomplex pw = pi_map(w);
            // (pi o e o pi)(w) computed directly from values
            Bicomplex direct = pi_map(evaluate(e, pw.z1(), pw.z2()));
            CHECK(rel_err(evaluate(te, w.z1(), w.z2()), direct) < 1e-12);
        }
    }
    // pi transport of the identity is the identity
    Expr id = omega();
    Expr tid = pi_transport(id);
    Bicomplex w{0.3, -0.4, 0.9, 0.2};
    CHECK(rel_err(evaluate(tid, w.z1(), w.z2()), w) < 1e-15);
}

TEST_CASE("scalar and vector projections") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Expr e = parse_expr("exp(z1) + J*z2 + I1*cz1");
    for (int i = 0; i < 20; ++i) {
        Complex z1{dist(rng), dist(rng)}, z2{dist(rng), dist(rng)};
        Bicomplex w = evaluate(e, z1, z2);
        // i2 split: Sc in C(i1)
        Bicomplex sc = evaluate(scalar_part(e, ModulusAxis::i2), z1, z2);
        Bicomplex vec = evaluate(vector_part(e, ModulusAxis::i2), z1, z2);
        CHECK(sc == Bicomplex{w.w0, w.w1, 0, 0});
        CHECK(vec == Bicomplex{w.w2, w.w3, 0, 0});
        // i1 split: Sc in C(i2)
        Bicomplex sc2 = evaluate(scalar_part(e, ModulusAxis::i1), z1, z2);
        Bicomplex vec2 = evaluate(vector_part(e, ModulusAxis::i1), z1, z2);
        CHECK(sc2 == Bicomplex{w.w0, 0, w.w2, 0});
        CHECK(vec2 == Bicomplex{w.w1, 0, w.w3, 0});
        // j split: Sc in D, vector along i1 (w = Sc + Vec*i1)
        Bicomplex sc3 = evaluate(scalar_part(e, ModulusAxis::j), z1, z2);
        Bicomplex vec3 = evaluate(vector_part(e, ModulusAxis::j), z1, z2);
        CHECK(sc3 == Bicomplex{w.w0, 0, 0, w.w3});
        CHECK(vec3 == Bicomplex{w.w1, 0, 0, -w.w2});
        CHECK(rel_err(sc3 + vec3 * Bicomplex::i1(), w) < 1e-14);
    }
}

TEST_CASE("compiled expressions agree with recursive evaluation") {
    Expr e = parse_expr("exp(z1)*sin(z2) + (z1^2 - cz2)/(3 + z2^2) - J*cosh(z1)");
    CompiledExpr c(e);
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        Complex z1{dist(rng), dist(rng)}, z2{dist(rng), dist(rng)};
        CHECK(evaluate(e, z1, z2) == c(z1, z2));
    }
}
