#include "bvk/pseudoanalytic.hpp"

#include <cmath>
#include <limits>

#include "bvk/errors.hpp"

namespace bvk {

Conjugation class_conjugation(PairClass cls) {
    switch (cls) {
        case PairClass::r1: return Conjugation::dag2;
        case PairClass::r2: return Conjugation::dag1;
        case PairClass::r3: return Conjugation::dag3;
    }
    throw std::logic_error("bad pair class");
}

ModulusAxis class_axis(PairClass cls) {
    switch (cls) {
        case PairClass::r1: return ModulusAxis::i2;
        case PairClass::r2: return ModulusAxis::i1;
        case PairClass::r3: return ModulusAxis::j;
    }
    throw std::logic_error("bad pair class");
}

namespace {

const WirtingerOp kDagOps[3] = {WirtingerOp::dag1, WirtingerOp::dag2, WirtingerOp::dag3};
const Conjugation kDagConjs[3] = {Conjugation::dag1, Conjugation::dag2, Conjugation::dag3};

// Nondegeneracy at one value: modulus for the complex subalgebras, the
// smaller idempotent component for the hyperbolic one.
double nondegeneracy(const Bicomplex& vec, PairClass cls) {
    if (cls != PairClass::r3) return euclid_norm(vec);
    IdempotentPair p = to_idempotent(vec);
    return std::min(std::abs(p.p1), std::abs(p.p2));
}

std::string point_string(const GridPoint& pt) {
    return "(" + std::to_string(pt.x) + ", " + std::to_string(pt.y) + ", " + std::to_string(pt.p) +
           ", " + std::to_string(pt.q) + ")";
}

// Out-of-subalgebra magnitude of a coefficient value for the class.
double subalgebra_leak(const Bicomplex& v, PairClass cls) {
    switch (cls) {
        case PairClass::r1: return std::max(std::abs(v.w2), std::abs(v.w3));
        case PairClass::r2: return std::max(std::abs(v.w1), std::abs(v.w3));
        case PairClass::r3: return std::max(std::abs(v.w1), std::abs(v.w2));
    }
    return 0.0;
}

struct PhiPsi {
    Expr phi;
    Expr psi;
};

PhiPsi make_phi_psi(const Expr& w, const GeneratingPair& pair) {
    Conjugation c = class_conjugation(pair.cls);
    ModulusAxis axis = class_axis(pair.cls);
    Expr wc = conjugate(w, c);
    Expr den = vector_part(conjugate(pair.F, c) * pair.G, axis);
    Expr phi = vector_part(wc * pair.G, axis) / den;
    Expr psi = Expr::constant(0.0) - vector_part(wc * pair.F, axis) / den;
    return {phi, psi};
}

}  // namespace

PairValidation validate_pair(const GeneratingPair& pair) {
    pair.domain.validate(3);
    Conjugation c = class_conjugation(pair.cls);
    Expr vec = vector_part(conjugate(pair.F, c) * pair.G, class_axis(pair.cls));
    CompiledExpr cv(vec);
    PairValidation out;
    out.min_quantity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pair.domain.size(); ++i) {
        GridPoint pt = pair.domain.point(i);
        double q = nondegeneracy(cv(pt.z1(), pt.z2()), pair.cls);
        if (q < out.min_quantity) {
            out.min_quantity = q;
            out.worst = pt;
        }
        out.max_quantity = std::max(out.max_quantity, q);
    }
    double threshold = 1e-8 * std::max(1.0, out.max_quantity);
    out.nondegenerate = out.min_quantity > threshold;
    out.report.anchor = "generating-pair-nondegeneracy";
    out.report.grid = pair.domain.describe();
    out.report.tolerance = 1e-12;
    out.report.max_residual = std::max(0.0, (threshold - out.min_quantity) / threshold);
    out.report.mean_residual = out.report.max_residual;
    out.report.finalize();
    out.report.note = "min nondegeneracy " + std::to_string(out.min_quantity) + " at " +
                      point_string(out.worst);
    return out;
}

void require_valid(const GeneratingPair& pair) {
    PairValidation v = validate_pair(pair);
    if (!v.nondegenerate)
        throw DegeneratePairError("degenerate generating pair at " + point_string(v.worst));
}

CharCoefficients char_coeffs(const GeneratingPair& pair) {
    require_valid(pair);
    Conjugation c = class_conjugation(pair.cls);
    const Expr& F = pair.F;
    const Expr& G = pair.G;
    Expr Fc = conjugate(F, c), Gc = conjugate(G, c);
    CharCoefficients out;
    out.denominator = F * Gc - Fc * G;
    for (int k = 0; k < 3; ++k) {
        Expr Fk = wirtinger_apply(F, kDagOps[k]);
        Expr Gk = wirtinger_apply(G, kDagOps[k]);
        Expr Fkc = conjugate(F, kDagConjs[k]);
        Expr Gkc = conjugate(G, kDagConjs[k]);
        out.a[k] = (Expr::constant(0.0) - (Fkc * Gk - Fk * Gkc)) / out.denominator;
        out.b[k] = (F * Gk - Fk * G) / out.denominator;
    }
    Expr Fo = wirtinger_apply(F, WirtingerOp::omega);
    Expr Go = wirtinger_apply(G, WirtingerOp::omega);
    out.A = (Expr::constant(0.0) - (Fc * Go - Fo * Gc)) / out.denominator;
    out.B = (F * Go - Fo * G) / out.denominator;
    return out;
}

Decomposition decompose(const Expr& w, const GeneratingPair& pair, double tol) {
    require_valid(pair);
    PhiPsi c = make_phi_psi(w, pair);
    Decomposition out;
    out.phi = c.phi;
    out.psi = c.psi;
    out.phi_field = sample(c.phi, pair.domain);
    out.psi_field = sample(c.psi, pair.domain);

    CompiledExpr cw(w), cF(pair.F), cG(pair.G);
    ResidualAccumulator acc;
    double leak = 0.0;
    for (std::size_t i = 0; i < pair.domain.size(); ++i) {
        GridPoint pt = pair.domain.point(i);
        Bicomplex phi = out.phi_field.values[i];
        Bicomplex psi = out.psi_field.values[i];
        Bicomplex recon = phi * cF(pt.z1(), pt.z2()) + psi * cG(pt.z1(), pt.z2());
        acc.add(relative_diff(recon, cw(pt.z1(), pt.z2())));
        double scale = std::max({1.0, euclid_norm(phi), euclid_norm(psi)});
        leak = std::max(leak, std::max(subalgebra_leak(phi, pair.cls),
                                       subalgebra_leak(psi, pair.cls)) /
                                  scale);
    }
    out.reconstruction_residual = acc.max();
    out.subalgebra_residual = leak;
    out.report.anchor = "generating-pair-decomposition";
    out.report.grid = pair.domain.describe();
    out.report.tolerance = tol;
    acc.apply(out.report);
    out.report.note = "subalgebra leak " + std::to_string(leak);
    if (leak > 1e-12) out.report.pass = false;
    return out;
}

Expr fg_derivative(const Expr& w, const GeneratingPair& pair) {
    CharCoefficients cc = char_coeffs(pair);
    return wirtinger_apply(w, WirtingerOp::omega) - cc.A * w -
           cc.B * conjugate(w, class_conjugation(pair.cls));
}

Expr fg_derivative_via_phi_psi(const Expr& w, const GeneratingPair& pair) {
    require_valid(pair);
    PhiPsi c = make_phi_psi(w, pair);
    return wirtinger_apply(c.phi, WirtingerOp::omega) * pair.F +
           wirtinger_apply(c.psi, WirtingerOp::omega) * pair.G;
}

Expr vekua_residual_expr(const Expr& w, const GeneratingPair& pair, int k) {
    if (k < 1 || k > 3) throw ConfigError("vekua equation index must be 1, 2 or 3");
    CharCoefficients cc = char_coeffs(pair);
    return wirtinger_apply(w, kDagOps[k - 1]) -
           (cc.a[k - 1] * w + cc.b[k - 1] * conjugate(w, class_conjugation(pair.cls)));
}

ResidualReport vekua_residual(const Expr& w, const GeneratingPair& pair, int k, double tol) {
    Expr res = vekua_residual_expr(w, pair, k);
    ResidualReport rep;
    rep.anchor = "vekua-equation-k" + std::to_string(k);
    rep.grid = pair.domain.describe();
    rep.tolerance = tol;
    ResidualAccumulator acc;
    accumulate_diff(res, Expr::constant(0.0), pair.domain, acc);
    acc.apply(rep);
    return rep;
}

ReductionCondition reduction_condition(const GeneratingPair& pair, int k, const Expr& sample_w,
                                       double tol) {
    if (k < 1 || k > 3) throw ConfigError("vekua equation index must be 1, 2 or 3");
    Conjugation c = class_conjugation(pair.cls);
    Expr Fk = wirtinger_apply(pair.F, kDagOps[k - 1]);
    Expr Gk = wirtinger_apply(pair.G, kDagOps[k - 1]);
    Expr lhs = (conjugate(pair.G, kDagConjs[k - 1]) - conjugate(pair.G, c)) * Fk;
    Expr rhs = (conjugate(pair.F, kDagConjs[k - 1]) - conjugate(pair.F, c)) * Gk;

    ReductionCondition out;
    out.identity.anchor = "vekua-reduction-condition-k" + std::to_string(k);
    out.identity.grid = pair.domain.describe();
    out.identity.tolerance = tol;
    ResidualAccumulator acc;
    accumulate_diff(lhs, rhs, pair.domain, acc);
    acc.apply(out.identity);
    out.holds = out.identity.pass;

    // When the identity holds, the k-th Vekua residual of any w equals
    // phi_k F + psi_k G exactly.
    PhiPsi pp = make_phi_psi(sample_w, pair);
    Expr coeff_route = wirtinger_apply(pp.phi, kDagOps[k - 1]) * pair.F +
                       wirtinger_apply(pp.psi, kDagOps[k - 1]) * pair.G;
    out.equivalence.anchor = "vekua-reduction-equivalence-k" + std::to_string(k);
    out.equivalence.grid = pair.domain.describe();
    out.equivalence.tolerance = tol;
    ResidualAccumulator acc2;
    accumulate_diff(vekua_residual_expr(sample_w, pair, k), coeff_route, pair.domain, acc2);
    acc2.apply(out.equivalence);
    return out;
}

PiCorrespondence pi_correspondence(const Expr& w, const GeneratingPair& r1_pair, double tol) {
    if (r1_pair.cls != PairClass::r1)
        throw ConfigError("pi correspondence expects a class-R1 pair");
    require_valid(r1_pair);

    PiCorrespondence out;
    GridDomain swapped = r1_pair.domain;
    std::swap(swapped.y, swapped.p);  // the swap map exchanges y and p
    out.transported =
        GeneratingPair{pi_transport(r1_pair.F), pi_transport(r1_pair.G), PairClass::r2, swapped};
    out.transported_validation = validate_pair(out.transported);
    if (!out.transported_validation.nondegenerate)
        throw DegeneratePairError("transported pair fails R2 validation at " +
                                  point_string(out.transported_validation.worst));

    // R1 derivative of w, and the native R2 derivative of pi o w o pi.
    Expr dot_r1 = fg_derivative(w, r1_pair);
    Expr dot_r2 = fg_derivative(pi_transport(w), out.transported);
    CompiledExpr c1(dot_r1), c2(dot_r2);

    out.report.anchor = "pi-derivative-transport";
    out.report.grid = r1_pair.domain.describe();
    out.report.tolerance = tol;
    ResidualAccumulator acc;
    for (std::size_t i = 0; i < r1_pair.domain.size(); ++i) {
        GridPoint pt = r1_pair.domain.point(i);
        Bicomplex w0{pt.x, pt.y, pt.p, pt.q};
        Bicomplex pw0 = pi_map(w0);
        Bicomplex transported = c2(pw0.z1(), pw0.z2());
        Bicomplex swapped_deriv = pi_map(c1(pt.z1(), pt.z2()));
        acc.add(relative_diff(transported, swapped_deriv));
    }
    acc.apply(out.report);
    return out;
}

double planar_min_nondegeneracy(const PlanarPair& pair) {
    Expr prod = conjugate(pair.F, Conjugation::dag1) * pair.G;
    CompiledExpr c(prod);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pair.domain.size(); ++i) {
        GridPoint pt = pair.domain.point(i);
        m = std::min(m, std::abs(c(pt.z1(), pt.z2()).w1));  // Im of the complex value
    }
    return m;
}

namespace {

void require_planar(const Expr& e) {
    if (!is_constant_zero(differentiate(e, Var::z2)) ||
        !is_constant_zero(differentiate(e, Var::cz2)))
        throw ConfigError("planar expressions must involve only z1 and cz1");
}

struct PlanarCoeffs {
    Expr a, b, A, B;
};

PlanarCoeffs planar_coeffs(const PlanarPair& pair) {
    const Expr& F = pair.F;
    const Expr& G = pair.G;
    Expr Fc = conjugate(F, Conjugation::dag1), Gc = conjugate(G, Conjugation::dag1);
    Expr den = F * Gc - Fc * G;
    Expr Fzb = differentiate(F, Var::cz1), Gzb = differentiate(G, Var::cz1);
    Expr Fz = differentiate(F, Var::z1), Gz = differentiate(G, Var::z1);
    PlanarCoeffs out;
    out.a = (Expr::constant(0.0) - (Fc * Gzb - Fzb * Gc)) / den;
    out.b = (F * Gzb - Fzb * G) / den;
    out.A = (Expr::constant(0.0) - (Fc * Gz - Fz * Gc)) / den;
    out.B = (F * Gz - Fz * G) / den;
    return out;
}

}  // namespace

Expr planar_vekua_residual_expr(const Expr& w, const PlanarPair& pair) {
    require_planar(w);
    require_planar(pair.F);
    require_planar(pair.G);
    PlanarCoeffs c = planar_coeffs(pair);
    return differentiate(w, Var::cz1) - (c.a * w + c.b * conjugate(w, Conjugation::dag1));
}

ResidualReport planar_vekua_residual(const Expr& w, const PlanarPair& pair, double tol) {
    ResidualReport rep;
    rep.anchor = "classical-vekua-equation";
    rep.grid = pair.domain.describe();
    rep.tolerance = tol;
    ResidualAccumulator acc;
    accumulate_diff(planar_vekua_residual_expr(w, pair), Expr::constant(0.0), pair.domain, acc);
    acc.apply(rep);
    return rep;
}

Expr planar_fg_derivative(const Expr& w, const PlanarPair& pair) {
    require_planar(w);
    PlanarCoeffs c = planar_coeffs(pair);
    return differentiate(w, Var::z1) - c.A * w - c.B * conjugate(w, Conjugation::dag1);
}

Expr e_combine(const Expr& fe1, const Expr& fe2) {
    require_planar(fe1);
    require_planar(fe2);
    Expr z1 = Expr::variable(Var::z1), z2 = Expr::variable(Var::z2);
    Expr cz1 = Expr::variable(Var::cz1), cz2 = Expr::variable(Var::cz2);
    Expr i1 = Expr::constant(Bicomplex::i1());
    Expr zero = Expr::constant(0.0);
    Substitution to_p1{z1 - i1 * z2, zero, cz1 + i1 * cz2, zero};
    Substitution to_p2{z1 + i1 * z2, zero, cz1 - i1 * cz2, zero};
    return Expr::constant(Bicomplex::e1()) * substitute(fe1, to_p1) +
           Expr::constant(Bicomplex::e2()) * substitute(fe2, to_p2);
}

namespace {

// Largest axis-aligned box inside D1 x_e D2, with the planar sample counts.
GridDomain product_box(const GridDomain& D1, const GridDomain& D2) {
    auto center = [](const Axis& a) { return 0.5 * (a.lo + a.hi); };
    auto halfwidth = [](const Axis& a) { return 0.5 * (a.hi - a.lo); };
    double cx = 0.5 * (center(D1.x) + center(D2.x));
    double cq = 0.5 * (center(D1.x) - center(D2.x));
    double dx = 0.5 * std::min(halfwidth(D1.x), halfwidth(D2.x));
    double cy = 0.5 * (center(D1.y) + center(D2.y));
    double cp = 0.5 * (center(D2.y) - center(D1.y));
    double dy = 0.5 * std::min(halfwidth(D1.y), halfwidth(D2.y));
    GridDomain box;
    box.x = {cx - dx, cx + dx, std::min(D1.x.count, D2.x.count)};
    box.y = {cy - dy, cy + dy, std::min(D1.y.count, D2.y.count)};
    box.p = {cp - dy, cp + dy, std::min(D1.y.count, D2.y.count)};
    box.q = {cq - dx, cq + dx, std::min(D1.x.count, D2.x.count)};
    return box;
}

}  // namespace

EPair build_e_pair(const Expr& Fe1, const Expr& Ge1, const Expr& Fe2, const Expr& Ge2,
                   const GridDomain& D1, const GridDomain& D2) {
    D1.validate(3);
    D2.validate(3);
    EPair out;
    out.planar1 = {Fe1, Ge1, D1};
    out.planar2 = {Fe2, Ge2, D2};
    for (const PlanarPair* pp : {&out.planar1, &out.planar2}) {
        require_planar(pp->F);
        require_planar(pp->G);
        double m = planar_min_nondegeneracy(*pp);
        if (m <= 1e-8)
            throw DegeneratePairError("classical planar pair is degenerate (min |Im{conj(F)G}| = " +
                                      std::to_string(m) + ")");
    }
    out.pair = GeneratingPair{e_combine(Fe1, Fe2), e_combine(Ge1, Ge2), PairClass::r3,
                              product_box(D1, D2)};
    return out;
}

SplitCheck idempotent_split_check(const Expr& w, const EPair& epair, double tol) {
    SplitCheck out;
    out.bicomplex_vekua_residual = vekua_residual(w, epair.pair, 3, tol).max_residual;

    // Planar projections with argument transport, sliced at the centers of
    // the opposite planar domains.
    Complex c1{0.5 * (epair.planar1.domain.x.lo + epair.planar1.domain.x.hi),
               0.5 * (epair.planar1.domain.y.lo + epair.planar1.domain.y.hi)};
    Complex c2{0.5 * (epair.planar2.domain.x.lo + epair.planar2.domain.x.hi),
               0.5 * (epair.planar2.domain.y.lo + epair.planar2.domain.y.hi)};
    Expr z1 = Expr::variable(Var::z1), cz1 = Expr::variable(Var::cz1);
    Expr half = Expr::constant(0.5);
    Expr half_i1 = Expr::constant(0.5 * Bicomplex::i1());
    auto embed = [&](Complex other, bool first) {
        Expr oc = Expr::constant(Bicomplex::from_complex(other));
        Expr occ = Expr::constant(Bicomplex::from_complex(std::conj(other)));
        Substitution s;
        s.z1 = half * (z1 + oc);
        s.cz1 = half * (cz1 + occ);
        if (first) {
            // omega = zeta e1 + other e2: z2 = i1 (zeta - other) / 2
            s.z2 = half_i1 * (z1 - oc);
            s.cz2 = Expr::constant(0.0) - half_i1 * (cz1 - occ);
        } else {
            // omega = other e1 + zeta e2: z2 = i1 (other - zeta) / 2
            s.z2 = half_i1 * (oc - z1);
            s.cz2 = Expr::constant(0.0) - half_i1 * (occ - cz1);
        }
        return s;
    };
    Expr w_on_1 = substitute(w, embed(c2, true));
    Expr w_on_2 = substitute(w, embed(c1, false));
    Expr e1c = Expr::constant(Bicomplex::e1()), e2c = Expr::constant(Bicomplex::e2());
    out.we1 = e1c * w_on_1 + e2c * conjugate(w_on_1, Conjugation::dag2);  // P1 as a scalar
    out.we2 = e2c * w_on_2 + e1c * conjugate(w_on_2, Conjugation::dag2);  // P2 as a scalar

    // Independence of the opposite idempotent coordinate, plus the
    // derivative recombination, over the full product of planar grids.
    CompiledExpr cw(w);
    CompiledExpr cwe1(out.we1), cwe2(out.we2);
    CompiledExpr cdot(fg_derivative(w, epair.pair));
    CompiledExpr cdot1(planar_fg_derivative(out.we1, epair.planar1));
    CompiledExpr cdot2(planar_fg_derivative(out.we2, epair.planar2));
    double indep = 0.0;
    ResidualAccumulator recomb;
    const GridDomain& D1 = epair.planar1.domain;
    const GridDomain& D2 = epair.planar2.domain;
    for (std::size_t i = 0; i < D1.size(); ++i) {
        GridPoint a = D1.point(i);
        Complex zeta1 = a.z1();
        Bicomplex we1_val = cwe1(zeta1, Complex{});
        Bicomplex dot1_val = cdot1(zeta1, Complex{});
        for (std::size_t k = 0; k < D2.size(); ++k) {
            GridPoint b = D2.point(k);
            Complex zeta2 = b.z1();
            Bicomplex omega = from_idempotent({zeta1, zeta2});
            Bicomplex value = cw(omega.z1(), omega.z2());
            IdempotentPair parts = to_idempotent(value);
            Bicomplex we2_val = cwe2(zeta2, Complex{});
            double scale = std::max(1.0, euclid_norm(value));
            indep = std::max(indep, std::abs(parts.p1 - we1_val.z1()) / scale);
            indep = std::max(indep, std::abs(parts.p2 - we2_val.z1()) / scale);

            Bicomplex lhs = cdot(omega.z1(), omega.z2());
            Bicomplex rhs = from_idempotent({dot1_val.z1(), cdot2(zeta2, Complex{}).z1()});
            recomb.add(relative_diff(lhs, rhs));
        }
    }
    out.independence_residual = indep;
    out.planar1 = planar_vekua_residual(out.we1, epair.planar1, tol);
    out.planar2 = planar_vekua_residual(out.we2, epair.planar2, tol);
    out.derivative_recombination.anchor = "idempotent-derivative-recombination";
    out.derivative_recombination.grid = D1.describe() + " x " + D2.describe();
    out.derivative_recombination.tolerance = tol;
    recomb.apply(out.derivative_recombination);

    out.report.anchor = "idempotent-splitting";
    out.report.grid = out.derivative_recombination.grid;
    out.report.tolerance = tol;
    out.report.max_residual =
        std::max({out.bicomplex_vekua_residual, out.independence_residual,
                  out.planar1.max_residual, out.planar2.max_residual,
                  out.derivative_recombination.max_residual});
    out.report.mean_residual = out.report.max_residual;
    out.report.finalize();
    return out;
}

}  // namespace bvk
