#include "bvk/calculus.hpp"

#include <cmath>
#include <limits>

#include "bvk/errors.hpp"

namespace bvk {

namespace {

const Expr kHalf = Expr::constant(0.5);
const Expr kHalfI2 = Expr::constant(0.5 * Bicomplex::i2());
const Expr kI1 = Expr::constant(Bicomplex::i1());

}  // namespace

Expr wirtinger_apply(const Expr& e, WirtingerOp op) {
    switch (op) {
        case WirtingerOp::omega:
            return kHalf * differentiate(e, Var::z1) - kHalfI2 * differentiate(e, Var::z2);
        case WirtingerOp::dag2:
            return kHalf * differentiate(e, Var::z1) + kHalfI2 * differentiate(e, Var::z2);
        case WirtingerOp::dag1:
            return kHalf * differentiate(e, Var::cz1) - kHalfI2 * differentiate(e, Var::cz2);
        case WirtingerOp::dag3:
            return kHalf * differentiate(e, Var::cz1) + kHalfI2 * differentiate(e, Var::cz2);
    }
    throw std::logic_error("bad wirtinger op");
}

Expr laplacian_c(const Expr& e) {
    return differentiate(differentiate(e, Var::z1), Var::z1) +
           differentiate(differentiate(e, Var::z2), Var::z2);
}

Expr gradient_c(const Expr& e) {
    return differentiate(e, Var::z1) + Expr::constant(Bicomplex::i2()) * differentiate(e, Var::z2);
}

Expr d_x(const Expr& e) { return differentiate(e, Var::z1) + differentiate(e, Var::cz1); }
Expr d_y(const Expr& e) {
    return kI1 * (differentiate(e, Var::z1) - differentiate(e, Var::cz1));
}
Expr d_p(const Expr& e) { return differentiate(e, Var::z2) + differentiate(e, Var::cz2); }
Expr d_q(const Expr& e) {
    return kI1 * (differentiate(e, Var::z2) - differentiate(e, Var::cz2));
}

Expr t_derivative(const Expr& e) { return differentiate(e, Var::z1); }

void accumulate_diff(const Expr& lhs, const Expr& rhs, const GridDomain& grid,
                     ResidualAccumulator& acc) {
    CompiledExpr cl(lhs), cr(rhs);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GridPoint pt = grid.point(i);
        acc.add(relative_diff(cl(pt.z1(), pt.z2()), cr(pt.z1(), pt.z2())));
    }
}

ResidualReport laplacian_factorization_residual(const Expr& e, const GridDomain& grid,
                                                double tol) {
    grid.validate(3);
    Expr lhs = laplacian_c(e);
    Expr rhs = Expr::constant(4.0) * wirtinger_apply(wirtinger_apply(e, WirtingerOp::omega),
                                                     WirtingerOp::dag2);
    ResidualReport rep;
    rep.anchor = "laplacian-wirtinger-factorization";
    rep.grid = grid.describe();
    rep.tolerance = tol;
    ResidualAccumulator acc;
    accumulate_diff(lhs, rhs, grid, acc);
    acc.apply(rep);
    return rep;
}

namespace {

// Max modulus of an expression over the grid (used for dependence checks).
double max_abs(const Expr& e, const GridDomain& grid) {
    CompiledExpr c(e);
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GridPoint pt = grid.point(i);
        m = std::max(m, euclid_norm(c(pt.z1(), pt.z2())));
    }
    return m;
}

}  // namespace

RealExpansionResult real_expansion_residual(const Expr& e, const GridDomain& grid, double tol) {
    grid.validate(5);
    // FD cannot see variation along frozen axes; require there is none.
    const Expr deriv[4] = {d_x(e), d_y(e), d_p(e), d_q(e)};
    for (int axis = 0; axis < 4; ++axis) {
        if (grid.axis(axis).frozen() && max_abs(deriv[axis], grid) > 1e-12)
            throw ConfigError("expression varies along a frozen grid axis");
    }

    SampledField field = sample(e, grid);
    CompiledExpr lhs(Expr::constant(4.0) * laplacian_c(e));

    RealExpansionResult result;
    for (int axis = 0; axis < 4; ++axis)
        result.step[axis] = grid.axis(axis).frozen() ? 0.0 : grid.axis(axis).spacing();

    const Bicomplex minus_two_i1 = -2.0 * Bicomplex::i1();
    ResidualAccumulator acc;
    auto active = [&](int axis) { return !grid.axis(axis).frozen(); };
    auto second_diff = [&](const std::array<int, 4>& ix, int axis) -> Bicomplex {
        std::array<int, 4> lo = ix, hi = ix;
        --lo[axis];
        ++hi[axis];
        double h = result.step[axis];
        std::size_t c = grid.flat_index(ix[0], ix[1], ix[2], ix[3]);
        std::size_t l = grid.flat_index(lo[0], lo[1], lo[2], lo[3]);
        std::size_t r = grid.flat_index(hi[0], hi[1], hi[2], hi[3]);
        return (1.0 / (h * h)) * (field.values[r] - 2.0 * field.values[c] + field.values[l]);
    };
    auto mixed_diff = [&](const std::array<int, 4>& ix, int a, int b) -> Bicomplex {
        std::array<int, 4> pp = ix, pm = ix, mp = ix, mm = ix;
        ++pp[a], ++pp[b];
        ++pm[a], --pm[b];
        --mp[a], ++mp[b];
        --mm[a], --mm[b];
        double h = 4.0 * result.step[a] * result.step[b];
        auto at = [&](const std::array<int, 4>& i) {
            return field.values[grid.flat_index(i[0], i[1], i[2], i[3])];
        };
        return (1.0 / h) * (at(pp) - at(pm) - at(mp) + at(mm));
    };

    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        std::array<int, 4> ix = grid.indices(flat);
        bool interior = true;
        for (int axis = 0; axis < 4 && interior; ++axis)
            if (active(axis) && (ix[axis] == 0 || ix[axis] == grid.axis(axis).count - 1))
                interior = false;
        if (!interior) continue;

        Bicomplex dxx = active(0) ? second_diff(ix, 0) : Bicomplex{};
        Bicomplex dyy = active(1) ? second_diff(ix, 1) : Bicomplex{};
        Bicomplex dpp = active(2) ? second_diff(ix, 2) : Bicomplex{};
        Bicomplex dqq = active(3) ? second_diff(ix, 3) : Bicomplex{};
        Bicomplex dxy = (active(0) && active(1)) ? mixed_diff(ix, 0, 1) : Bicomplex{};
        Bicomplex dpq = (active(2) && active(3)) ? mixed_diff(ix, 2, 3) : Bicomplex{};

        Bicomplex rhs = (dxx - dyy + dpp - dqq) + minus_two_i1 * (dxy + dpq);
        GridPoint pt = grid.point(flat);
        acc.add(relative_diff(lhs(pt.z1(), pt.z2()), rhs));
    }

    result.report.anchor = "real-partials-expansion";
    result.report.grid = grid.describe();
    result.report.tolerance = tol;
    acc.apply(result.report);
    return result;
}

HolomorphyCheck check_t_holomorphic(const Expr& e, const GridDomain& grid, double tol) {
    grid.validate(3);
    HolomorphyCheck out;
    out.derivative = t_derivative(e);

    Expr dz1 = differentiate(e, Var::z1);
    Expr dz2 = differentiate(e, Var::z2);
    Expr dcz1 = differentiate(e, Var::cz1);
    Expr dcz2 = differentiate(e, Var::cz2);

    // Component splits f = f1 + f2 i2 of the first derivatives.
    Expr f1_z1 = scalar_part(dz1, ModulusAxis::i2), f2_z1 = vector_part(dz1, ModulusAxis::i2);
    Expr f1_z2 = scalar_part(dz2, ModulusAxis::i2), f2_z2 = vector_part(dz2, ModulusAxis::i2);

    CompiledExpr c_dcz1(dcz1), c_dcz2(dcz2);
    CompiledExpr c11(f1_z1), c21(f2_z1), c12(f1_z2), c22(f2_z2);

    double zb1 = 0, zb2 = 0, cr1 = 0, cr2 = 0;
    double min_det = std::numeric_limits<double>::infinity();
    ResidualAccumulator acc;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GridPoint pt = grid.point(i);
        Complex z1 = pt.z1(), z2 = pt.z2();
        zb1 = std::max(zb1, euclid_norm(c_dcz1(z1, z2)));
        zb2 = std::max(zb2, euclid_norm(c_dcz2(z1, z2)));
        Bicomplex a11 = c11(z1, z2), a21 = c21(z1, z2), a12 = c12(z1, z2), a22 = c22(z1, z2);
        cr1 = std::max(cr1, relative_diff(a11, a22));
        cr2 = std::max(cr2, relative_diff(a21, -a12));
        Complex det = a11.z1() * a22.z1() - a12.z1() * a21.z1();
        min_det = std::min(min_det, std::abs(det));
        acc.add(std::max({euclid_norm(c_dcz1(z1, z2)), euclid_norm(c_dcz2(z1, z2)),
                          relative_diff(a11, a22), relative_diff(a21, -a12)}));
    }
    out.zbar1_residual = zb1;
    out.zbar2_residual = zb2;
    out.cr1_residual = cr1;
    out.cr2_residual = cr2;
    out.min_abs_det_jacobian = min_det;
    out.holomorphic = std::max({zb1, zb2, cr1, cr2}) <= tol;
    out.report.anchor = "t-holomorphy-cauchy-riemann";
    out.report.grid = grid.describe();
    out.report.tolerance = tol;
    acc.apply(out.report);
    return out;
}

DaggerCriterion dagger_derivative_criterion(const Expr& e, const GridDomain& grid, double tol) {
    grid.validate(3);
    DaggerCriterion out;
    const WirtingerOp ops[3] = {WirtingerOp::dag1, WirtingerOp::dag2, WirtingerOp::dag3};
    ResidualAccumulator acc;
    for (int k = 0; k < 3; ++k) {
        CompiledExpr c(wirtinger_apply(e, ops[k]));
        double m = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            GridPoint pt = grid.point(i);
            double r = euclid_norm(c(pt.z1(), pt.z2()));
            m = std::max(m, r);
            acc.add(r);
        }
        out.residuals[k] = m;
    }
    out.derivative_exists = std::max({out.residuals[0], out.residuals[1], out.residuals[2]}) <= tol;
    out.agrees_with_cr = out.derivative_exists == check_t_holomorphic(e, grid, tol).holomorphic;
    out.report.anchor = "dagger-derivative-criterion";
    out.report.grid = grid.describe();
    out.report.tolerance = tol;
    acc.apply(out.report);
    if (!out.agrees_with_cr) {
        out.report.pass = false;
        out.report.note = "verdict disagrees with the Cauchy-Riemann route";
    }
    return out;
}

ResidualReport plane_reduction_residual(const Expr& e, const GridDomain& grid, Plane plane,
                                        double tol) {
    GridDomain g = grid;
    Axis fz{0.0, 0.0, 1};
    if (!g.y.frozen()) g.y = fz;
    Axis& other = plane == Plane::c_i2 ? g.q : g.p;
    if (!other.frozen()) other = fz;
    g.validate(3);
    // The reduction only holds for functions of the plane coordinates.
    Expr off1 = d_y(e);
    Expr off2 = plane == Plane::c_i2 ? d_q(e) : d_p(e);
    if (max_abs(off1, g) > 1e-12 || max_abs(off2, g) > 1e-12)
        throw ConfigError("expression varies off the restriction plane");
    Expr lhs = Expr::constant(4.0) * laplacian_c(e);
    Expr rhs = plane == Plane::c_i2 ? d_x(d_x(e)) + d_p(d_p(e)) : d_x(d_x(e)) - d_q(d_q(e));
    ResidualReport rep;
    rep.anchor = plane == Plane::c_i2 ? "laplacian-plane-reduction" : "wave-plane-reduction";
    rep.grid = g.describe();
    rep.tolerance = tol;
    ResidualAccumulator acc;
    accumulate_diff(lhs, rhs, g, acc);
    acc.apply(rep);
    return rep;
}

}  // namespace bvk
