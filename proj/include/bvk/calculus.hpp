#pragma once

// The four bicomplex Wirtinger operators, the complex Laplacian and
// gradient, and the grid verification operations built on them:
//   d_omega      = (d_z1  - i2 d_z2)  / 2
//   d_omega_dag2 = (d_z1  + i2 d_z2)  / 2
//   d_omega_dag1 = (d_cz1 - i2 d_cz2) / 2
//   d_omega_dag3 = (d_cz1 + i2 d_cz2) / 2
// together with Delta_C = d2_z1 + d2_z2 and grad_C = d_z1 + i2 d_z2.

#include <array>

#include "bvk/expr.hpp"
#include "bvk/grid.hpp"
#include "bvk/report.hpp"

namespace bvk {

enum class WirtingerOp { omega, dag1, dag2, dag3 };

Expr wirtinger_apply(const Expr& e, WirtingerOp op);
Expr laplacian_c(const Expr& e);
Expr gradient_c(const Expr& e);

// Real-coordinate operators as symbolic combinations of the Wirtinger
// partials (x, y from z1 = x + y*i1; p, q from z2 = p + q*i1).
Expr d_x(const Expr& e);
Expr d_y(const Expr& e);
Expr d_p(const Expr& e);
Expr d_q(const Expr& e);

// The bicomplex derivative of a holomorphic function: d_z1 e.
Expr t_derivative(const Expr& e);

// Max/mean relative deviation of two expressions over a grid.
void accumulate_diff(const Expr& lhs, const Expr& rhs, const GridDomain& grid,
                     ResidualAccumulator& acc);

// |Delta_C e - 4 d_omega d_omega_dag2 e| over the grid; both sides exact
// symbolic derivatives, so the residual is rounding noise.
ResidualReport laplacian_factorization_residual(const Expr& e, const GridDomain& grid,
                                                double tol = 1e-12);

// 4 Delta_C e (symbolic) against the real-partials expansion
//   (d2x - d2y + d2p - d2q) e - 2 i1 (dxdy + dpdq) e
// estimated by central finite differences on the lattice, step = grid
// spacing per axis.  The expression must not vary along frozen axes.
struct RealExpansionResult {
    ResidualReport report;
    std::array<double, 4> step{};  // FD step per axis (0 when frozen)
};
RealExpansionResult real_expansion_residual(const Expr& e, const GridDomain& grid,
                                            double tol = 1e-3);

// Cauchy-Riemann route: f = f1 + f2*i2 is holomorphic iff f1, f2 are free
// of cz1, cz2 and d_z1 f1 = d_z2 f2, d_z1 f2 = -d_z2 f1.  Also reports
// min |det J_f| and the derivative d_z1 f1 + (d_z1 f2) i2 = d_z1 f.
struct HolomorphyCheck {
    double zbar1_residual = 0.0;
    double zbar2_residual = 0.0;
    double cr1_residual = 0.0;
    double cr2_residual = 0.0;
    double min_abs_det_jacobian = 0.0;
    bool holomorphic = false;
    Expr derivative;
    ResidualReport report;
};
HolomorphyCheck check_t_holomorphic(const Expr& e, const GridDomain& grid, double tol = 1e-10);

// Dagger route: the derivative exists iff all three conjugate-operator
// derivatives vanish; the verdict is cross-checked against the CR route.
struct DaggerCriterion {
    std::array<double, 3> residuals{};  // dag1, dag2, dag3
    bool derivative_exists = false;
    bool agrees_with_cr = false;
    ResidualReport report;
};
DaggerCriterion dagger_derivative_criterion(const Expr& e, const GridDomain& grid,
                                            double tol = 1e-10);

// On the C(i2) plane 4 Delta_C reduces to d2x + d2p, on the hyperbolic
// plane to d2x - d2q; the residual compares both sides symbolically on
// the restricted grid.
ResidualReport plane_reduction_residual(const Expr& e, const GridDomain& grid, Plane plane,
                                        double tol = 1e-12);

}  // namespace bvk
