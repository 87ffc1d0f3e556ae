#pragma once

// The complexified Schrodinger pipeline.  Everything starts from a
// nonvanishing C(i1)-valued particular solution f0 of
// (Delta_C - nu) f = 0 with nu = Delta_C f0 / f0:
//   - the operator factorization
//       (Delta_C - nu) phi = 4 (d_dag2 + (d_omega f0/f0) C)(d_omega - (d_omega f0/f0) C) phi
//     where C conjugates the full bicomplex intermediate by dag2,
//   - the main Vekua equation (d_dag2 - (d_dag2 f0/f0) C) W = 0 with the
//     generating pair (f0, i2/f0),
//   - the splitting of its solutions: Sc(W) solves the original equation
//     and Vec(W) solves the one with the transformed potential
//       eta = -nu + 2 |grad_C f0|^2_{i1} / f0^2,
//   - the restrictions to the two planes, where the factorization becomes
//     the classical Schrodinger and Klein-Gordon ones.
// All eta/b_omega denominators are read as f0^2 (noted in reports).

#include <vector>

#include "bvk/pseudoanalytic.hpp"

namespace bvk {

struct SchrodingerInstance {
    Expr f0;
    Expr nu;
    GridDomain domain;
    double min_abs_f0 = 0.0;
    double max_abs_f0 = 0.0;
};

// Derives nu = Delta_C f0 / f0.  Throws NotComplexValuedError if f0 has
// i2/j components on the grid, VanishingF0Error when min |f0| falls below
// 1e-6 * max |f0|.
SchrodingerInstance nu_from_f0(const Expr& f0, const GridDomain& grid);

// Residual of the factorization theorem applied to a C(i1)-valued phi.
ResidualReport factorization_residual(const SchrodingerInstance& inst, const Expr& phi,
                                      double tol = 1e-11);

// 1-D analogue on a single x-axis grid: (-d2/dx2 + nu) phi against the
// composition (d/dx + f0'/f0)(f0'/f0 - d/dx) phi, nu = f0''/f0.
ResidualReport one_dim_factorization_check(const Expr& f0, const Expr& phi,
                                           const GridDomain& grid, double tol = 1e-12);

struct VekuaMainEquation {
    SchrodingerInstance inst;
    Expr b;  // d_dag2 f0 / f0
    GeneratingPair pair;
    Expr eta;
    double b_omega_leak = 0.0;      // i2/j components of b_omega on the grid
    ResidualReport b_omega_identity;  // b_omega = nu/4 - |d_dag2 f0|^2_{i1}/f0^2
};
VekuaMainEquation main_vekua(const SchrodingerInstance& inst);

// eta = -nu + 2 |grad_C f0|^2_{i1} / f0^2, cross-checked on the grid
// against the component form -nu + 2((d_z1 f0)^2 + (d_z2 f0)^2)/f0^2.
struct DarbouxPotential {
    Expr eta;
    ResidualReport component_identity;
};
DarbouxPotential darboux_potential(const SchrodingerInstance& inst);

// General coefficient form: for any b with C(i1)-valued b_omega and any
// solution W = u + i2 v of W_dag2 = b W^{dag2},
//   dd2 do u = (|b|^2_{i1} + b_omega) u  and  dd2 do v = (|b|^2_{i1} - b_omega) v.
struct LemmaSplit {
    double b_omega_leak = 0.0;
    ResidualReport vekua;
    ResidualReport scalar_eq;
    ResidualReport vector_eq;
};
LemmaSplit lemma_split_residuals(const Expr& b, const Expr& W, const GridDomain& grid,
                                 double tol = 1e-11);

// The three residuals of the splitting theorem for a candidate solution W:
// the main Vekua equation, (Delta_C - nu) Sc(W) and (Delta_C - eta) Vec(W),
// plus the general-coefficient forms above.  A failing (i) marks the
// result advisory instead of raising.
struct SplitCheckResult {
    bool is_vekua_solution = false;
    ResidualReport vekua;
    ResidualReport scalar_eq;
    ResidualReport vector_eq;
    LemmaSplit lemma;
    ResidualReport report;  // binding max
};
SplitCheckResult split_check(const VekuaMainEquation& eq, const Expr& W, double tol = 1e-11);

// Restriction to a plane: re-runs the factorization and the splitting on
// the restricted grid and, when f0 and the test functions live on the
// plane, certifies the classical Schrodinger (C(i2) plane) or
// Klein-Gordon (hyperbolic plane) factorization form.
struct Specialization {
    GridDomain restricted;
    bool plane_adapted = false;
    std::vector<ResidualReport> reports;
    ResidualReport summary;
};
Specialization specialize(const SchrodingerInstance& inst, Plane plane,
                          const std::vector<Expr>& test_phis, double tol = 1e-11);

}  // namespace bvk
