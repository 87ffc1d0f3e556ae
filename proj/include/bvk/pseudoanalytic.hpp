#pragma once

// Generating pairs and the three representation classes of pseudoanalytic
// function theory:
//   R1: coefficients in C(i1), split along i2, class conjugation dag2
//   R2: coefficients in C(i2), split along i1, class conjugation dag1
//   R3: coefficients in D,     split along i1, class conjugation dag3
// A pair (F, G) is admissible when the class Vec of F^{dagc} G is
// nondegenerate on the domain; every function then decomposes uniquely as
// phi F + psi G with subalgebra-valued coefficients, and pseudoanalytic
// functions are the solutions of the three Vekua equations
//   w_{omega^{dagk}} = a^{(k)} w + b^{(k)} w^{dagc},  k = 1, 2, 3.

#include <optional>

#include "bvk/calculus.hpp"
#include "bvk/expr.hpp"
#include "bvk/grid.hpp"
#include "bvk/report.hpp"

namespace bvk {

enum class PairClass { r1, r2, r3 };

Conjugation class_conjugation(PairClass cls);  // dag2 / dag1 / dag3
ModulusAxis class_axis(PairClass cls);         // i2 / i1 / j

struct GeneratingPair {
    Expr F;
    Expr G;
    PairClass cls = PairClass::r1;
    GridDomain domain;
};

// Nondegeneracy of the class Vec of F^{dagc} G over the domain.  For R1/R2
// the quantity is its modulus; for R3 the Vec lives in the hyperbolic
// plane, which has zero divisors, so the quantity is the smaller
// idempotent component (an invertibility margin, strictly stronger than
// being nonzero).
struct PairValidation {
    double min_quantity = 0.0;
    double max_quantity = 0.0;
    GridPoint worst;
    bool nondegenerate = false;
    ResidualReport report;
};
PairValidation validate_pair(const GeneratingPair& pair);

// Throws DegeneratePairError naming the offending grid point.
void require_valid(const GeneratingPair& pair);

// The characteristic coefficients of (F, G); all denominators share the
// expression F G^{dagc} - F^{dagc} G = -2 Vec{F^{dagc} G} * unit.
struct CharCoefficients {
    Expr a[3];  // a^{(1)}, a^{(2)}, a^{(3)}
    Expr b[3];
    Expr A;
    Expr B;
    Expr denominator;
};
CharCoefficients char_coeffs(const GeneratingPair& pair);

// Unique subalgebra-valued coefficients with w = phi F + psi G; the
// explicit Vec-quotient formulas, sampled on the grid.
struct Decomposition {
    Expr phi;
    Expr psi;
    SampledField phi_field;
    SampledField psi_field;
    double reconstruction_residual = 0.0;
    double subalgebra_residual = 0.0;
    ResidualReport report;
};
Decomposition decompose(const Expr& w, const GeneratingPair& pair, double tol = 1e-10);

// (F,G)-derivative, A/B route: w_omega - A w - B w^{dagc}.
Expr fg_derivative(const Expr& w, const GeneratingPair& pair);
// Same derivative through the coefficient route phi_omega F + psi_omega G;
// the two agree exactly on Vekua solutions.
Expr fg_derivative_via_phi_psi(const Expr& w, const GeneratingPair& pair);

// Residual expression and grid report of the k-th Vekua equation.
Expr vekua_residual_expr(const Expr& w, const GeneratingPair& pair, int k);
ResidualReport vekua_residual(const Expr& w, const GeneratingPair& pair, int k,
                              double tol = 1e-11);

// Identity [G^{dagk} - G^{dagc}] F_{omega^{dagk}} = [F^{dagk} - F^{dagc}] G_{omega^{dagk}}.
// When it holds, the k-th Vekua residual of any w equals
// phi_{omega^{dagk}} F + psi_{omega^{dagk}} G pointwise; the equivalence is
// cross-checked on a sample function.
struct ReductionCondition {
    ResidualReport identity;
    ResidualReport equivalence;
    bool holds = false;
};
ReductionCondition reduction_condition(const GeneratingPair& pair, int k, const Expr& sample_w,
                                       double tol = 1e-11);

// R1 -> R2 transport along the swap map: w has an (F,G)-derivative at w0
// iff pi o w o pi has the transported-pair derivative at pi(w0), and the
// derivatives correspond through pi.  The transported derivative is
// computed natively in the R2 theory, so the comparison is a real check.
struct PiCorrespondence {
    GeneratingPair transported;
    PairValidation transported_validation;
    ResidualReport report;
};
PiCorrespondence pi_correspondence(const Expr& w, const GeneratingPair& r1_pair,
                                   double tol = 1e-10);

// Classical planar pseudoanalytic machinery in one complex variable
// (expressions over z1, cz1 only), used by the idempotent-splitting
// theorems.  conj is complex conjugation, d_zbar = d/d(cz1).
struct PlanarPair {
    Expr F;
    Expr G;
    GridDomain domain;  // planar: x, y active
};
double planar_min_nondegeneracy(const PlanarPair& pair);
Expr planar_vekua_residual_expr(const Expr& w, const PlanarPair& pair);
ResidualReport planar_vekua_residual(const Expr& w, const PlanarPair& pair, double tol = 1e-11);
Expr planar_fg_derivative(const Expr& w, const PlanarPair& pair);

// Idempotent recombination f(w) = fe1(P1(w)) e1 + fe2(P2(w)) e2 of two
// planar expressions, as a bicomplex expression.
Expr e_combine(const Expr& fe1, const Expr& fe2);

// An R3 pair assembled from two classical planar pairs through e_combine;
// its box domain is the largest axis-aligned grid inside D1 x_e D2.
struct EPair {
    GeneratingPair pair;
    PlanarPair planar1;
    PlanarPair planar2;
};
EPair build_e_pair(const Expr& Fe1, const Expr& Ge1, const Expr& Fe2, const Expr& Ge2,
                   const GridDomain& D1, const GridDomain& D2);

// Splits an (F,G)_j-pseudoanalytic w into its planar components, checks
// each against its classical planar pair, and checks the derivative
// recombination identity.
struct SplitCheck {
    Expr we1;
    Expr we2;
    double bicomplex_vekua_residual = 0.0;
    double independence_residual = 0.0;  // P_k(w) depends only on zeta_k
    ResidualReport planar1;
    ResidualReport planar2;
    ResidualReport derivative_recombination;
    ResidualReport report;  // binding max of everything above
};
SplitCheck idempotent_split_check(const Expr& w, const EPair& epair, double tol = 1e-11);

}  // namespace bvk
