#pragma once

// Named test material shared by the suites, the CLI and the acceptance
// checks: a 20-function catalog mixing holomorphic and non-holomorphic
// expressions, ten admissible R1 generating pairs, particular solutions
// f0 for the Schrodinger pipeline, and classical planar pairs for the
// idempotent-splitting construction.  Every *lookup helper falls back to
// parsing its argument as a DSL expression.

#include <string>
#include <vector>

#include "bvk/pseudoanalytic.hpp"

namespace bvk {

Expr omega_expr();  // z1 + i2 z2

struct CatalogEntry {
    std::string name;
    Expr expr;
    bool holomorphic;  // expected verdict of the holomorphy checks
};
const std::vector<CatalogEntry>& function_catalog();

struct NamedExprPair {
    std::string name;
    Expr F;
    Expr G;
};
const std::vector<NamedExprPair>& r1_pair_catalog();

struct NamedF0 {
    std::string name;
    Expr f0;
};
const std::vector<NamedF0>& f0_catalog();

struct NamedPlanarPairs {
    std::string name;
    Expr Fe1, Ge1, Fe2, Ge2;
};
const std::vector<NamedPlanarPairs>& e_pair_catalog();

// Lookups accept a catalog name or a DSL expression.
Expr expr_lookup(const std::string& name_or_dsl);
Expr f0_lookup(const std::string& name_or_dsl);
// "name" or "F-dsl,G-dsl".
GeneratingPair r1_pair_lookup(const std::string& spec, const GridDomain& domain);

}  // namespace bvk
