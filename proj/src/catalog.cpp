#include "bvk/catalog.hpp"

#include "bvk/errors.hpp"

namespace bvk {

namespace {

Expr Z1() { return Expr::variable(Var::z1); }
Expr Z2() { return Expr::variable(Var::z2); }
Expr CZ1() { return Expr::variable(Var::cz1); }
Expr CZ2() { return Expr::variable(Var::cz2); }
Expr I2C() { return Expr::constant(Bicomplex::i2()); }

}  // namespace

Expr omega_expr() { return Z1() + I2C() * Z2(); }

const std::vector<CatalogEntry>& function_catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        Expr w = omega_expr();
        std::vector<CatalogEntry> out;
        out.push_back({"omega", w, true});
        out.push_back({"omega-sq", pow(w, 2), true});
        out.push_back({"omega-cube", pow(w, 3), true});
        out.push_back({"exp-omega", exp(w), true});
        out.push_back({"sin-omega", sin(w), true});
        out.push_back({"cos-omega", cos(w), true});
        out.push_back({"sinh-omega", sinh(w), true});
        out.push_back({"cosh-omega", cosh(w), true});
        out.push_back({"j-omega", Expr::constant(Bicomplex::j()) * w, true});
        out.push_back({"z1", Z1(), false});
        out.push_back({"z2", Z2(), false});
        out.push_back({"exp-z1", exp(Z1()), false});
        out.push_back({"dag2-omega", Z1() - I2C() * Z2(), false});
        out.push_back({"dag1-omega", CZ1() + I2C() * CZ2(), false});
        out.push_back({"mod-z1", Z1() * CZ1(), false});
        out.push_back({"exp-z1-cz1", exp(Z1()) * CZ1(), false});
        out.push_back({"exp-2x", exp(Z1() + CZ1()), false});
        out.push_back({"sin-mod-z1", sin(Z1() * CZ1()), false});
        out.push_back({"cosh-2x", cosh(Z1() + CZ1()), false});
        out.push_back({"exp-cz1-sin-z1", exp(CZ1()) * sin(Z1()), false});
        return out;
    }();
    return entries;
}

const std::vector<NamedExprPair>& r1_pair_catalog() {
    static const std::vector<NamedExprPair> pairs = [] {
        Expr one = Expr::constant(1.0);
        Expr i2 = I2C();
        Expr half_omega = Expr::constant(0.5) * omega_expr();
        std::vector<NamedExprPair> out;
        out.push_back({"unit", one, i2});
        out.push_back({"exp-z1", exp(Z1()), i2 * exp(Expr::constant(-1.0) * Z1())});
        out.push_back({"cosh-z1", cosh(Z1()), i2 / cosh(Z1())});
        out.push_back({"exp-half-omega", exp(half_omega),
                       i2 * exp(Expr::constant(-1.0) * half_omega)});
        out.push_back({"one-i2exp", one, i2 * exp(Z1())});
        out.push_back({"exp-z2", exp(Z2()), i2 * exp(Expr::constant(-1.0) * Z2())});
        out.push_back({"cos-z2", cos(Z2()), i2});
        out.push_back({"exp-split", exp(Z1() + Z2()), i2 * exp(Z1() - Z2())});
        out.push_back({"sin-offset", Expr::constant(2.0) + sin(Z1()), i2});
        out.push_back({"exp-cosh", exp(Z1()), i2 * cosh(Z1())});
        return out;
    }();
    return pairs;
}

const std::vector<NamedF0>& f0_catalog() {
    static const std::vector<NamedF0> entries = [] {
        std::vector<NamedF0> out;
        out.push_back({"one", Expr::constant(1.0)});
        out.push_back({"exp-z1", exp(Z1())});
        out.push_back({"cosh-z1", cosh(Z1())});
        out.push_back({"exp-z1-cos-z2", exp(Z1()) * cos(Z2())});
        out.push_back({"exp-x", exp(Expr::constant(0.5) * (Z1() + CZ1()))});
        return out;
    }();
    return entries;
}

const std::vector<NamedPlanarPairs>& e_pair_catalog() {
    static const std::vector<NamedPlanarPairs> entries = [] {
        Expr one = Expr::constant(1.0);
        Expr i1 = Expr::constant(Bicomplex::i1());
        Expr half_z = Expr::constant(0.5) * Z1();
        Expr exp_half = exp(half_z);
        Expr exp_neg_half = exp(Expr::constant(-0.5) * Z1());
        Expr cosh_half = cosh(half_z);
        std::vector<NamedPlanarPairs> out;
        out.push_back({"unit", one, i1, one, i1});
        out.push_back({"exp", exp_half, i1 * exp_neg_half, exp_half, i1 * exp_neg_half});
        out.push_back({"mixed-exp", one, i1 * exp(Z1()), exp_half, i1 * exp_neg_half});
        out.push_back({"cosh", cosh_half, i1 / cosh_half, cosh_half, i1 / cosh_half});
        out.push_back({"affine", Expr::constant(2.0), i1 * (Expr::constant(2.0) + Z1()),
                       Expr::constant(2.0), i1 * (Expr::constant(2.0) + Z1())});
        return out;
    }();
    return entries;
}

Expr expr_lookup(const std::string& name_or_dsl) {
    for (const auto& entry : function_catalog())
        if (entry.name == name_or_dsl) return entry.expr;
    return parse_expr(name_or_dsl);
}

Expr f0_lookup(const std::string& name_or_dsl) {
    for (const auto& entry : f0_catalog())
        if (entry.name == name_or_dsl) return entry.f0;
    return parse_expr(name_or_dsl);
}

GeneratingPair r1_pair_lookup(const std::string& spec, const GridDomain& domain) {
    for (const auto& entry : r1_pair_catalog())
        if (entry.name == spec) return {entry.F, entry.G, PairClass::r1, domain};
    auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw ConfigError("pair spec must be a catalog name or 'F-dsl,G-dsl': " + spec);
    return {parse_expr(spec.substr(0, comma)), parse_expr(spec.substr(comma + 1)), PairClass::r1,
            domain};
}

}  // namespace bvk
