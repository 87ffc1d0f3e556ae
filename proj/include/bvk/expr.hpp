#pragma once

// Symbolic expressions over the four Wirtinger variables z1, z2, cz1, cz2
// (cz1, cz2 stand for the complex conjugates of z1, z2 and are treated as
// independent symbols by differentiation).  Constants are bicomplex, so a
// tree evaluates to a bicomplex value at a point (z1, z2) in C(i1)^2.
// Trees are immutable and shared; there is no simplification engine beyond
// what keeps derivative trees from drowning in zeros.

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bvk/bicomplex.hpp"

namespace bvk {

enum class Var { z1, z2, cz1, cz2 };

enum class Fn { exp, sin, cos, sinh, cosh };

enum class ExprKind { constant, variable, add, sub, mul, div, pow, call };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    Bicomplex value{};  // constant payload
    Var var{};          // variable payload
    Fn fn{};            // call payload
    int exponent = 0;   // pow payload
    ExprNodePtr a;
    ExprNodePtr b;
};

class Expr {
  public:
    Expr() = default;  // empty handle; only assignable

    static Expr constant(const Bicomplex& c);
    static Expr constant(double re) { return constant(Bicomplex(re)); }
    static Expr variable(Var v);

    const ExprNode& node() const { return *node_; }
    const ExprNode* raw() const { return node_.get(); }
    const ExprNodePtr& ptr() const { return node_; }
    bool valid() const { return node_ != nullptr; }

    static Expr wrap(ExprNodePtr n) {
        Expr e;
        e.node_ = std::move(n);
        return e;
    }

  private:
    ExprNodePtr node_;
};

// Structure-building operators.  They fold the obvious zeros and ones so
// that derivative trees stay readable; they never rewrite anything else.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);

bool is_constant_zero(const Expr& e);

// Structural equality (used by parser round-trip tests; semantic equality
// of expressions is always checked numerically on grids instead).
bool structurally_equal(const Expr& a, const Expr& b);

// Exact partial derivative treating z1, z2, cz1, cz2 as independent.
Expr differentiate(const Expr& e, Var v);

// Simultaneous substitution of expressions for all four variables.
struct Substitution {
    Expr z1, z2, cz1, cz2;
};
Expr substitute(const Expr& e, const Substitution& s);

// Value-level conjugation lifted to expressions: the returned tree
// evaluates to conjugate(e(w), k) everywhere.  Valid because every node
// commutes with the three ring involutions.
Expr conjugate(const Expr& e, Conjugation k);

// The swap transport e -> pi o e o pi, again as an expression tree.
Expr pi_transport(const Expr& e);

// Scalar/vector projections onto the three representations, as trees:
//   axis i2: w = Sc + Vec*i2 with Sc, Vec in C(i1)   (uses dag2)
//   axis i1: w = Sc + Vec*i1 with Sc, Vec in C(i2)   (uses dag1)
//   axis j : w = Sc + Vec*i1 with Sc, Vec in D       (uses dag3)
Expr scalar_part(const Expr& e, ModulusAxis axis);
Expr vector_part(const Expr& e, ModulusAxis axis);

// One-shot recursive evaluation at a point.
Bicomplex evaluate(const Expr& e, Complex z1, Complex z2);

// Flattened form for grid loops: the DAG is compiled once into a
// topologically ordered instruction list, so shared subtrees are
// evaluated once per point.
class CompiledExpr {
  public:
    explicit CompiledExpr(const Expr& e);
    Bicomplex operator()(Complex z1, Complex z2) const;

  private:
    struct Instr {
        ExprKind kind;
        Bicomplex value{};
        Var var{};
        Fn fn{};
        int exponent = 0;
        int a = -1;
        int b = -1;
    };
    std::vector<Instr> code_;
    mutable std::vector<Bicomplex> slots_;
};

std::string to_string(const Expr& e);

// Recursive-descent parser for the expression DSL:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ['^' integer]
//   base   := number | 'I1' | 'I2' | 'J' | 'z1' | 'z2' | 'cz1' | 'cz2'
//           | func '(' expr ')' | '(' expr ')'
//   func   := exp | sin | cos | sinh | cosh
// Constant subtrees built from +,-,* are folded so printing round-trips.
Expr parse_expr(std::string_view src);

}  // namespace bvk
