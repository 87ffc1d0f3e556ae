#include "bvk/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>

#include "bvk/errors.hpp"

namespace bvk {

namespace {

ExprNodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_const(const Expr& e, const Bicomplex& c) {
    return e.node().kind == ExprKind::constant && e.node().value == c;
}

Bicomplex apply_fn(Fn fn, const Bicomplex& w) {
    switch (fn) {
        case Fn::exp: return exp(w);
        case Fn::sin: return sin(w);
        case Fn::cos: return cos(w);
        case Fn::sinh: return sinh(w);
        case Fn::cosh: return cosh(w);
    }
    throw std::logic_error("bad fn");
}

const char* fn_name(Fn fn) {
    switch (fn) {
        case Fn::exp: return "exp";
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::sinh: return "sinh";
        case Fn::cosh: return "cosh";
    }
    return "?";
}

const char* var_name(Var v) {
    switch (v) {
        case Var::z1: return "z1";
        case Var::z2: return "z2";
        case Var::cz1: return "cz1";
        case Var::cz2: return "cz2";
    }
    return "?";
}

}  // namespace

Expr Expr::constant(const Bicomplex& c) {
    return wrap(make_node({.kind = ExprKind::constant, .value = c}));
}

Expr Expr::variable(Var v) { return wrap(make_node({.kind = ExprKind::variable, .var = v})); }

bool is_constant_zero(const Expr& e) { return is_const(e, Bicomplex{}); }

Expr operator+(const Expr& a, const Expr& b) {
    if (is_constant_zero(a)) return b;
    if (is_constant_zero(b)) return a;
    if (a.node().kind == ExprKind::constant && b.node().kind == ExprKind::constant)
        return Expr::constant(a.node().value + b.node().value);
    return Expr::wrap(make_node({.kind = ExprKind::add, .a = a.ptr(),
                                 .b = b.ptr()}));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (is_constant_zero(b)) return a;
    if (a.node().kind == ExprKind::constant && b.node().kind == ExprKind::constant)
        return Expr::constant(a.node().value - b.node().value);
    return Expr::wrap(make_node({.kind = ExprKind::sub, .a = a.ptr(),
                                 .b = b.ptr()}));
}

Expr operator-(const Expr& a) { return Expr::constant(-1.0) * a; }

Expr operator*(const Expr& a, const Expr& b) {
    if (is_constant_zero(a) || is_constant_zero(b)) return Expr::constant(0.0);
    if (is_const(a, Bicomplex::one())) return b;
    if (is_const(b, Bicomplex::one())) return a;
    if (a.node().kind == ExprKind::constant && b.node().kind == ExprKind::constant)
        return Expr::constant(a.node().value * b.node().value);
    return Expr::wrap(make_node({.kind = ExprKind::mul, .a = a.ptr(),
                                 .b = b.ptr()}));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (is_constant_zero(a)) return Expr::constant(0.0);
    if (is_const(b, Bicomplex::one())) return a;
    if (a.node().kind == ExprKind::constant && b.node().kind == ExprKind::constant &&
        !is_null_cone(b.node().value))
        return Expr::constant(a.node().value * inverse(b.node().value));
    return Expr::wrap(make_node({.kind = ExprKind::div, .a = a.ptr(),
                                 .b = b.ptr()}));
}

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr::constant(1.0);
    if (exponent == 1) return base;
    if (base.node().kind == ExprKind::constant &&
        (exponent > 0 || !is_null_cone(base.node().value)))
        return Expr::constant(pow(base.node().value, exponent));
    return Expr::wrap(make_node(
        {.kind = ExprKind::pow, .exponent = exponent, .a = base.ptr()}));
}

namespace {

Expr make_call(Fn fn, const Expr& arg) {
    if (arg.node().kind == ExprKind::constant)
        return Expr::constant(apply_fn(fn, arg.node().value));
    return Expr::wrap(
        make_node({.kind = ExprKind::call, .fn = fn, .a = arg.ptr()}));
}

}  // namespace

Expr exp(const Expr& e) { return make_call(Fn::exp, e); }
Expr sin(const Expr& e) { return make_call(Fn::sin, e); }
Expr cos(const Expr& e) { return make_call(Fn::cos, e); }
Expr sinh(const Expr& e) { return make_call(Fn::sinh, e); }
Expr cosh(const Expr& e) { return make_call(Fn::cosh, e); }

bool structurally_equal(const Expr& a, const Expr& b) {
    const ExprNode& na = a.node();
    const ExprNode& nb = b.node();
    if (na.kind != nb.kind) return false;
    switch (na.kind) {
        case ExprKind::constant: return na.value == nb.value;
        case ExprKind::variable: return na.var == nb.var;
        case ExprKind::pow:
            return na.exponent == nb.exponent &&
                   structurally_equal(Expr::wrap(na.a), Expr::wrap(nb.a));
        case ExprKind::call:
            return na.fn == nb.fn && structurally_equal(Expr::wrap(na.a), Expr::wrap(nb.a));
        default:
            return structurally_equal(Expr::wrap(na.a), Expr::wrap(nb.a)) &&
                   structurally_equal(Expr::wrap(na.b), Expr::wrap(nb.b));
    }
}

namespace {

using Memo = std::map<const ExprNode*, Expr>;

Expr derive(const Expr& e, Var v, Memo& memo) {
    const ExprNode& n = e.node();
    auto it = memo.find(&n);
    if (it != memo.end()) return it->second;
    Expr out;
    switch (n.kind) {
        case ExprKind::constant: out = Expr::constant(0.0); break;
        case ExprKind::variable: out = Expr::constant(n.var == v ? 1.0 : 0.0); break;
        case ExprKind::add:
            out = derive(Expr::wrap(n.a), v, memo) + derive(Expr::wrap(n.b), v, memo);
            break;
        case ExprKind::sub:
            out = derive(Expr::wrap(n.a), v, memo) - derive(Expr::wrap(n.b), v, memo);
            break;
        case ExprKind::mul: {
            Expr ea = Expr::wrap(n.a), eb = Expr::wrap(n.b);
            out = derive(ea, v, memo) * eb + ea * derive(eb, v, memo);
            break;
        }
        case ExprKind::div: {
            Expr ea = Expr::wrap(n.a), eb = Expr::wrap(n.b);
            out = (derive(ea, v, memo) * eb - ea * derive(eb, v, memo)) / (eb * eb);
            break;
        }
        case ExprKind::pow: {
            Expr base = Expr::wrap(n.a);
            out = Expr::constant(static_cast<double>(n.exponent)) * pow(base, n.exponent - 1) *
                  derive(base, v, memo);
            break;
        }
        case ExprKind::call: {
            Expr arg = Expr::wrap(n.a);
            Expr outer;
            switch (n.fn) {
                case Fn::exp: outer = exp(arg); break;
                case Fn::sin: outer = cos(arg); break;
                case Fn::cos: outer = -sin(arg); break;
                case Fn::sinh: outer = cosh(arg); break;
                case Fn::cosh: outer = sinh(arg); break;
            }
            out = outer * derive(arg, v, memo);
            break;
        }
    }
    memo.emplace(&n, out);
    return out;
}

}  // namespace

Expr differentiate(const Expr& e, Var v) {
    Memo memo;
    return derive(e, v, memo);
}

namespace {

Expr transform(const Expr& e, Memo& memo, const Expr leaves[4],
               Bicomplex (*const_map)(const Bicomplex&)) {
    const ExprNode& n = e.node();
    auto it = memo.find(&n);
    if (it != memo.end()) return it->second;
    Expr out;
    switch (n.kind) {
        case ExprKind::constant: out = Expr::constant(const_map(n.value)); break;
        case ExprKind::variable: out = leaves[static_cast<int>(n.var)]; break;
        case ExprKind::add:
            out = transform(Expr::wrap(n.a), memo, leaves, const_map) +
                  transform(Expr::wrap(n.b), memo, leaves, const_map);
            break;
        case ExprKind::sub:
            out = transform(Expr::wrap(n.a), memo, leaves, const_map) -
                  transform(Expr::wrap(n.b), memo, leaves, const_map);
            break;
        case ExprKind::mul:
            out = transform(Expr::wrap(n.a), memo, leaves, const_map) *
                  transform(Expr::wrap(n.b), memo, leaves, const_map);
            break;
        case ExprKind::div:
            out = transform(Expr::wrap(n.a), memo, leaves, const_map) /
                  transform(Expr::wrap(n.b), memo, leaves, const_map);
            break;
        case ExprKind::pow:
            out = pow(transform(Expr::wrap(n.a), memo, leaves, const_map), n.exponent);
            break;
        case ExprKind::call:
            out = make_call(n.fn, transform(Expr::wrap(n.a), memo, leaves, const_map));
            break;
    }
    memo.emplace(&n, out);
    return out;
}

Bicomplex identity_const(const Bicomplex& c) { return c; }
Bicomplex conj1_const(const Bicomplex& c) { return conjugate(c, Conjugation::dag1); }
Bicomplex conj2_const(const Bicomplex& c) { return conjugate(c, Conjugation::dag2); }
Bicomplex conj3_const(const Bicomplex& c) { return conjugate(c, Conjugation::dag3); }
Bicomplex pi_const(const Bicomplex& c) { return pi_map(c); }

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
    Memo memo;
    const Expr leaves[4] = {s.z1, s.z2, s.cz1, s.cz2};
    return transform(e, memo, leaves, identity_const);
}

Expr conjugate(const Expr& e, Conjugation k) {
    if (k == Conjugation::dag0) return e;
    Expr z1 = Expr::variable(Var::z1), z2 = Expr::variable(Var::z2);
    Expr cz1 = Expr::variable(Var::cz1), cz2 = Expr::variable(Var::cz2);
    Memo memo;
    if (k == Conjugation::dag2) {
        // dag2 fixes C(i1), so the variable slots are untouched.
        const Expr leaves[4] = {z1, z2, cz1, cz2};
        return transform(e, memo, leaves, conj2_const);
    }
    // dag1 and dag3 conjugate C(i1) values: z <-> cz.
    const Expr leaves[4] = {cz1, cz2, z1, z2};
    return transform(e, memo, leaves, k == Conjugation::dag1 ? conj1_const : conj3_const);
}

Expr pi_transport(const Expr& e) {
    // pi o e o pi in the standard coordinates: the variable slots pick up
    // the C(i2) coordinates of the argument, constants get swapped.
    Expr z1 = Expr::variable(Var::z1), z2 = Expr::variable(Var::z2);
    Expr cz1 = Expr::variable(Var::cz1), cz2 = Expr::variable(Var::cz2);
    Expr half = Expr::constant(0.5);
    Expr half_i2 = Expr::constant(0.5 * Bicomplex::i2());
    Expr half_i1 = Expr::constant(0.5 * Bicomplex::i1());
    Expr half_j = Expr::constant(0.5 * Bicomplex::j());
    Expr zeta1 = half * (z1 + cz1) + half_i2 * (z2 + cz2);
    Expr zeta2 = Expr::constant(0.0) - half_i1 * (z1 - cz1) - half_j * (z2 - cz2);
    Expr zeta1c = half * (z1 + cz1) - half_i2 * (z2 + cz2);
    Expr zeta2c = Expr::constant(0.0) - half_i1 * (z1 - cz1) + half_j * (z2 - cz2);
    const Expr leaves[4] = {zeta1, zeta2, zeta1c, zeta2c};
    Memo memo;
    return transform(e, memo, leaves, pi_const);
}

Expr scalar_part(const Expr& e, ModulusAxis axis) {
    // Here the axis names the split unit: i2 -> dag2, i1 -> dag1, j -> dag3.
    Conjugation k = axis == ModulusAxis::i2   ? Conjugation::dag2
                    : axis == ModulusAxis::i1 ? Conjugation::dag1
                                              : Conjugation::dag3;
    return Expr::constant(0.5) * (e + conjugate(e, k));
}

Expr vector_part(const Expr& e, ModulusAxis axis) {
    switch (axis) {
        case ModulusAxis::i2:
            return Expr::constant(-0.5 * Bicomplex::i2()) * (e - conjugate(e, Conjugation::dag2));
        case ModulusAxis::i1:
            return Expr::constant(-0.5 * Bicomplex::i1()) * (e - conjugate(e, Conjugation::dag1));
        case ModulusAxis::j:
            return Expr::constant(-0.5 * Bicomplex::i1()) * (e - conjugate(e, Conjugation::dag3));
    }
    throw std::logic_error("bad axis");
}

namespace {

Bicomplex eval_node(const ExprNode& n, Complex z1, Complex z2) {
    switch (n.kind) {
        case ExprKind::constant: return n.value;
        case ExprKind::variable:
            switch (n.var) {
                case Var::z1: return Bicomplex::from_complex(z1);
                case Var::z2: return Bicomplex::from_complex(z2);
                case Var::cz1: return Bicomplex::from_complex(std::conj(z1));
                case Var::cz2: return Bicomplex::from_complex(std::conj(z2));
            }
            break;
        case ExprKind::add: return eval_node(*n.a, z1, z2) + eval_node(*n.b, z1, z2);
        case ExprKind::sub: return eval_node(*n.a, z1, z2) - eval_node(*n.b, z1, z2);
        case ExprKind::mul: return eval_node(*n.a, z1, z2) * eval_node(*n.b, z1, z2);
        case ExprKind::div: {
            Bicomplex den = eval_node(*n.b, z1, z2);
            if (is_null_cone(den)) throw EvaluationError("division by a null-cone value");
            return eval_node(*n.a, z1, z2) * inverse(den);
        }
        case ExprKind::pow: {
            Bicomplex base = eval_node(*n.a, z1, z2);
            if (n.exponent < 0 && is_null_cone(base))
                throw EvaluationError("negative power of a null-cone value");
            return pow(base, n.exponent);
        }
        case ExprKind::call: return apply_fn(n.fn, eval_node(*n.a, z1, z2));
    }
    throw std::logic_error("bad expr node");
}

}  // namespace

Bicomplex evaluate(const Expr& e, Complex z1, Complex z2) { return eval_node(e.node(), z1, z2); }

CompiledExpr::CompiledExpr(const Expr& e) {
    std::map<const ExprNode*, int> index;
    // Iterative post-order flattening; shared nodes compile once.
    struct Frame {
        const ExprNode* node;
        bool expanded;
    };
    std::vector<Frame> stack{{e.raw(), false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (index.count(node)) continue;
        if (!expanded) {
            stack.push_back({node, true});
            if (node->a && !index.count(node->a.get())) stack.push_back({node->a.get(), false});
            if (node->b && !index.count(node->b.get())) stack.push_back({node->b.get(), false});
            continue;
        }
        Instr in;
        in.kind = node->kind;
        in.value = node->value;
        in.var = node->var;
        in.fn = node->fn;
        in.exponent = node->exponent;
        if (node->a) in.a = index.at(node->a.get());
        if (node->b) in.b = index.at(node->b.get());
        index.emplace(node, static_cast<int>(code_.size()));
        code_.push_back(in);
    }
    slots_.resize(code_.size());
}

Bicomplex CompiledExpr::operator()(Complex z1, Complex z2) const {
    for (std::size_t i = 0; i < code_.size(); ++i) {
        const Instr& in = code_[i];
        switch (in.kind) {
            case ExprKind::constant: slots_[i] = in.value; break;
            case ExprKind::variable:
                switch (in.var) {
                    case Var::z1: slots_[i] = Bicomplex::from_complex(z1); break;
                    case Var::z2: slots_[i] = Bicomplex::from_complex(z2); break;
                    case Var::cz1: slots_[i] = Bicomplex::from_complex(std::conj(z1)); break;
                    case Var::cz2: slots_[i] = Bicomplex::from_complex(std::conj(z2)); break;
                }
                break;
            case ExprKind::add: slots_[i] = slots_[in.a] + slots_[in.b]; break;
            case ExprKind::sub: slots_[i] = slots_[in.a] - slots_[in.b]; break;
            case ExprKind::mul: slots_[i] = slots_[in.a] * slots_[in.b]; break;
            case ExprKind::div:
                if (is_null_cone(slots_[in.b]))
                    throw EvaluationError("division by a null-cone value");
                slots_[i] = slots_[in.a] * inverse(slots_[in.b]);
                break;
            case ExprKind::pow:
                if (in.exponent < 0 && is_null_cone(slots_[in.a]))
                    throw EvaluationError("negative power of a null-cone value");
                slots_[i] = pow(slots_[in.a], in.exponent);
                break;
            case ExprKind::call: slots_[i] = apply_fn(in.fn, slots_[in.a]); break;
        }
    }
    return slots_.back();
}

namespace {

int node_prec(const ExprNode& n) {
    switch (n.kind) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::pow: return 3;
        default: return 4;
    }
}

void print_node(const ExprNode& n, int min_prec, std::string& out) {
    int prec = node_prec(n);
    bool parens = prec < min_prec;
    if (n.kind == ExprKind::constant) {
        const Bicomplex& c = n.value;
        bool bare = c.w1 == 0.0 && c.w2 == 0.0 && c.w3 == 0.0 && c.w0 >= 0.0;
        if (bare) {
            out += to_string(c);
            return;
        }
        out += "(" + to_string(c) + ")";
        return;
    }
    if (parens) out += "(";
    switch (n.kind) {
        case ExprKind::variable: out += var_name(n.var); break;
        case ExprKind::add:
            print_node(*n.a, 1, out);
            out += " + ";
            print_node(*n.b, 2, out);
            break;
        case ExprKind::sub:
            print_node(*n.a, 1, out);
            out += " - ";
            print_node(*n.b, 2, out);
            break;
        case ExprKind::mul:
            print_node(*n.a, 2, out);
            out += "*";
            print_node(*n.b, 3, out);
            break;
        case ExprKind::div:
            print_node(*n.a, 2, out);
            out += "/";
            print_node(*n.b, 3, out);
            break;
        case ExprKind::pow:
            print_node(*n.a, 4, out);
            out += "^" + std::to_string(n.exponent);
            break;
        case ExprKind::call:
            out += fn_name(n.fn);
            out += "(";
            print_node(*n.a, 1, out);
            out += ")";
            break;
        default: break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e.node(), 1, out);
    return out;
}

namespace {

// Parser: plain nodes except that +,-,* of two constants fold, so the
// printed form of any tree re-parses to a structurally equal tree.
class Parser {
  public:
    explicit Parser(std::string_view src) : owned_(src), src_(owned_) {}

    Expr parse() {
        Expr e = parse_expr_rule();
        skip_ws();
        if (pos_ != src_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string owned_;
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    static Expr fold_binary(ExprKind kind, const Expr& a, const Expr& b) {
        if (a.node().kind == ExprKind::constant && b.node().kind == ExprKind::constant) {
            const Bicomplex &x = a.node().value, &y = b.node().value;
            if (kind == ExprKind::add) return Expr::constant(x + y);
            if (kind == ExprKind::sub) return Expr::constant(x - y);
            if (kind == ExprKind::mul) return Expr::constant(x * y);
        }
        return Expr::wrap(make_node(
            {.kind = kind, .a = a.ptr(), .b = b.ptr()}));
    }

    Expr parse_expr_rule() {
        Expr lhs;
        if (eat('-')) {
            lhs = fold_binary(ExprKind::mul, Expr::constant(-1.0), parse_term());
        } else {
            lhs = parse_term();
        }
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Expr rhs = parse_term();
                lhs = fold_binary(c == '+' ? ExprKind::add : ExprKind::sub, lhs, rhs);
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                Expr rhs = parse_factor();
                if (c == '*') {
                    lhs = fold_binary(ExprKind::mul, lhs, rhs);
                } else {
                    lhs = Expr::wrap(make_node({.kind = ExprKind::div,
                                                .a = lhs.ptr(),
                                                .b = rhs.ptr()}));
                }
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (eat('^')) {
            skip_ws();
            bool neg = pos_ < src_.size() && src_[pos_] == '-';
            if (neg) ++pos_;
            std::size_t start = pos_;
            long v = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + (src_[pos_] - '0');
                ++pos_;
            }
            if (pos_ == start) throw SyntaxError("expected integer exponent", pos_);
            int n = static_cast<int>(neg ? -v : v);
            return Expr::wrap(make_node(
                {.kind = ExprKind::pow, .exponent = n, .a = base.ptr()}));
        }
        return base;
    }

    Expr parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) throw SyntaxError("expected number", pos_);
            pos_ += static_cast<std::size_t>(end - begin);
            return Expr::constant(v);
        }
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr_rule();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalnum(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            if (name == "z1") return Expr::variable(Var::z1);
            if (name == "z2") return Expr::variable(Var::z2);
            if (name == "cz1") return Expr::variable(Var::cz1);
            if (name == "cz2") return Expr::variable(Var::cz2);
            if (name == "I1") return Expr::constant(Bicomplex::i1());
            if (name == "I2") return Expr::constant(Bicomplex::i2());
            if (name == "J") return Expr::constant(Bicomplex::j());
            Fn fn;
            if (name == "exp")
                fn = Fn::exp;
            else if (name == "sin")
                fn = Fn::sin;
            else if (name == "cos")
                fn = Fn::cos;
            else if (name == "sinh")
                fn = Fn::sinh;
            else if (name == "cosh")
                fn = Fn::cosh;
            else
                throw UnknownIdentifierError(name, start);
            if (!eat('(')) throw SyntaxError("expected '(' after function name", pos_);
            Expr arg = parse_expr_rule();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return Expr::wrap(
                make_node({.kind = ExprKind::call, .fn = fn, .a = arg.ptr()}));
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

}  // namespace bvk
