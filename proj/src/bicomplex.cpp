#include "bvk/bicomplex.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "bvk/errors.hpp"

namespace bvk {

Bicomplex conjugate(const Bicomplex& w, Conjugation k) {
    switch (k) {
        case Conjugation::dag0: return w;
        case Conjugation::dag1: return {w.w0, -w.w1, w.w2, -w.w3};
        case Conjugation::dag2: return {w.w0, w.w1, -w.w2, -w.w3};
        case Conjugation::dag3: return {w.w0, -w.w1, -w.w2, w.w3};
    }
    throw std::invalid_argument("bad conjugation kind");
}

Conjugation compose(Conjugation a, Conjugation b) {
    // The table is xor on the two sign bits (w1-flip, w2w3-flip).
    return static_cast<Conjugation>(static_cast<int>(a) ^ static_cast<int>(b));
}

Bicomplex modulus_sq(const Bicomplex& w, ModulusAxis axis) {
    Conjugation k = axis == ModulusAxis::i1   ? Conjugation::dag2
                    : axis == ModulusAxis::i2 ? Conjugation::dag1
                                              : Conjugation::dag3;
    Bicomplex m = w * conjugate(w, k);
    double floor = 1e-13 * std::max(1.0, euclid_norm(w) * euclid_norm(w));
    double leak = 0.0;
    switch (axis) {
        case ModulusAxis::i1: leak = std::max(std::abs(m.w2), std::abs(m.w3)); break;
        case ModulusAxis::i2: leak = std::max(std::abs(m.w1), std::abs(m.w3)); break;
        case ModulusAxis::j: leak = std::max(std::abs(m.w1), std::abs(m.w2)); break;
    }
    if (leak > floor) throw std::logic_error("modulus_sq left its subalgebra");
    return m;
}

double euclid_norm(const Bicomplex& w) {
    return std::sqrt(w.w0 * w.w0 + w.w1 * w.w1 + w.w2 * w.w2 + w.w3 * w.w3);
}

IdempotentPair to_idempotent(const Bicomplex& w) {
    // p1 = z1 - z2*i1, p2 = z1 + z2*i1 in real components.
    return {Complex{w.w0 + w.w3, w.w1 - w.w2}, Complex{w.w0 - w.w3, w.w1 + w.w2}};
}

Bicomplex from_idempotent(const IdempotentPair& p) {
    Complex z1 = 0.5 * (p.p1 + p.p2);
    Complex z2 = 0.5 * Complex{0, 1} * (p.p1 - p.p2);
    return Bicomplex::from_parts(z1, z2);
}

bool is_null_cone(const Bicomplex& w, double tol) {
    if (tol < 0) throw std::invalid_argument("is_null_cone: tol must be >= 0");
    Complex z1 = w.z1(), z2 = w.z2();
    double n2 = w.w0 * w.w0 + w.w1 * w.w1 + w.w2 * w.w2 + w.w3 * w.w3;
    return std::abs(z1 * z1 + z2 * z2) <= tol * std::max(1.0, n2);
}

Bicomplex inverse(const Bicomplex& w) {
    if (is_null_cone(w)) throw NullConeError("inverse of a null-cone element");
    IdempotentPair p = to_idempotent(w);
    return from_idempotent({1.0 / p.p1, 1.0 / p.p2});
}

namespace {

template <typename Fn>
Bicomplex map_components(const Bicomplex& w, Fn fn) {
    IdempotentPair p = to_idempotent(w);
    return from_idempotent({fn(p.p1), fn(p.p2)});
}

}  // namespace

Bicomplex exp(const Bicomplex& w) { return map_components(w, [](Complex z) { return std::exp(z); }); }
Bicomplex sin(const Bicomplex& w) { return map_components(w, [](Complex z) { return std::sin(z); }); }
Bicomplex cos(const Bicomplex& w) { return map_components(w, [](Complex z) { return std::cos(z); }); }
Bicomplex sinh(const Bicomplex& w) { return map_components(w, [](Complex z) { return std::sinh(z); }); }
Bicomplex cosh(const Bicomplex& w) { return map_components(w, [](Complex z) { return std::cosh(z); }); }

Bicomplex pow(const Bicomplex& w, int n) {
    if (n < 0) return pow(inverse(w), -n);
    Bicomplex acc = Bicomplex::one();
    Bicomplex base = w;
    unsigned e = static_cast<unsigned>(n);
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

namespace {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

}  // namespace

std::string to_string(const Bicomplex& w) {
    static const char* units[4] = {"", "*I1", "*I2", "*J"};
    const double comps[4] = {w.w0, w.w1, w.w2, w.w3};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (comps[i] == 0.0) continue;
        double v = comps[i];
        if (out.empty()) {
            if (v < 0) {
                out += "-";
                v = -v;
            }
        } else {
            out += v < 0 ? " - " : " + ";
            v = std::abs(v);
        }
        out += format_double(v) + units[i];
    }
    return out.empty() ? "0" : out;
}

Bicomplex parse_bicomplex(std::string_view input) {
    // Terms of the form [-] coeff ['*' unit] | unit, joined by +/-.
    std::string owned(input);  // strtod needs a terminated buffer
    std::string_view text(owned);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const char* msg) -> Bicomplex { throw SyntaxError(msg, pos); };

    Bicomplex out;
    bool first = true;
    skip_ws();
    while (pos < text.size()) {
        double sign = 1.0;
        if (text[pos] == '+' || text[pos] == '-') {
            if (first && text[pos] == '+') return fail("unexpected '+'");
            sign = text[pos] == '-' ? -1.0 : 1.0;
            ++pos;
            skip_ws();
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        double coeff = 1.0;
        bool have_coeff = false;
        if (pos < text.size() &&
            (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
            const char* begin = text.data() + pos;
            char* num_end = nullptr;
            coeff = std::strtod(begin, &num_end);
            if (num_end == begin) return fail("expected number");
            pos += static_cast<std::size_t>(num_end - begin);
            have_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            } else {
                out.w0 += sign * coeff;
                first = false;
                skip_ws();
                continue;
            }
        }
        // Unit name.
        std::size_t start = pos;
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string_view unit = text.substr(start, pos - start);
        if (unit == "I1")
            out.w1 += sign * coeff;
        else if (unit == "I2")
            out.w2 += sign * coeff;
        else if (unit == "J")
            out.w3 += sign * coeff;
        else
            throw SyntaxError("expected unit I1, I2 or J", start);
        (void)have_coeff;
        first = false;
        skip_ws();
    }
    if (first) throw SyntaxError("empty bicomplex literal", pos);
    return out;
}

}  // namespace bvk
