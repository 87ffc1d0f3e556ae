#pragma once

// The commutative ring of bicomplex numbers
//     w = w0 + w1*i1 + w2*i2 + w3*j,
// with i1^2 = i2^2 = -1, j = i1*i2 = i2*i1 and j^2 = +1.  Viewed over
// C(i1) the same element reads w = z1 + z2*i2 with z1 = w0 + w1*i1 and
// z2 = w2 + w3*i1.  The ring has zero divisors (the null cone), three
// conjugation involutions, three square moduli and a componentwise
// idempotent representation; everything here is a pure function of the
// four real components.

#include <complex>
#include <string>
#include <string_view>

namespace bvk {

using Complex = std::complex<double>;

struct Bicomplex {
    double w0 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;

    constexpr Bicomplex() = default;
    constexpr Bicomplex(double a, double b, double c, double d) : w0(a), w1(b), w2(c), w3(d) {}
    constexpr Bicomplex(double real) : w0(real) {}

    // C(i1) views: w = z1() + z2()*i2.
    Complex z1() const { return {w0, w1}; }
    Complex z2() const { return {w2, w3}; }

    static Bicomplex from_parts(Complex z1, Complex z2) {
        return {z1.real(), z1.imag(), z2.real(), z2.imag()};
    }
    static Bicomplex from_complex(Complex z) { return {z.real(), z.imag(), 0.0, 0.0}; }

    static constexpr Bicomplex one() { return {1, 0, 0, 0}; }
    static constexpr Bicomplex i1() { return {0, 1, 0, 0}; }
    static constexpr Bicomplex i2() { return {0, 0, 1, 0}; }
    static constexpr Bicomplex j() { return {0, 0, 0, 1}; }
    // Idempotents e1 = (1+j)/2, e2 = (1-j)/2.
    static constexpr Bicomplex e1() { return {0.5, 0, 0, 0.5}; }
    static constexpr Bicomplex e2() { return {0.5, 0, 0, -0.5}; }

    bool operator==(const Bicomplex&) const = default;
};

constexpr Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
    return {a.w0 + b.w0, a.w1 + b.w1, a.w2 + b.w2, a.w3 + b.w3};
}
constexpr Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
    return {a.w0 - b.w0, a.w1 - b.w1, a.w2 - b.w2, a.w3 - b.w3};
}
constexpr Bicomplex operator-(const Bicomplex& a) { return {-a.w0, -a.w1, -a.w2, -a.w3}; }

constexpr Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
    return {a.w0 * b.w0 - a.w1 * b.w1 - a.w2 * b.w2 + a.w3 * b.w3,
            a.w0 * b.w1 + a.w1 * b.w0 - a.w2 * b.w3 - a.w3 * b.w2,
            a.w0 * b.w2 + a.w2 * b.w0 - a.w1 * b.w3 - a.w3 * b.w1,
            a.w0 * b.w3 + a.w3 * b.w0 + a.w1 * b.w2 + a.w2 * b.w1};
}
constexpr Bicomplex operator*(double s, const Bicomplex& a) {
    return {s * a.w0, s * a.w1, s * a.w2, s * a.w3};
}
constexpr Bicomplex operator*(const Bicomplex& a, double s) { return s * a; }

// The four conjugations; dag0 is the identity.  Sign patterns on
// (w0,w1,w2,w3): dag1 -> (+-+-), dag2 -> (++--), dag3 -> (+--+).
enum class Conjugation { dag0 = 0, dag1 = 1, dag2 = 2, dag3 = 3 };

Bicomplex conjugate(const Bicomplex& w, Conjugation k);

// Composition table of the conjugations (an abelian Klein four-group).
Conjugation compose(Conjugation a, Conjugation b);

// Subalgebra in which a square modulus lands.
enum class ModulusAxis { i1, i2, j };

// w * w^{dag2} in C(i1), w * w^{dag1} in C(i2), or w * w^{dag3} in the
// hyperbolic plane D.  Throws std::logic_error if the product leaves its
// subalgebra by more than 1e-13 * |w|^2 (it cannot, up to rounding).
Bicomplex modulus_sq(const Bicomplex& w, ModulusAxis axis);

// Euclidean norm sqrt(w0^2 + w1^2 + w2^2 + w3^2).
double euclid_norm(const Bicomplex& w);

// Idempotent representation w = p1*e1 + p2*e2 with p1 = z1 - z2*i1 and
// p2 = z1 + z2*i1; ring operations act componentwise on (p1, p2).
struct IdempotentPair {
    Complex p1;
    Complex p2;
};

IdempotentPair to_idempotent(const Bicomplex& w);
Bicomplex from_idempotent(const IdempotentPair& p);

// True iff z1^2 + z2^2 vanishes relative to tol * max(1, |w|^2); the zero
// divisors are exactly the multiples of i1 +- i2.
bool is_null_cone(const Bicomplex& w, double tol = 1e-10);

// Multiplicative inverse, computed componentwise in the idempotent
// representation.  Throws NullConeError when is_null_cone(w) holds.
Bicomplex inverse(const Bicomplex& w);

inline Bicomplex operator/(const Bicomplex& a, const Bicomplex& b) { return a * inverse(b); }

// Swap of the i1 and i2 components: pi(a + b*i1 + c*i2 + d*j) = a + c*i1 + b*i2 + d*j.
constexpr Bicomplex pi_map(const Bicomplex& w) { return {w.w0, w.w2, w.w1, w.w3}; }

// Elementary functions, defined componentwise on the idempotent parts.
Bicomplex exp(const Bicomplex& w);
Bicomplex sin(const Bicomplex& w);
Bicomplex cos(const Bicomplex& w);
Bicomplex sinh(const Bicomplex& w);
Bicomplex cosh(const Bicomplex& w);

// Integer power by repeated squaring; negative exponents invert first.
Bicomplex pow(const Bicomplex& w, int n);

// Textual form "a + b*I1 + c*I2 + d*J" with round-trip fidelity.
std::string to_string(const Bicomplex& w);
Bicomplex parse_bicomplex(std::string_view text);

}  // namespace bvk
