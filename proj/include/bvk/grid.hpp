#pragma once

// Rectangular lattices in the four real coordinates (x, y, p, q) of
// w = x + y*i1 + p*i2 + q*j, i.e. z1 = x + y*i1 and z2 = p + q*i1.
// An axis with a single sample is frozen to a constant; restriction
// planes freeze (y, q) for the C(i2) plane and (y, p) for the
// hyperbolic plane.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bvk/bicomplex.hpp"
#include "bvk/expr.hpp"

namespace bvk {

struct Axis {
    double lo = -1.0;
    double hi = 1.0;
    int count = 9;

    bool frozen() const { return count == 1; }
    double spacing() const { return count > 1 ? (hi - lo) / (count - 1) : 0.0; }
    double value(int i) const { return count > 1 ? lo + i * spacing() : lo; }
};

struct GridPoint {
    double x = 0, y = 0, p = 0, q = 0;
    Complex z1() const { return {x, y}; }
    Complex z2() const { return {p, q}; }
};

enum class Plane { c_i2, d };

struct GridDomain {
    Axis x, y, p, q;

    static GridDomain defaults() { return {}; }
    static GridDomain cube(double lo, double hi, int count) {
        Axis a{lo, hi, count};
        return {a, a, a, a};
    }
    // 2-D grid in the z1-plane (z2 frozen at 0), used for planar domains.
    static GridDomain planar(double lo, double hi, int count) {
        Axis a{lo, hi, count};
        Axis frozen{0.0, 0.0, 1};
        return {a, a, frozen, frozen};
    }

    const Axis& axis(int i) const { return i == 0 ? x : i == 1 ? y : i == 2 ? p : q; }
    Axis& axis(int i) { return i == 0 ? x : i == 1 ? y : i == 2 ? p : q; }

    std::size_t size() const;
    GridPoint point(std::size_t flat) const;
    std::array<int, 4> indices(std::size_t flat) const;
    std::size_t flat_index(int ix, int iy, int ip, int iq) const;

    // Throws ConfigError unless every axis has count 1 or >= min_active.
    void validate(int min_active = 3) const;

    // Counts become (c-1)*2^n + 1 on active axes, halving the spacing n times.
    GridDomain refined(int n) const;

    std::string describe() const;
};

GridDomain restrict_plane(const GridDomain& grid, Plane plane, double frozen_value = 0.0);

struct SampledField {
    GridDomain domain;
    std::vector<Bicomplex> values;
};

SampledField sample(const Expr& e, const GridDomain& grid);

}  // namespace bvk
