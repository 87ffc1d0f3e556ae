#include "bvk/grid.hpp"

#include <charconv>

#include "bvk/errors.hpp"

namespace bvk {

std::size_t GridDomain::size() const {
    return static_cast<std::size_t>(x.count) * y.count * p.count * q.count;
}

std::array<int, 4> GridDomain::indices(std::size_t flat) const {
    int iq = static_cast<int>(flat % q.count);
    flat /= q.count;
    int ip = static_cast<int>(flat % p.count);
    flat /= p.count;
    int iy = static_cast<int>(flat % y.count);
    flat /= y.count;
    return {static_cast<int>(flat), iy, ip, iq};
}

std::size_t GridDomain::flat_index(int ix, int iy, int ip, int iq) const {
    return ((static_cast<std::size_t>(ix) * y.count + iy) * p.count + ip) * q.count + iq;
}

GridPoint GridDomain::point(std::size_t flat) const {
    auto [ix, iy, ip, iq] = indices(flat);
    return {x.value(ix), y.value(iy), p.value(ip), q.value(iq)};
}

void GridDomain::validate(int min_active) const {
    for (int i = 0; i < 4; ++i) {
        const Axis& a = axis(i);
        if (a.count < 1) throw ConfigError("axis count must be >= 1");
        if (a.count > 1 && a.count < min_active)
            throw ConfigError("active axes need at least " + std::to_string(min_active) +
                              " samples");
        if (a.count > 1 && !(a.hi > a.lo))
            throw ConfigError("active axis must have hi > lo");
    }
}

GridDomain GridDomain::refined(int n) const {
    GridDomain g = *this;
    for (int i = 0; i < 4; ++i) {
        Axis& a = g.axis(i);
        if (!a.frozen()) a.count = ((a.count - 1) << n) + 1;
    }
    return g;
}

namespace {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

}  // namespace

std::string GridDomain::describe() const {
    static const char* names[4] = {"x", "y", "p", "q"};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        const Axis& a = axis(i);
        if (i) out += ",";
        out += names[i];
        out += "=";
        if (a.frozen()) {
            out += format_double(a.lo);
        } else {
            out += format_double(a.lo) + ":" + format_double(a.hi) + ":" +
                   std::to_string(a.count);
        }
    }
    return out;
}

GridDomain restrict_plane(const GridDomain& grid, Plane plane, double frozen_value) {
    GridDomain g = grid;
    Axis frozen{frozen_value, frozen_value, 1};
    g.y = frozen;
    if (plane == Plane::c_i2)
        g.q = frozen;
    else
        g.p = frozen;
    return g;
}

SampledField sample(const Expr& e, const GridDomain& grid) {
    grid.validate(1);
    CompiledExpr compiled(e);
    SampledField field{grid, {}};
    field.values.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        GridPoint pt = grid.point(i);
        field.values.push_back(compiled(pt.z1(), pt.z2()));
    }
    return field;
}

}  // namespace bvk
