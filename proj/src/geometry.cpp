#include "eprsteer/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "eprsteer/errors.hpp"

namespace eprsteer {

namespace {

constexpr double kPhi = std::numbers::phi;
constexpr double kLexTolerance = 1e-12;

// Lexicographic "a > b" with a small tolerance per component.
bool lex_greater(const BlochVector& a, const BlochVector& b) {
    const std::array<double, 3> pa{a.x, a.y, a.z}, pb{b.x, b.y, b.z};
    for (std::size_t i = 0; i < 3; ++i) {
        if (pa[i] > pb[i] + kLexTolerance) return true;
        if (pa[i] < pb[i] - kLexTolerance) return false;
    }
    return false;
}

bool near(const BlochVector& a, const BlochVector& b) { return (a - b).norm() <= 1e-12; }

// All sign variants (on nonzero entries) of every cyclic permutation of each
// generator, deduplicated and normalized.
std::vector<BlochVector> expand(std::initializer_list<BlochVector> generators, bool cyclic) {
    std::vector<BlochVector> out;
    for (const auto& g : generators) {
        std::vector<BlochVector> perms{g};
        if (cyclic) {
            perms.push_back({g.z, g.x, g.y});
            perms.push_back({g.y, g.z, g.x});
        }
        for (const auto& p : perms) {
            for (int mask = 0; mask < 8; ++mask) {
                const BlochVector s{(mask & 1) ? -p.x : p.x, (mask & 2) ? -p.y : p.y, (mask & 4) ? -p.z : p.z};
                const BlochVector v = s.normalized();
                if (std::none_of(out.begin(), out.end(), [&](const BlochVector& w) { return near(v, w); }))
                    out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end(), lex_greater);
    return out;
}

std::vector<BlochVector> square_vertices() { return expand({{1, 0, 0}, {0, 1, 0}}, false); }
std::vector<BlochVector> square_edge_midpoints() { return expand({{1, 1, 0}}, false); }
std::vector<BlochVector> octahedron_vertices() { return expand({{1, 0, 0}}, true); }
std::vector<BlochVector> cube_vertices() { return expand({{1, 1, 1}}, false); }
std::vector<BlochVector> icosahedron_vertices() { return expand({{0, 1, kPhi}}, true); }
std::vector<BlochVector> dodecahedron_vertices() { return expand({{1, 1, 1}, {0, 1 / kPhi, kPhi}}, true); }

// Face centres of the two larger solids in the canonical orientation above.
std::vector<BlochVector> icosahedron_face_centres() { return expand({{1, 1, 1}, {0, kPhi, 1 / kPhi}}, true); }
std::vector<BlochVector> dodecahedron_face_centres() { return expand({{0, kPhi, 1}}, true); }

void require_supported(int n) {
    const auto& ok = supported_setting_counts();
    if (std::find(ok.begin(), ok.end(), n) == ok.end())
        throw DomainError("unsupported number of settings n = " + std::to_string(n) +
                          "; supported values are 2, 3, 4, 6, 10");
}

}  // namespace

std::string_view figure_name(Figure f) {
    switch (f) {
        case Figure::square: return "square";
        case Figure::octahedron: return "octahedron";
        case Figure::cube: return "cube";
        case Figure::icosahedron: return "icosahedron";
        case Figure::dodecahedron: return "dodecahedron";
        case Figure::custom: return "custom";
    }
    return "custom";
}

const std::vector<int>& supported_setting_counts() {
    static const std::vector<int> counts{2, 3, 4, 6, 10};
    return counts;
}

Figure figure_for(int n) {
    require_supported(n);
    switch (n) {
        case 2: return Figure::square;
        case 3: return Figure::octahedron;
        case 4: return Figure::cube;
        case 6: return Figure::icosahedron;
        default: return Figure::dodecahedron;
    }
}

std::string_view kind_name(DirectionKind k) { return k == DirectionKind::vertex ? "vertex" : "dual"; }

DirectionKind parse_kind(std::string_view s) {
    if (s == "vertex") return DirectionKind::vertex;
    if (s == "dual") return DirectionKind::dual;
    throw DomainError("unknown ensemble kind '" + std::string(s) + "'; expected vertex or dual");
}

MeasurementScheme::MeasurementScheme(Figure f, std::vector<BlochVector> axes)
    : figure_(f), axes_(std::move(axes)) {
    if (axes_.empty()) throw DomainError("a measurement scheme needs at least one axis");
    for (std::size_t k = 0; k < axes_.size(); ++k) {
        if (!axes_[k].is_unit())
            throw DomainError("axis " + std::to_string(k) + " is not a unit vector");
        for (std::size_t j = 0; j < k; ++j)
            if (std::abs(axes_[j].dot(axes_[k])) > 1.0 - 1e-12)
                throw DomainError("axes " + std::to_string(j) + " and " + std::to_string(k) +
                                  " are parallel or antiparallel");
    }
}

MeasurementScheme MeasurementScheme::from_axes(std::vector<BlochVector> axes) {
    return MeasurementScheme(Figure::custom, std::move(axes));
}

DirectionSet vertex_directions(int n) {
    switch (figure_for(n)) {
        case Figure::square: return {square_vertices(), DirectionKind::vertex};
        case Figure::octahedron: return {octahedron_vertices(), DirectionKind::vertex};
        case Figure::cube: return {cube_vertices(), DirectionKind::vertex};
        case Figure::icosahedron: return {icosahedron_vertices(), DirectionKind::vertex};
        default: return {dodecahedron_vertices(), DirectionKind::vertex};
    }
}

DirectionSet dual_directions(int n) {
    switch (figure_for(n)) {
        case Figure::square: return {square_edge_midpoints(), DirectionKind::dual};
        case Figure::octahedron: return {cube_vertices(), DirectionKind::dual};
        case Figure::cube: return {octahedron_vertices(), DirectionKind::dual};
        case Figure::icosahedron: return {icosahedron_face_centres(), DirectionKind::dual};
        default: return {dodecahedron_face_centres(), DirectionKind::dual};
    }
}

MeasurementScheme scheme_axes(int n) {
    const auto vertices = vertex_directions(n).directions;
    std::vector<BlochVector> axes;
    for (const auto& v : vertices)
        if (lex_greater(v, -v)) axes.push_back(v);
    std::sort(axes.begin(), axes.end(), lex_greater);
    if (static_cast<int>(axes.size()) != n) throw InternalError("vertex pairing produced the wrong axis count");
    return MeasurementScheme(figure_for(n), std::move(axes));
}

}  // namespace eprsteer
