#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eprsteer/errors.hpp"
#include "eprsteer/geometry.hpp"

using namespace eprsteer;

namespace {

bool contains(const std::vector<BlochVector>& set, const BlochVector& v) {
    return std::any_of(set.begin(), set.end(), [&](const BlochVector& w) { return (v - w).norm() <= 1e-12; });
}

bool same_set(const std::vector<BlochVector>& a, const std::vector<BlochVector>& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(), [&](const BlochVector& v) { return contains(b, v); });
}

// Independent face-centre oracle: a triple of vertices spans a face when all
// other vertices lie on one side of its plane; the outward normal of a face
// of a sphere-inscribed solid points at the face centre.
std::vector<BlochVector> face_normals(const std::vector<BlochVector>& v) {
    std::vector<BlochVector> normals;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            for (std::size_t k = j + 1; k < v.size(); ++k) {
                BlochVector n = (v[j] - v[i]).cross(v[k] - v[i]);
                if (n.norm() < 1e-9) continue;
                n = n.normalized();
                if (n.dot(v[i]) < 0) n = -n;
                const double h = n.dot(v[i]);
                const bool supporting =
                    std::all_of(v.begin(), v.end(), [&](const BlochVector& w) { return n.dot(w) <= h + 1e-9; });
                if (supporting && !contains(normals, n)) normals.push_back(n);
            }
    return normals;
}

BlochVector rotate(const std::array<std::array<double, 3>, 3>& r, const BlochVector& v) {
    return {r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z, r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z};
}

std::vector<double> pairwise_abs_dots(const std::vector<BlochVector>& axes) {
    std::vector<double> d;
    for (std::size_t i = 0; i < axes.size(); ++i)
        for (std::size_t j = i + 1; j < axes.size(); ++j) d.push_back(std::abs(axes[i].dot(axes[j])));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("canonical schemes") {
    const auto oct = scheme_axes(3);
    REQUIRE(oct.n() == 3);
    CHECK(oct.figure() == Figure::octahedron);
    CHECK(oct.axis(0) == BlochVector{1, 0, 0});
    CHECK(oct.axis(1) == BlochVector{0, 1, 0});
    CHECK(oct.axis(2) == BlochVector{0, 0, 1});

    const auto sq = scheme_axes(2);
    CHECK(sq.axis(0) == BlochVector{1, 0, 0});
    CHECK(sq.axis(1) == BlochVector{0, 1, 0});

    for (int n : supported_setting_counts()) {
        const auto s = scheme_axes(n);
        CHECK(s.n() == n);
        for (const auto& u : s.axes()) CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(scheme_axes(5), DomainError);
    CHECK_THROWS_AS(scheme_axes(1), DomainError);
}

TEST_CASE("pairwise axis overlaps take one value per figure") {
    const std::vector<std::pair<int, double>> expected{
        {2, 0.0}, {3, 0.0}, {4, 1.0 / 3.0}, {6, 1.0 / std::sqrt(5.0)}};
    for (const auto& [n, value] : expected)
        for (double d : pairwise_abs_dots(scheme_axes(n).axes())) CHECK(std::abs(d - value) <= 1e-12);
    CHECK(1.0 / std::sqrt(5.0) == doctest::Approx(0.4472).epsilon(1e-4));
}

TEST_CASE("dodecahedron axes: three nearest neighbours each") {
    const auto s = scheme_axes(10);
    const auto dots = pairwise_abs_dots(s.axes());
    const double largest = dots.back();
    CHECK(largest == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-12));
    for (int k = 0; k < 10; ++k) {
        int neighbours = 0;
        for (int j = 0; j < 10; ++j)
            if (j != k && std::abs(std::abs(s.axis(j).dot(s.axis(k))) - largest) <= 1e-12) ++neighbours;
        CHECK(neighbours == 3);
    }
}

TEST_CASE("representative per antipodal pair is the lexicographically larger one") {
    for (int n : supported_setting_counts()) {
        const auto verts = vertex_directions(n).directions;
        const auto scheme = scheme_axes(n);
        CHECK(verts.size() == static_cast<std::size_t>(2 * n));
        for (const auto& u : scheme.axes()) {
            CHECK(contains(verts, u));
            CHECK(contains(verts, -u));
            const bool larger = u.x > 1e-12 || (std::abs(u.x) <= 1e-12 && (u.y > 1e-12 || (std::abs(u.y) <= 1e-12 && u.z > 0)));
            CHECK(larger);
        }
    }
}

TEST_CASE("dual directions") {
    const auto oct = dual_directions(3);
    CHECK(oct.label == DirectionKind::dual);
    CHECK(oct.directions.size() == 8);
    for (const auto& v : oct.directions) {
        CHECK(std::abs(std::abs(v.x) - 1.0 / std::sqrt(3.0)) <= 1e-15);
        CHECK(std::abs(std::abs(v.y) - 1.0 / std::sqrt(3.0)) <= 1e-15);
        CHECK(std::abs(std::abs(v.z) - 1.0 / std::sqrt(3.0)) <= 1e-15);
    }

    const auto cube = dual_directions(4);
    CHECK(cube.directions.size() == 6);
    for (const BlochVector& e : {BlochVector{1, 0, 0}, BlochVector{0, 1, 0}, BlochVector{0, 0, 1}}) {
        CHECK(contains(cube.directions, e));
        CHECK(contains(cube.directions, -e));
    }

    const auto square = dual_directions(2);
    CHECK(square.directions.size() == 4);
    const double s = 1.0 / std::sqrt(2.0);
    for (double a : {s, -s})
        for (double b : {s, -s}) CHECK(contains(square.directions, {a, b, 0.0}));
}

TEST_CASE("duality involution and antipodal closure") {
    CHECK(same_set(dual_directions(3).directions, vertex_directions(4).directions));
    CHECK(same_set(dual_directions(4).directions, vertex_directions(3).directions));
    for (int n : supported_setting_counts())
        for (auto kind : {DirectionKind::vertex, DirectionKind::dual}) {
            const auto set = kind == DirectionKind::vertex ? vertex_directions(n) : dual_directions(n);
            for (const auto& v : set.directions) {
                CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
                CHECK(contains(set.directions, -v));
            }
        }
}

TEST_CASE("hardcoded face centres match a support-plane enumeration") {
    for (int n : {3, 4, 6, 10}) {
        const auto oracle = face_normals(vertex_directions(n).directions);
        CHECK(same_set(dual_directions(n).directions, oracle));
    }
    CHECK(dual_directions(6).directions.size() == 20);
    CHECK(dual_directions(10).directions.size() == 12);
}

TEST_CASE("pairwise overlaps are invariant under symmetry rotations") {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    using R = std::array<std::array<double, 3>, 3>;
    const R cyclic{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};       // (x,y,z) → (z,x,y)
    const R quarter_z{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};   // 90° about z
    const R half_x{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};     // 180° about x
    const R half_z{{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};     // 180° about z
    // 72° about the icosahedral vertex (0, 1, φ)/|·| via Rodrigues.
    const BlochVector k = BlochVector{0, 1, p}.normalized();
    const double c = std::cos(2 * M_PI / 5), s = std::sin(2 * M_PI / 5);
    const R five{{{c + k.x * k.x * (1 - c), k.x * k.y * (1 - c) - k.z * s, k.x * k.z * (1 - c) + k.y * s},
                  {k.y * k.x * (1 - c) + k.z * s, c + k.y * k.y * (1 - c), k.y * k.z * (1 - c) - k.x * s},
                  {k.z * k.x * (1 - c) - k.y * s, k.z * k.y * (1 - c) + k.x * s, c + k.z * k.z * (1 - c)}}};

    const std::vector<std::pair<int, std::vector<R>>> groups{
        {2, {quarter_z, half_x, half_z}},
        {3, {cyclic, quarter_z, half_x}},
        {4, {cyclic, quarter_z, half_x}},
        {6, {cyclic, half_x, five}},
        {10, {cyclic, half_x, half_z}},
    };
    for (const auto& [n, rotations] : groups) {
        const auto axes = scheme_axes(n).axes();
        const auto verts = vertex_directions(n).directions;
        const auto base = pairwise_abs_dots(axes);
        for (const auto& r : rotations) {
            std::vector<BlochVector> rotated;
            for (const auto& u : axes) {
                const auto w = rotate(r, u);
                CHECK(contains(verts, w));  // a genuine symmetry of the figure
                rotated.push_back(w);
            }
            const auto d = pairwise_abs_dots(rotated);
            for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - base[i]) <= 1e-12);
        }
    }
}

TEST_CASE("custom schemes are validated") {
    CHECK_NOTHROW(MeasurementScheme::from_axes({{1, 0, 0}, {0, 0, 1}}));
    CHECK_THROWS_AS(MeasurementScheme::from_axes({{1, 0, 0}, {-1, 0, 0}}), DomainError);
    CHECK_THROWS_AS(MeasurementScheme::from_axes({{1, 0, 0}, {0.5, 0, 0}}), DomainError);
    CHECK_THROWS_AS(MeasurementScheme::from_axes({}), DomainError);
    CHECK(MeasurementScheme::from_axes({{0, 1, 0}}).figure() == Figure::custom);
}
