#pragma once

// Measurement schemes built from antipodal vertex pairs of the square and the
// four Platonic solids whose vertices come in antipodal pairs.

#include <string>
#include <string_view>
#include <vector>

#include "eprsteer/linalg.hpp"

namespace eprsteer {

enum class Figure { square, octahedron, cube, icosahedron, dodecahedron, custom };

std::string_view figure_name(Figure f);

/// Figure for a supported setting count n ∈ {2, 3, 4, 6, 10}.
Figure figure_for(int n);

/// The setting counts with a canonical figure, ascending.
const std::vector<int>& supported_setting_counts();

class MeasurementScheme {
public:
    /// User-supplied axes: each must be unit-norm and no two may be (anti)parallel.
    static MeasurementScheme from_axes(std::vector<BlochVector> axes);

    Figure figure() const { return figure_; }
    int n() const { return static_cast<int>(axes_.size()); }
    const std::vector<BlochVector>& axes() const { return axes_; }
    const BlochVector& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }

private:
    friend MeasurementScheme scheme_axes(int n);
    MeasurementScheme(Figure f, std::vector<BlochVector> axes);

    Figure figure_;
    std::vector<BlochVector> axes_;
};

enum class DirectionKind { vertex, dual };

std::string_view kind_name(DirectionKind k);
DirectionKind parse_kind(std::string_view s);

struct DirectionSet {
    std::vector<BlochVector> directions;
    DirectionKind label;
};

/// Canonical scheme for n settings. One axis per antipodal vertex pair, the
/// lexicographically larger of ±v, listed in descending lexicographic order.
MeasurementScheme scheme_axes(int n);

/// Normalized vertex directions of the figure for n (antipodal-closed).
DirectionSet vertex_directions(int n);

/// Normalized face-centre directions of the figure for n (vertices of the
/// dual figure; edge midpoints for the square). Antipodal-closed.
DirectionSet dual_directions(int n);

}  // namespace eprsteer
