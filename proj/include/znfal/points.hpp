#pragma once

/// Point sets in Z_n^d. A PointSet is canonical by construction:
/// coordinates reduced into [0, n), points sorted lexicographically,
/// duplicates removed, never empty.

#include <vector>

#include "znfal/ring.hpp"

namespace znfal {

using Point = std::vector<Int>;

struct PointSet {
    Modulus mod;
    int dim = 0;
    std::vector<Point> pts; // sorted, unique, reduced

    Int size() const { return static_cast<Int>(pts.size()); }

    bool contains(const Point& p) const;

    bool operator==(const PointSet&) const = default;

    /// Canonicalizing factory: reduces every coordinate mod n, sorts,
    /// deduplicates. Throws input_error on empty input, dim < 1, or a
    /// point of the wrong length.
    static PointSet make(Modulus mod, int dim, std::vector<Point> points);
};

/// Translate every point by w (coordinate-wise, mod n).
PointSet translate(const PointSet& e, const Point& w);

/// Set difference e \ f (same modulus and dimension). Throws
/// input_error if the result would be empty.
PointSet set_difference(const PointSet& e, const PointSet& f);

} // namespace znfal
