#include "znfal/points.hpp"

#include <algorithm>
#include <string>

namespace znfal {

bool PointSet::contains(const Point& p) const {
    return std::binary_search(pts.begin(), pts.end(), p);
}

PointSet PointSet::make(Modulus mod, int dim, std::vector<Point> points) {
    ZNFAL_REQUIRE(dim >= 1, "PointSet: dimension must be at least 1");
    ZNFAL_REQUIRE(!points.empty(), "PointSet: empty point sets are rejected");
    for (Point& p : points) {
        ZNFAL_REQUIRE(static_cast<int>(p.size()) == dim,
                      "PointSet: point length " + std::to_string(p.size()) +
                          " does not match dimension " + std::to_string(dim));
        for (Int& c : p) c = mod_reduce(c, mod.n);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return PointSet{std::move(mod), dim, std::move(points)};
}

PointSet translate(const PointSet& e, const Point& w) {
    ZNFAL_REQUIRE(static_cast<int>(w.size()) == e.dim, "translate: vector length mismatch");
    std::vector<Point> moved = e.pts;
    for (Point& p : moved)
        for (int i = 0; i < e.dim; ++i) p[i] = mod_reduce(p[i] + w[i], e.mod.n);
    return PointSet::make(e.mod, e.dim, std::move(moved));
}

PointSet set_difference(const PointSet& e, const PointSet& f) {
    ZNFAL_REQUIRE(e.mod.n == f.mod.n && e.dim == f.dim,
                  "set_difference: mismatched modulus or dimension");
    std::vector<Point> rest;
    for (const Point& p : e.pts)
        if (!f.contains(p)) rest.push_back(p);
    return PointSet::make(e.mod, e.dim, std::move(rest));
}

} // namespace znfal
