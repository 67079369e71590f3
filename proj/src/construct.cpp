#include "znfal/construct.hpp"

#include <algorithm>
#include <string>

#include "znfal/bignum.hpp"

namespace znfal {

bool SkewMatrix::is_skew() const {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (a[i][j] != mod_reduce(-a[j][i], p)) return false;
    return true;
}

bool SkewMatrix::is_zero() const {
    for (const auto& row : a)
        for (Int v : row)
            if (v != 0) return false;
    return true;
}

Point SkewMatrix::apply(const Point& x) const {
    ZNFAL_REQUIRE(static_cast<int>(x.size()) == dim, "SkewMatrix::apply: length mismatch");
    Point out(static_cast<std::size_t>(dim), 0);
    for (int i = 0; i < dim; ++i) {
        Int acc = 0;
        for (int j = 0; j < dim; ++j) acc = (acc + mul_mod(mod_reduce(a[i][j], p), mod_reduce(x[j], p), p)) % p;
        out[i] = acc;
    }
    return out;
}

SkewMatrix default_skew_matrix(Int p, int dim) {
    ZNFAL_REQUIRE(dim >= 2, "default_skew_matrix: dimension must be at least 2");
    SkewMatrix m{p, dim, std::vector<std::vector<Int>>(dim, std::vector<Int>(dim, 0))};
    m.a[0][1] = 1 % p;
    m.a[1][0] = mod_reduce(-1, p);
    return m;
}

SkewMatrix random_skew_matrix(Int p, int dim, std::uint64_t seed) {
    ZNFAL_REQUIRE(dim >= 2, "random_skew_matrix: dimension must be at least 2");
    ZNFAL_REQUIRE(p >= 3 && p % 2 == 1, "random_skew_matrix: p must be an odd prime");
    Rng rng(seed);
    SkewMatrix m{p, dim, std::vector<std::vector<Int>>(dim, std::vector<Int>(dim, 0))};
    do {
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                Int v = rng.residue(p);
                m.a[i][j] = v;
                m.a[j][i] = mod_reduce(-v, p);
            }
    } while (m.is_zero());
    return m;
}

PointSet mixed_scale_quartet() {
    return PointSet::make(factorize(6), 2, {{0, 0}, {2, 0}, {3, 0}, {0, 2}});
}

PointSet skew_lift_set(Int p, int dim, const SkewMatrix& a) {
    ZNFAL_REQUIRE(p >= 3 && p % 2 == 1, "skew_lift_set: p must be an odd prime");
    ZNFAL_REQUIRE(a.p == p && a.dim == dim, "skew_lift_set: matrix shape mismatch");
    ZNFAL_REQUIRE(a.is_skew(), "skew_lift_set: matrix is not skew-symmetric mod p");

    Modulus mod = factorize(p * p);
    std::vector<Point> pts;
    Point x(static_cast<std::size_t>(dim), 0);
    for (;;) {
        Point twist = a.apply(x);
        Point lifted(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) lifted[i] = x[i] + p * twist[i]; // already < p^2
        pts.push_back(std::move(lifted));

        int i = 0;
        while (i < dim && ++x[i] == p) x[i++] = 0;
        if (i == dim) break;
    }
    return PointSet::make(std::move(mod), dim, std::move(pts));
}

PointSet annihilator_coset(const Modulus& m, int dim, Int K, const Point& v) {
    ZNFAL_REQUIRE(K > 1, "annihilator_coset: K must exceed 1");
    SubmoduleSpec ann = annihilator_submodule(K, m);
    ZNFAL_REQUIRE(static_cast<int>(v.size()) == dim, "annihilator_coset: offset length mismatch");

    std::vector<Point> pts;
    Point t(static_cast<std::size_t>(dim), 0);
    for (;;) {
        Point pt(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) pt[i] = mod_reduce(v[i] + t[i] * ann.generator, m.n);
        pts.push_back(std::move(pt));

        int i = 0;
        while (i < dim && ++t[i] == K) t[i++] = 0;
        if (i == dim) break;
    }
    return PointSet::make(m, dim, std::move(pts));
}

PointSet random_point_set(const Modulus& m, int dim, Int size, std::uint64_t seed) {
    ZNFAL_REQUIRE(dim >= 1, "random_point_set: dimension must be at least 1");
    ZNFAL_REQUIRE(size >= 1, "random_point_set: empty point sets are rejected");
    BigInt space = big_pow(big(m.n), static_cast<unsigned long>(dim));
    ZNFAL_REQUIRE(big(size) <= space,
                  "random_point_set: size " + std::to_string(size) + " exceeds n^d");

    if (big(size) == space) return full_space(m, dim, size);

    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(size));
    std::vector<Point> sorted; // membership index
    while (static_cast<Int>(pts.size()) < size) {
        Point p(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) p[i] = rng.residue(m.n);
        auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
        if (it != sorted.end() && *it == p) continue; // collision: redraw whole point
        sorted.insert(it, p);
        pts.push_back(std::move(p));
    }
    return PointSet::make(m, dim, std::move(pts));
}

PointSet full_space(const Modulus& m, int dim, Int max_points) {
    BigInt space = big_pow(big(m.n), static_cast<unsigned long>(dim));
    if (space > big(max_points))
        throw budget_error("full_space: n^d exceeds the point budget");
    std::vector<Point> pts;
    Point x(static_cast<std::size_t>(dim), 0);
    for (;;) {
        pts.push_back(x);
        int i = 0;
        while (i < dim && ++x[i] == m.n) x[i++] = 0;
        if (i == dim) break;
    }
    return PointSet::make(m, dim, std::move(pts));
}

} // namespace znfal
