#pragma once

/// Deterministic point-set generators: the 4-point mixed-scale sample
/// over Z_6^2, skew-twisted lifts of F_p^d into Z_{p^2}^d, full cosets of
/// annihilator submodules, and seeded random baselines.

#include "znfal/points.hpp"
#include "znfal/rng.hpp"

namespace znfal {

/// d x d matrix over F_p with A^T = -A (zero diagonal when p is odd).
struct SkewMatrix {
    Int p = 0;
    int dim = 0;
    std::vector<std::vector<Int>> a;

    bool is_skew() const;
    bool is_zero() const;
    /// A*x mod p.
    Point apply(const Point& x) const;
};

/// The symplectic 2x2 block [[0,1],[p-1,0]] in the top-left corner,
/// zeros elsewhere. Valid for any d >= 2.
SkewMatrix default_skew_matrix(Int p, int dim);

/// Uniform over nonzero strictly-upper-triangular fillings, reflected to
/// A^T = -A with zero diagonal. Requires d >= 2 (for odd p a nonzero skew
/// matrix needs off-diagonal entries). Fully determined by the seed.
SkewMatrix random_skew_matrix(Int p, int dim, std::uint64_t seed);

/// {(0,0), (2,0), (3,0), (0,2)} over Z_6^2: four points whose pairs
/// realize every divisor scale of 6.
PointSet mixed_scale_quartet();

/// E = {x + p*A*x : x in F_p^d} over Z_{p^2}^d, with F_p embedded as the
/// canonical representatives {0..p-1}. |E| = p^d and reduction mod p is a
/// bijection onto F_p^d; the skew twist is invisible to squared
/// distances mod p^2. Requires odd p and skew A.
PointSet skew_lift_set(Int p, int dim, const SkewMatrix& a);

/// The full coset v + Ann(K)^d in Z_n^d, of size K^d. Requires K | n and
/// K > 1 (K = n yields the whole space).
PointSet annihilator_coset(const Modulus& m, int dim, Int K, const Point& v);

/// Duplicate-free uniform sample of the given size. Coordinates are
/// drawn by rejection from a single mt19937_64 stream in point-major,
/// coordinate-minor order; a point colliding with an earlier one is
/// discarded whole and redrawn. size = n^d returns the entire space.
PointSet random_point_set(const Modulus& m, int dim, Int size, std::uint64_t seed);

/// All of Z_n^d. Guarded: throws budget_error if n^d > max_points.
PointSet full_space(const Modulus& m, int dim, Int max_points = 2000000);

} // namespace znfal
