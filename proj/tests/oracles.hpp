#pragma once

/// Test-only oracles: direct-definition counterparts of the library's
/// optimized paths. Everything here is deliberately brute force and
/// shares no code with what it checks.

#include <map>
#include <set>
#include <vector>

#include "znfal/bignum.hpp"
#include "znfal/energy.hpp"
#include "znfal/points.hpp"

namespace znfal::oracle {

/// Number of quadruples (x,y,z,w) in E^4 with ||x-y||^2 = ||z-w||^2 mod n,
/// counted by the four-fold loop.
inline BigInt quadruple_energy(const PointSet& e) {
    BigInt count = 0;
    for (const Point& x : e.pts)
        for (const Point& y : e.pts) {
            Int txy = squared_distance(x, y, e.mod);
            for (const Point& z : e.pts)
                for (const Point& w : e.pts)
                    if (squared_distance(z, w, e.mod) == txy) ++count;
        }
    return count;
}

/// Shell energies by the quadruple definition: both pairs at scale
/// exactly k with equal distances. Returns shells plus the leftover
/// cross-scale count.
struct QuadrupleShells {
    std::map<Int, BigInt> shells;
    BigInt mixed = 0;
    BigInt total = 0;
};
inline QuadrupleShells quadruple_shells(const PointSet& e) {
    QuadrupleShells out;
    for (const Point& x : e.pts)
        for (const Point& y : e.pts) {
            Int txy = squared_distance(x, y, e.mod);
            Int kxy = pair_scale(x, y, e.mod);
            for (const Point& z : e.pts)
                for (const Point& w : e.pts) {
                    if (squared_distance(z, w, e.mod) != txy) continue;
                    ++out.total;
                    if (pair_scale(z, w, e.mod) == kxy)
                        ++out.shells[kxy];
                    else
                        ++out.mixed;
                }
        }
    return out;
}

/// Distance set straight from the definition.
inline std::set<Int> pairwise_distance_set(const PointSet& e) {
    std::set<Int> out;
    for (const Point& x : e.pts)
        for (const Point& y : e.pts) out.insert(squared_distance(x, y, e.mod));
    return out;
}

/// Multiplicity function by the pair definition.
inline std::map<Int, Int> pairwise_profile(const PointSet& e) {
    std::map<Int, Int> nu;
    for (const Point& x : e.pts)
        for (const Point& y : e.pts) ++nu[squared_distance(x, y, e.mod)];
    return nu;
}

/// Members of Ann(K) in Z_n by the defining congruence K*x = 0 (mod n).
inline std::vector<Int> annihilator_elements(Int K, Int n) {
    std::vector<Int> out;
    for (Int x = 0; x < n; ++x)
        if ((K * x) % n == 0) out.push_back(x);
    return out;
}

/// All divisors by trial division.
inline std::vector<Int> divisor_list(Int n) {
    std::vector<Int> out;
    for (Int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

} // namespace znfal::oracle
