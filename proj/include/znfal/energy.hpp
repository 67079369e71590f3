#pragma once

/// Squared-distance statistics over Z_n^d: the distance multiplicity
/// profile nu_E, the incidence energy sum_t nu_E(t)^2, and its
/// decomposition into divisor-scale shells.
///
/// The scale of an ordered pair (x, y) is the largest divisor k | n with
/// x = y coordinate-wise mod k, i.e. gcd(n, x_1-y_1, ..., x_d-y_d);
/// equal points sit at scale n. A shell collects the energy of quadruples
/// whose two pairs both have scale exactly k; whatever matches across
/// different scales is the mixed term.

#include <map>

#include "znfal/bignum.hpp"
#include "znfal/points.hpp"

namespace znfal {

/// Sum_i (x_i - y_i)^2 mod n. Symmetric. Throws on length mismatch.
Int squared_distance(const Point& x, const Point& y, const Modulus& m);

/// Largest k | n with x = y mod k coordinate-wise; n iff x = y.
Int pair_scale(const Point& x, const Point& y, const Modulus& m);

/// nu[t] = number of ordered pairs (x, y) in E^2 at squared distance t.
/// sum_t nu[t] = |E|^2 and nu[0] >= |E|.
struct DistanceProfile {
    Int n = 0;
    Int set_size = 0;
    std::vector<Int> nu; // dense, length n
};

/// One pass over all ordered pairs, producing the profile together with
/// the per-scale sparse histograms nu^(k). The row range of the pair
/// loop may be partitioned across `threads` workers; partial histograms
/// are merged by addition, so the result is identical for every thread
/// count.
struct PairScan {
    DistanceProfile profile;
    std::map<Int, std::map<Int, Int>> scale_hist; // scale k -> (t -> count)
};
PairScan pair_scan(const PointSet& e, int threads = 1);

DistanceProfile distance_profile(const PointSet& e, int threads = 1);

/// Support of the profile, ascending. Contains 0 for every set.
std::vector<Int> distance_set(const PointSet& e);
std::vector<Int> profile_support(const DistanceProfile& p);

/// sum_t nu(t)^2. Equals the number of quadruples (x,y,z,w) in E^4 with
/// ||x-y||^2 = ||z-w||^2 (mod n); the quadruple loop itself lives only
/// in the test oracles.
BigInt incidence_energy(const PointSet& e, int threads = 1);
BigInt profile_energy(const DistanceProfile& p);

struct EnergyDecomposition {
    BigInt total;
    std::map<Int, BigInt> shells; // divisor k -> shell energy
    BigInt mixed;                 // total - sum of shells, always >= 0
};
EnergyDecomposition energy_shells(const PointSet& e, int threads = 1);
EnergyDecomposition decomposition_from_scan(const PairScan& scan);

/// Exact diagnostic ratios for the near-extremal regime.
struct NearExtremalityReport {
    Rat energy_ratio;          // E_n(E) * n / |E|^4
    Rat distance_density;      // |Delta(E)| / n
    std::string size_exponent; // log|E| / log n, three exact decimals
    Rat ratio_threshold;       // K
    Rat density_threshold;     // C
    bool near_extremal = false;
};
NearExtremalityReport near_extremality_report(const PointSet& e, const Rat& ratio_threshold,
                                              const Rat& density_threshold, int threads = 1);
NearExtremalityReport near_extremality_report(const PointSet& e, int threads = 1);

/// log_n(size) rounded down to 1/1000, printed as "i.fff". Computed by
/// comparing n^k against size^1000 in exact integer arithmetic.
std::string size_exponent_millis(Int size, Int n);

} // namespace znfal
