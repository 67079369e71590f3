#pragma once

/// CRT transport of point sets: projections onto the prime-power
/// components of Z_n, fiber statistics, per-component energy ratios,
/// Cartesian products under the CRT isomorphism, and lifting of
/// per-prime constraint sets back to Z_n^d.
///
/// Components are always the maximal prime-power divisors q = p^a of n;
/// projection reduces coordinates mod q and deduplicates. The product /
/// lifting operations are defined for square-free n only (each component
/// a prime field); projections and diagnostics work for any n.

#include <map>
#include <optional>

#include "znfal/energy.hpp"
#include "znfal/points.hpp"

namespace znfal {

/// A deduplicated projection E_q of a parent set into Z_q^d, q = p^a.
struct LocalSet {
    Int q = 0;
    Int p = 0;
    int exponent = 1;
    int dim = 0;
    std::vector<Point> pts; // sorted, unique, reduced mod q

    Int size() const { return static_cast<Int>(pts.size()); }
    PointSet to_point_set() const;
    static LocalSet make(Int q, int dim, std::vector<Point> points);
};

/// Reduction of E mod q, deduplicated. q must be a maximal prime-power
/// divisor of n (p^a || n).
LocalSet project(const PointSet& e, Int q);

/// All component projections, in prime order.
std::vector<LocalSet> all_projections(const PointSet& e);

/// Fiber structure of the projection onto the q-component.
struct FiberStats {
    Int q = 0;
    Int max_multiplicity = 0;       // M = largest fiber of pi_q on E
    std::map<Int, Int> histogram;   // fiber size -> number of fibers
    Rat uniform_core_fraction;      // largest dyadic band [2^j, 2^{j+1}) share of |E|
};
FiberStats fiber_stats(const PointSet& e, Int q);

/// Exact energy ratios rho_q = E_q(E_q) * q / |E_q|^4 per component,
/// next to the global ratio. For CRT product sets the component ratios
/// multiply to the global one.
struct LocalEnergyRatios {
    std::vector<std::pair<Int, Rat>> per_component; // (q, rho_q), prime order
    Rat global;
};
LocalEnergyRatios local_energy_ratios(const PointSet& e);

/// CRT product of one local set per component: coordinates combined by
/// crt_combine over the full Cartesian product. |E| = prod |A_i|.
PointSet product_set(const std::vector<LocalSet>& locals, Int max_points = 2000000);

/// Both sides of the product-energy identity: for square-free n and a
/// CRT product set, the global energy is exactly the product of the
/// component energies. Refuses non-square-free moduli, where the
/// identity is not available.
struct ProductEnergyCheck {
    BigInt global;          // E_n(product)
    BigInt component_product; // prod E_p(A_p)
    bool equal = false;
};
ProductEnergyCheck verify_product_energy(const std::vector<LocalSet>& locals,
                                         Int max_points = 2000000);

/// Per-prime constraint sets V_p, one per prime factor of a square-free
/// modulus, each a nonempty explicit point list in F_p^d.
struct LocalConstraints {
    std::vector<LocalSet> constraints;
    std::optional<int> degree_hint;
};

/// All x in Z_n^d whose every projection lies in its constraint set;
/// equals the CRT product of the V_p, of size prod |V_p|. Square-free
/// moduli only.
PointSet lift_constraints(const LocalConstraints& packet, const Modulus& m, int dim,
                          Int max_points = 2000000);

/// Local distance-set sizes and densities, with the product of the
/// "heavy" components' sizes reported next to |Delta(E)|^2 for manual
/// inspection. Diagnostic only; nothing here is asserted.
struct LocalDistanceDiagnostics {
    struct Component {
        Int q = 0;
        Int local_size = 0;          // |E_q|
        Int distance_set_size = 0;   // |Delta(E_q)|
        Rat density;                 // |Delta(E_q)| / q
        bool heavy = false;          // density >= heavy_threshold
    };
    std::vector<Component> components;
    Int global_distance_set_size = 0;
    BigInt global_square;        // |Delta(E)|^2
    BigInt heavy_product;        // prod over heavy components of |Delta(E_q)|
    Rat heavy_threshold;
};
LocalDistanceDiagnostics local_distance_diagnostics(const PointSet& e,
                                                    const Rat& heavy_threshold = make_rat(1, 2));

/// Reported two-sided check of the fiber bound
///   E_n(E) <= M^4 * prod_q E_q(E_q),
/// with M the largest per-component fiber multiplicity. Both sides are
/// exact; the inequality is a consequence of E embedding into the
/// product of its projections.
struct FiberEnergyBound {
    BigInt lhs;          // E_n(E)
    BigInt rhs;          // M^4 * prod of component energies
    Int max_multiplicity = 0;
    bool holds = false;
};
FiberEnergyBound fiber_energy_bound(const PointSet& e);

} // namespace znfal
