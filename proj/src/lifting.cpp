#include "znfal/lifting.hpp"

#include <algorithm>
#include <string>

namespace znfal {

PointSet LocalSet::to_point_set() const {
    return PointSet::make(factorize(q), dim, pts);
}

LocalSet LocalSet::make(Int q, int dim, std::vector<Point> points) {
    Modulus qm = factorize(q);
    ZNFAL_REQUIRE(qm.factors.size() == 1, "LocalSet: q must be a prime power");
    PointSet canon = PointSet::make(qm, dim, std::move(points));
    return LocalSet{q, qm.factors[0].first, qm.factors[0].second, dim, std::move(canon.pts)};
}

LocalSet project(const PointSet& e, Int q) {
    bool maximal = false;
    for (std::size_t i = 0; i < e.mod.factors.size(); ++i)
        if (e.mod.prime_power(i) == q) maximal = true;
    ZNFAL_REQUIRE(maximal, "project: q = " + std::to_string(q) +
                               " is not a maximal prime-power divisor of n = " +
                               std::to_string(e.mod.n));
    std::vector<Point> reduced = e.pts;
    for (Point& p : reduced)
        for (Int& c : p) c %= q;
    return LocalSet::make(q, e.dim, std::move(reduced));
}

std::vector<LocalSet> all_projections(const PointSet& e) {
    std::vector<LocalSet> out;
    for (Int q : e.mod.prime_powers()) out.push_back(project(e, q));
    return out;
}

FiberStats fiber_stats(const PointSet& e, Int q) {
    project(e, q); // validates q
    std::map<Point, Int> fibers;
    for (const Point& p : e.pts) {
        Point r = p;
        for (Int& c : r) c %= q;
        ++fibers[r];
    }
    FiberStats st;
    st.q = q;
    for (const auto& [r, count] : fibers) {
        st.max_multiplicity = std::max(st.max_multiplicity, count);
        ++st.histogram[count];
    }

    // Dyadic bands [2^j, 2^{j+1}): fibers within one band differ by less
    // than a factor of 2. The core is the heaviest band.
    std::map<int, Int> band_points;
    for (const auto& [size, count] : st.histogram) {
        int j = 0;
        while ((Int{2} << j) <= size) ++j; // size in [2^j, 2^{j+1})
        band_points[j] += size * count;
    }
    Int best = 0;
    for (const auto& [j, pts] : band_points) best = std::max(best, pts);
    st.uniform_core_fraction = make_rat(best, e.size());
    return st;
}

namespace {

Rat energy_ratio(const PointSet& e) {
    return make_rat(incidence_energy(e) * big(e.mod.n), big_pow(big(e.size()), 4));
}

} // namespace

LocalEnergyRatios local_energy_ratios(const PointSet& e) {
    LocalEnergyRatios out;
    for (const LocalSet& local : all_projections(e))
        out.per_component.emplace_back(local.q, energy_ratio(local.to_point_set()));
    out.global = energy_ratio(e);
    return out;
}

PointSet product_set(const std::vector<LocalSet>& locals, Int max_points) {
    ZNFAL_REQUIRE(!locals.empty(), "product_set: no components");
    Int n = 1;
    int dim = locals.front().dim;
    BigInt total = 1;
    for (const LocalSet& l : locals) {
        ZNFAL_REQUIRE(l.dim == dim, "product_set: mixed dimensions");
        n *= l.q;
        total *= big(l.size());
    }
    Modulus m = factorize(n);
    ZNFAL_REQUIRE(m.factors.size() == locals.size(),
                  "product_set: components must have pairwise distinct primes");
    std::vector<Int> powers = m.prime_powers();
    // Re-order the inputs to prime order and check coverage.
    std::vector<const LocalSet*> comp(locals.size(), nullptr);
    for (const LocalSet& l : locals) {
        auto it = std::find(powers.begin(), powers.end(), l.q);
        ZNFAL_REQUIRE(it != powers.end(), "product_set: component moduli are inconsistent");
        comp[static_cast<std::size_t>(it - powers.begin())] = &l;
    }
    if (total > big(max_points)) throw budget_error("product_set: product size exceeds the point budget");

    std::vector<Point> pts;
    std::vector<std::size_t> idx(comp.size(), 0);
    std::vector<Int> residues(comp.size());
    for (;;) {
        Point pt(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) {
            for (std::size_t i = 0; i < comp.size(); ++i)
                residues[i] = comp[i]->pts[idx[i]][static_cast<std::size_t>(c)];
            pt[static_cast<std::size_t>(c)] = crt_combine(residues, m);
        }
        pts.push_back(std::move(pt));

        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == comp[i]->pts.size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    PointSet out = PointSet::make(std::move(m), dim, std::move(pts));
    ZNFAL_INVARIANT(big(out.size()) == total, "product_set: CRT product size mismatch");
    return out;
}

ProductEnergyCheck verify_product_energy(const std::vector<LocalSet>& locals, Int max_points) {
    for (const LocalSet& l : locals)
        ZNFAL_REQUIRE(l.exponent == 1,
                      "verify_product_energy: modulus must be square-free; component " +
                          std::to_string(l.q) + " is a higher prime power");
    PointSet prod = product_set(locals, max_points);
    ProductEnergyCheck check;
    check.global = incidence_energy(prod);
    check.component_product = 1;
    for (const LocalSet& l : locals) check.component_product *= incidence_energy(l.to_point_set());
    check.equal = check.global == check.component_product;
    return check;
}

PointSet lift_constraints(const LocalConstraints& packet, const Modulus& m, int dim,
                          Int max_points) {
    ZNFAL_REQUIRE(m.squarefree, "lift_constraints: defined for square-free moduli only");
    ZNFAL_REQUIRE(packet.constraints.size() == m.factors.size(),
                  "lift_constraints: one constraint set per prime factor required");
    for (const LocalSet& v : packet.constraints) {
        ZNFAL_REQUIRE(v.dim == dim, "lift_constraints: constraint dimension mismatch");
        ZNFAL_REQUIRE(!v.pts.empty(), "lift_constraints: empty constraint set");
    }
    PointSet lifted = product_set(packet.constraints, max_points);
    ZNFAL_REQUIRE(lifted.mod.n == m.n, "lift_constraints: constraint moduli do not multiply to n");
    return lifted;
}

LocalDistanceDiagnostics local_distance_diagnostics(const PointSet& e, const Rat& heavy_threshold) {
    LocalDistanceDiagnostics diag;
    diag.heavy_threshold = heavy_threshold;
    diag.heavy_product = 1;
    for (const LocalSet& local : all_projections(e)) {
        LocalDistanceDiagnostics::Component c;
        c.q = local.q;
        c.local_size = local.size();
        c.distance_set_size = static_cast<Int>(distance_set(local.to_point_set()).size());
        c.density = make_rat(c.distance_set_size, local.q);
        c.heavy = c.density >= heavy_threshold;
        if (c.heavy) diag.heavy_product *= big(c.distance_set_size);
        diag.components.push_back(std::move(c));
    }
    diag.global_distance_set_size = static_cast<Int>(distance_set(e).size());
    diag.global_square = big(diag.global_distance_set_size) * big(diag.global_distance_set_size);
    return diag;
}

FiberEnergyBound fiber_energy_bound(const PointSet& e) {
    FiberEnergyBound out;
    out.lhs = incidence_energy(e);
    out.rhs = 1;
    out.max_multiplicity = 1;
    for (Int q : e.mod.prime_powers()) {
        out.max_multiplicity = std::max(out.max_multiplicity, fiber_stats(e, q).max_multiplicity);
        out.rhs *= incidence_energy(project(e, q).to_point_set());
    }
    out.rhs *= big_pow(big(out.max_multiplicity), 4);
    out.holds = out.lhs <= out.rhs;
    return out;
}

} // namespace znfal
