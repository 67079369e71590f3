#include "znfal/energy.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace znfal {

Int squared_distance(const Point& x, const Point& y, const Modulus& m) {
    ZNFAL_REQUIRE(x.size() == y.size(), "squared_distance: dimension mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int d = mod_reduce(x[i] - y[i], m.n);
        acc = (acc + mul_mod(d, d, m.n)) % m.n;
    }
    return acc;
}

Int pair_scale(const Point& x, const Point& y, const Modulus& m) {
    ZNFAL_REQUIRE(x.size() == y.size(), "pair_scale: dimension mismatch");
    Int g = m.n;
    for (std::size_t i = 0; i < x.size(); ++i) g = gcd_int(g, x[i] - y[i]);
    return g;
}

namespace {

struct PartialScan {
    std::vector<Int> nu;
    std::unordered_map<Int, std::unordered_map<Int, Int>> scale_hist;
};

void scan_rows(const PointSet& e, std::size_t row_begin, std::size_t row_end, PartialScan& out) {
    const Int n = e.mod.n;
    const std::size_t count = e.pts.size();
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const Point& x = e.pts[i];
        for (std::size_t j = 0; j < count; ++j) {
            const Point& y = e.pts[j];
            Int t = 0;
            Int g = n;
            for (int c = 0; c < e.dim; ++c) {
                Int d = x[c] - y[c];
                g = gcd_int(g, d);
                d = mod_reduce(d, n);
                t = (t + mul_mod(d, d, n)) % n;
            }
            ++out.nu[static_cast<std::size_t>(t)];
            ++out.scale_hist[g][t];
        }
    }
}

} // namespace

PairScan pair_scan(const PointSet& e, int threads) {
    ZNFAL_REQUIRE(threads >= 1, "pair_scan: thread count must be positive");
    const std::size_t rows = e.pts.size();
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), rows);

    std::vector<PartialScan> partial(workers);
    for (auto& p : partial) p.nu.assign(static_cast<std::size_t>(e.mod.n), 0);

    if (workers <= 1) {
        scan_rows(e, 0, rows, partial[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = rows * w / workers;
            std::size_t end = rows * (w + 1) / workers;
            pool.emplace_back(scan_rows, std::cref(e), begin, end, std::ref(partial[w]));
        }
        for (auto& t : pool) t.join();
    }

    // Merge by addition: commutative, so independent of scheduling.
    PairScan scan;
    scan.profile.n = e.mod.n;
    scan.profile.set_size = e.size();
    scan.profile.nu.assign(static_cast<std::size_t>(e.mod.n), 0);
    for (const auto& p : partial) {
        for (std::size_t t = 0; t < p.nu.size(); ++t) scan.profile.nu[t] += p.nu[t];
        for (const auto& [k, hist] : p.scale_hist)
            for (const auto& [t, c] : hist) scan.scale_hist[k][t] += c;
    }
    return scan;
}

DistanceProfile distance_profile(const PointSet& e, int threads) {
    return pair_scan(e, threads).profile;
}

std::vector<Int> profile_support(const DistanceProfile& p) {
    std::vector<Int> out;
    for (std::size_t t = 0; t < p.nu.size(); ++t)
        if (p.nu[t] > 0) out.push_back(static_cast<Int>(t));
    return out;
}

std::vector<Int> distance_set(const PointSet& e) {
    return profile_support(distance_profile(e));
}

BigInt profile_energy(const DistanceProfile& p) {
    BigInt acc = 0;
    for (Int c : p.nu)
        if (c != 0) acc += big(c) * big(c);
    return acc;
}

BigInt incidence_energy(const PointSet& e, int threads) {
    return profile_energy(distance_profile(e, threads));
}

EnergyDecomposition decomposition_from_scan(const PairScan& scan) {
    EnergyDecomposition out;
    out.total = profile_energy(scan.profile);
    BigInt shell_sum = 0;
    for (const auto& [k, hist] : scan.scale_hist) {
        BigInt s = 0;
        for (const auto& [t, c] : hist) s += big(c) * big(c);
        out.shells[k] = s;
        shell_sum += s;
    }
    out.mixed = out.total - shell_sum;
    ZNFAL_INVARIANT(out.mixed >= 0, "energy_shells: negative mixed term");
    return out;
}

EnergyDecomposition energy_shells(const PointSet& e, int threads) {
    return decomposition_from_scan(pair_scan(e, threads));
}

std::string size_exponent_millis(Int size, Int n) {
    ZNFAL_INVARIANT(size >= 1 && n >= 2, "size_exponent_millis: bad arguments");
    BigInt target = big_pow(big(size), 1000);
    BigInt power = 1;
    BigInt base = big(n);
    long k = 0;
    while (power * base <= target) {
        power *= base;
        ++k;
    }
    std::string frac = std::to_string(k % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return std::to_string(k / 1000) + "." + frac;
}

NearExtremalityReport near_extremality_report(const PointSet& e, const Rat& ratio_threshold,
                                              const Rat& density_threshold, int threads) {
    DistanceProfile prof = distance_profile(e, threads);
    BigInt energy = profile_energy(prof);
    Int support = static_cast<Int>(profile_support(prof).size());

    NearExtremalityReport rep;
    rep.energy_ratio = make_rat(energy * big(e.mod.n), big_pow(big(e.size()), 4));
    rep.distance_density = make_rat(big(support), big(e.mod.n));
    rep.size_exponent = size_exponent_millis(e.size(), e.mod.n);
    rep.ratio_threshold = ratio_threshold;
    rep.density_threshold = density_threshold;
    rep.near_extremal =
        rep.energy_ratio >= ratio_threshold && rep.distance_density <= density_threshold;
    return rep;
}

NearExtremalityReport near_extremality_report(const PointSet& e, int threads) {
    return near_extremality_report(e, make_rat(2, 1), make_rat(1, 10), threads);
}

} // namespace znfal
