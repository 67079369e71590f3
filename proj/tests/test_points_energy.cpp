#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "znfal/construct.hpp"
#include "znfal/energy.hpp"

using namespace znfal;

namespace {

PointSet set_of(Int n, int d, std::vector<Point> pts) {
    return PointSet::make(factorize(n), d, std::move(pts));
}

} // namespace

TEST_CASE("PointSet canonicalization: reduce, sort, dedup, reject empty") {
    PointSet e = set_of(6, 2, {{7, -1}, {1, 5}, {0, 0}});
    CHECK(e.pts == std::vector<Point>{{0, 0}, {1, 5}});
    CHECK(e.size() == 2);
    CHECK_THROWS_AS(set_of(6, 2, {}), input_error);
    CHECK_THROWS_AS(set_of(6, 2, {{1, 2, 3}}), input_error);
}

TEST_CASE("squared_distance: examples and symmetry") {
    Modulus m6 = factorize(6);
    CHECK(squared_distance({0, 0}, {0, 0}, m6) == 0);
    CHECK(squared_distance({0, 0}, {3, 0}, m6) == 3); // 9 mod 6
    CHECK(squared_distance({1, 0}, {0, 2}, factorize(9)) == 5);
    CHECK_THROWS_AS(squared_distance({0, 0}, {0}, m6), input_error);

    for (Int a = 0; a < 6; ++a)
        for (Int b = 0; b < 6; ++b)
            CHECK(squared_distance({a}, {b}, m6) == squared_distance({b}, {a}, m6));
}

TEST_CASE("pair_scale: examples and divisor properties") {
    Modulus m6 = factorize(6);
    CHECK(pair_scale({3, 0}, {0, 0}, m6) == 3);
    CHECK(pair_scale({2, 3}, {0, 0}, m6) == 1);
    CHECK(pair_scale({4, 1}, {4, 1}, m6) == 6);

    for (Int a = 0; a < 6; ++a)
        for (Int b = 0; b < 6; ++b) {
            Int k = pair_scale({a}, {b}, m6);
            CHECK(6 % k == 0);
            CHECK((k == 6) == (a == b));
            // k is the largest divisor with a = b mod k.
            for (Int cand : divisors(m6))
                if (cand > k) CHECK((a - b) % cand != 0);
        }
}

TEST_CASE("distance_profile: singleton and two-point sets") {
    PointSet single = set_of(6, 1, {{4}});
    DistanceProfile p = distance_profile(single);
    CHECK(p.nu[0] == 1);
    CHECK(profile_energy(p) == 1);

    PointSet pair = set_of(2, 1, {{0}, {1}});
    DistanceProfile pp = distance_profile(pair);
    CHECK(pp.nu == std::vector<Int>{2, 2});
    CHECK(profile_energy(pp) == 8);
    CHECK(incidence_energy(pair) == oracle::quadruple_energy(pair));
}

TEST_CASE("mixed-scale quartet: oracle-adjudicated profile") {
    // The written-up version of this 4-point set states a smaller
    // distance set ({0,4,3}); exhaustive pair enumeration also yields 1
    // (from (2,0) vs (3,0)) and 2 (from (2,0) vs (0,2)), so the frozen
    // regression values below follow the oracle, not the write-up.
    PointSet e = mixed_scale_quartet();
    CHECK(e.size() == 4);

    std::set<Int> delta = oracle::pairwise_distance_set(e);
    CHECK(delta == std::set<Int>{0, 1, 2, 3, 4});
    std::vector<Int> support = distance_set(e);
    CHECK(std::set<Int>(support.begin(), support.end()) == delta);

    DistanceProfile p = distance_profile(e);
    CHECK(p.nu[0] == 4);
    CHECK(p.nu[1] == 4);
    CHECK(p.nu[2] == 2);
    CHECK(p.nu[3] == 2);
    CHECK(p.nu[4] == 4);
    CHECK(profile_energy(p) == 56);
    CHECK(oracle::quadruple_energy(e) == 56);
}

TEST_CASE("profile mass identities on seeded random sets") {
    const Int ns[] = {6, 9, 15, 30};
    for (int trial = 0; trial < 40; ++trial) {
        Modulus m = factorize(ns[trial % 4]);
        int d = 1 + (trial / 4) % 2;
        Int size = std::min<Int>(1 + trial % 11, d == 1 ? m.n : m.n * m.n);
        PointSet e = random_point_set(m, d, size, 900 + static_cast<std::uint64_t>(trial));

        DistanceProfile p = distance_profile(e);
        Int mass = 0;
        for (Int c : p.nu) mass += c;
        CHECK(mass == e.size() * e.size());
        CHECK(p.nu[0] >= e.size());

        std::map<Int, Int> expect = oracle::pairwise_profile(e);
        for (std::size_t t = 0; t < p.nu.size(); ++t) {
            auto it = expect.find(static_cast<Int>(t));
            CHECK(p.nu[t] == (it == expect.end() ? 0 : it->second));
        }
    }
}

TEST_CASE("incidence energy equals the quadruple count on seeded sets") {
    const Int ns[] = {6, 9, 15, 30};
    for (int trial = 0; trial < 32; ++trial) {
        Modulus m = factorize(ns[trial % 4]);
        int d = 1 + (trial / 4) % 2;
        Int size = std::min<Int>(1 + trial % 12, d == 1 ? m.n : m.n * m.n);
        PointSet e = random_point_set(m, d, size, 7000 + static_cast<std::uint64_t>(trial));
        CHECK(incidence_energy(e) == oracle::quadruple_energy(e));
    }
}

TEST_CASE("Cauchy-Schwarz: energy * |Delta| >= |E|^4, exactly") {
    const Int ns[] = {6, 9, 15, 30};
    for (int trial = 0; trial < 40; ++trial) {
        Modulus m = factorize(ns[trial % 4]);
        int d = 1 + trial % 2;
        Int size = std::min<Int>(1 + trial % 12, d == 1 ? m.n : m.n * m.n);
        PointSet e = random_point_set(m, d, size, 31 + static_cast<std::uint64_t>(trial));
        BigInt energy = incidence_energy(e);
        BigInt support = big(static_cast<Int>(distance_set(e).size()));
        CHECK(energy * support >= big_pow(big(e.size()), 4));
    }
}

TEST_CASE("translation leaves the profile unchanged") {
    PointSet e = mixed_scale_quartet();
    for (Point w : std::vector<Point>{{1, 0}, {5, 5}, {3, 2}}) {
        PointSet moved = translate(e, w);
        CHECK(distance_profile(moved).nu == distance_profile(e).nu);
    }
}

TEST_CASE("energy shells: frozen small examples") {
    // Singleton: everything sits in the diagonal shell at scale n.
    PointSet single = set_of(6, 1, {{2}});
    EnergyDecomposition d1 = energy_shells(single);
    CHECK(d1.total == 1);
    CHECK(d1.shells == std::map<Int, BigInt>{{6, BigInt(1)}});
    CHECK(d1.mixed == 0);

    // {0,1} in Z_2: diagonal pairs at scale 2 with t=0, cross pairs at
    // scale 1 with t=1; no distance collision across scales.
    PointSet pair = set_of(2, 1, {{0}, {1}});
    EnergyDecomposition d2 = energy_shells(pair);
    CHECK(d2.total == 8);
    CHECK(d2.shells == std::map<Int, BigInt>{{1, BigInt(4)}, {2, BigInt(4)}});
    CHECK(d2.mixed == 0);

    // {0,3} in Z_6: 3^2 = 9 = 3 mod 6 at scale 3.
    PointSet p03 = set_of(6, 1, {{0}, {3}});
    EnergyDecomposition d3 = energy_shells(p03);
    CHECK(d3.shells == std::map<Int, BigInt>{{3, BigInt(4)}, {6, BigInt(4)}});
    CHECK(d3.mixed == 0);

    // Distance 4 realized at scale 2 (diff (2,0)) and scale 1 (diff
    // (1,3)): nonzero mixed term 2 * (2*4) = 16.
    PointSet mix = set_of(6, 2, {{0, 0}, {2, 0}, {1, 3}});
    EnergyDecomposition d4 = energy_shells(mix);
    CHECK(d4.total == 45);
    CHECK(d4.shells == std::map<Int, BigInt>{{1, BigInt(16)}, {2, BigInt(4)}, {6, BigInt(9)}});
    CHECK(d4.mixed == 16);
}

TEST_CASE("shell decomposition matches the quadruple oracle on seeded sets") {
    const Int ns[] = {6, 9, 12, 30};
    for (int trial = 0; trial < 24; ++trial) {
        Modulus m = factorize(ns[trial % 4]);
        int d = 1 + trial % 2;
        Int size = std::min<Int>(1 + trial % 9, d == 1 ? m.n : m.n * m.n);
        PointSet e = random_point_set(m, d, size, 555 + static_cast<std::uint64_t>(trial));

        EnergyDecomposition dec = energy_shells(e);
        oracle::QuadrupleShells expect = oracle::quadruple_shells(e);
        CHECK(dec.total == expect.total);
        CHECK(dec.mixed == expect.mixed);
        CHECK(dec.shells.size() == expect.shells.size());
        for (const auto& [k, s] : expect.shells) {
            REQUIRE(dec.shells.count(k) == 1);
            CHECK(dec.shells.at(k) == s);
        }

        BigInt shell_sum = 0;
        for (const auto& [k, s] : dec.shells) shell_sum += s;
        CHECK(dec.total == shell_sum + dec.mixed);
    }
}

TEST_CASE("pair_scan is identical across thread counts") {
    PointSet e = random_point_set(factorize(30), 2, 60, 1234);
    PairScan base = pair_scan(e, 1);
    for (int threads : {2, 3, 8}) {
        PairScan other = pair_scan(e, threads);
        CHECK(other.profile.nu == base.profile.nu);
        CHECK(other.scale_hist == base.scale_hist);
    }
}

TEST_CASE("near-extremality report: singleton and quartet") {
    PointSet single = set_of(6, 2, {{1, 2}});
    NearExtremalityReport r = near_extremality_report(single);
    CHECK(r.energy_ratio == make_rat(6, 1)); // E=1, |E|^4=1, ratio = n
    CHECK(r.distance_density == make_rat(1, 6));
    CHECK(r.size_exponent == "0.000");

    PointSet e = mixed_scale_quartet();
    NearExtremalityReport q = near_extremality_report(e);
    CHECK(q.energy_ratio == make_rat(56 * 6, 256)); // 21/16
    CHECK(q.energy_ratio == make_rat(21, 16));
    CHECK(q.distance_density == make_rat(5, 6));
    CHECK_FALSE(q.near_extremal); // density above the 1/10 default
}

TEST_CASE("near-extremality report on full lines, against the oracle") {
    // Whole-space sets are reported, never asserted near-extremal; the
    // exact ratios come from the quadruple oracle.
    for (Int n : {5, 6}) {
        PointSet line = full_space(factorize(n), 1);
        NearExtremalityReport r = near_extremality_report(line);
        BigInt energy = oracle::quadruple_energy(line);
        CHECK(r.energy_ratio == make_rat(energy * big(n), big_pow(big(n), 4)));
        CHECK(r.distance_density ==
              make_rat(static_cast<Int>(oracle::pairwise_distance_set(line).size()), n));
        CHECK(r.size_exponent == "1.000");
    }
    // Z_5 concretely: nu = (5, 10, 0, 0, 10), energy 225, ratio 9/5.
    PointSet z5 = full_space(factorize(5), 1);
    CHECK(near_extremality_report(z5).energy_ratio == make_rat(9, 5));
    CHECK(near_extremality_report(z5).distance_density == make_rat(3, 5));
}

TEST_CASE("distance set of the planted diagonal coset") {
    PointSet c = annihilator_coset(factorize(6), 2, 2, {0, 0}); // {0,3}^2
    std::vector<Int> delta = distance_set(c);
    CHECK(delta == std::vector<Int>{0, 3}); // 9 = 3 and 18 = 0 mod 6
}

TEST_CASE("size exponent fixed-point rendering") {
    CHECK(size_exponent_millis(1, 6) == "0.000");
    CHECK(size_exponent_millis(6, 6) == "1.000");
    CHECK(size_exponent_millis(36, 6) == "2.000");
    // log_9(27) = 1.5 exactly.
    CHECK(size_exponent_millis(27, 9) == "1.500");
    // log_6(4) = 0.7737..., truncated.
    CHECK(size_exponent_millis(4, 6) == "0.773");
}

TEST_CASE("profile at the default modulus cap stays exact") {
    // n close to the CLI cap: the dense profile is 10^6 counters.
    PointSet single = PointSet::make(factorize(999983), 2, {{123456, 654321}});
    DistanceProfile p = distance_profile(single);
    CHECK(p.nu.size() == 999983);
    CHECK(p.nu[0] == 1);
    CHECK(profile_energy(p) == 1);

    PointSet pair = PointSet::make(factorize(1000000), 1, {{0}, {999999}});
    std::vector<Int> delta = distance_set(pair);
    CHECK(delta == std::vector<Int>{0, 1}); // (-1)^2
}

TEST_CASE("set_difference and contains") {
    PointSet e = set_of(6, 1, {{0}, {1}, {2}});
    PointSet f = set_of(6, 1, {{1}});
    PointSet rest = set_difference(e, f);
    CHECK(rest.pts == std::vector<Point>{{0}, {2}});
    CHECK(e.contains({2}));
    CHECK_FALSE(e.contains({3}));
    CHECK_THROWS_AS(set_difference(e, e), input_error); // empty result rejected
}
