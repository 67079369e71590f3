#include "doctest.h"

#include <algorithm>

#include <set>

#include "oracles.hpp"
#include "znfal/construct.hpp"
#include "znfal/poly.hpp"

using namespace znfal;

namespace {

Int isqrt(Int x) {
    Int r = 0;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

MultivariatePoly poly_from_coeffs(Int n, int vars, const std::vector<Monomial>& monomials,
                                  const std::vector<Int>& coeffs) {
    MultivariatePoly f;
    f.n = n;
    f.vars = vars;
    for (std::size_t i = 0; i < monomials.size(); ++i) f.set(monomials[i], coeffs[i]);
    return f;
}

bool vanishes_on(const MultivariatePoly& f, const PointSet& e) {
    for (const Point& p : e.pts)
        if (f.eval(p) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("annihilator_poly: frozen examples") {
    Modulus m6 = factorize(6);
    UnivariatePoly q1 = annihilator_poly({0}, m6);
    CHECK(q1.coeffs == std::vector<Int>{0, 1}); // T

    UnivariatePoly q2 = annihilator_poly({0, 3}, m6);
    CHECK(q2.coeffs == std::vector<Int>{0, 3, 1}); // T^2 + 3T
    CHECK(q2.eval(0) == 0);
    CHECK(q2.eval(3) == 0);

    Modulus m9 = factorize(9);
    UnivariatePoly q3 = annihilator_poly({0, 1, 2}, m9);
    CHECK(q3.coeffs == std::vector<Int>{0, 2, 6, 1}); // T^3 - 3T^2 + 2T mod 9
    CHECK(q3.degree() == 3);

    CHECK_THROWS_AS(annihilator_poly({}, m6), input_error);
}

TEST_CASE("annihilator_poly: monic of degree |S| and vanishing on S") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        Int n = 2 + static_cast<Int>(rng.below(50));
        Modulus m = factorize(n);
        std::set<Int> roots;
        Int count = 1 + static_cast<Int>(rng.below(6));
        for (Int i = 0; i < count; ++i) roots.insert(rng.residue(n));
        std::vector<Int> s(roots.begin(), roots.end());
        UnivariatePoly q = annihilator_poly(s, m);
        CHECK(q.degree() == static_cast<Int>(s.size()));
        CHECK(q.coeffs.back() == 1);
        for (Int r : s) CHECK(q.eval(r) == 0);
    }
}

TEST_CASE("scaled full-residue annihilator vanishes everywhere mod p^2") {
    // Q = prod_{a in F_p}(T - a) hits a multiple of p at every integer,
    // so p*Q(t) = 0 mod p^2 for all t in Z_{p^2}.
    for (Int p : {3, 5, 7}) {
        Modulus m = factorize(p * p);
        std::vector<Int> field;
        for (Int a = 0; a < p; ++a) field.push_back(a);
        UnivariatePoly q = annihilator_poly(field, m);
        CHECK(q.degree() == p);
        for (Int t = 0; t < p * p; ++t) {
            CHECK(q.eval(t) % p == 0);
            CHECK(mul_mod(p, q.eval(t), p * p) == 0);
        }
    }
}

TEST_CASE("psi vanishing: tautological on everything we can build") {
    PsiCheck quartet = psi_vanishing_check(mixed_scale_quartet());
    CHECK(quartet.vanishes);
    CHECK(quartet.annihilator_degree == 5); // |Delta(E)| from the oracle
    CHECK(quartet.pairs_checked == 16);

    PsiCheck lift = psi_vanishing_check(skew_lift_set(3, 2, default_skew_matrix(3, 2)));
    CHECK(lift.vanishes);
    CHECK(lift.annihilator_degree == 6); // |Delta| = 6 here, not p

    const Int ns[] = {6, 9, 15, 30};
    for (int trial = 0; trial < 24; ++trial) {
        Modulus m = factorize(ns[trial % 4]);
        int d = 1 + trial % 2;
        Int size = std::min<Int>(1 + trial % 9, d == 1 ? m.n : m.n * m.n);
        PointSet e = random_point_set(m, d, size, 4000 + static_cast<std::uint64_t>(trial));
        CHECK(psi_vanishing_check(e).vanishes);
    }
}

TEST_CASE("monomials_up_to: counts and graded-lex order") {
    std::vector<Monomial> m1 = monomials_up_to(2, 2);
    CHECK(m1.size() == 6); // C(4,2)
    CHECK(m1.front() == Monomial{0, 0});
    CHECK(m1[1] == Monomial{0, 1}); // degree 1 block in lex order
    CHECK(m1[2] == Monomial{1, 0});
    CHECK(m1.back() == Monomial{2, 0});

    CHECK(monomials_up_to(3, 3).size() == 20); // C(6,3)
    GradedLexLess less;
    std::vector<Monomial> m2 = monomials_up_to(3, 3);
    for (std::size_t i = 1; i < m2.size(); ++i) CHECK(less(m2[i - 1], m2[i]));
}

TEST_CASE("MultivariatePoly: evaluation and zero handling") {
    MultivariatePoly f;
    f.n = 9;
    f.vars = 2;
    f.set({1, 0}, 1);
    f.set({0, 2}, 4);
    f.set({0, 0}, 3);
    CHECK(f.total_degree() == 2);
    CHECK(f.eval({2, 1}) == (2 + 4 + 3) % 9);
    f.set({0, 2}, 0);
    CHECK(f.terms.size() == 2);
    f.set({0, 0}, 9); // reduces to zero and erases
    CHECK(f.terms.size() == 1);
}

TEST_CASE("vanishing_space: rigidity of skew lifts below degree p") {
    PointSet e32 = skew_lift_set(3, 2, default_skew_matrix(3, 2));
    for (int deg = 0; deg < 3; ++deg) CHECK(vanishing_space(e32, deg).basis.empty());
    VanishingBasis vb = vanishing_space(e32, 2);
    CHECK(vb.basis.empty());
    CHECK(vb.complete);
    CHECK_FALSE(vb.degree_warning);

    PointSet e52 = skew_lift_set(5, 2, default_skew_matrix(5, 2));
    for (int deg = 0; deg < 5; ++deg) CHECK(vanishing_space(e52, deg).basis.empty());

    // The canonical (untwisted) lift of the full plane is equally rigid.
    SkewMatrix zero{3, 2, {{0, 0}, {0, 0}}};
    CHECK(vanishing_space(skew_lift_set(3, 2, zero), 2).basis.empty());

    // At D = p the uniqueness argument is gone and the module is
    // nontrivial (p * (T^p - T)-type relations exist); flagged.
    VanishingBasis warn = vanishing_space(e32, 3);
    CHECK(warn.degree_warning);
    CHECK_FALSE(warn.basis.empty());
}

TEST_CASE("vanishing_space: planted hyperplane over Z_9^2") {
    std::vector<Point> pts;
    for (Int y = 0; y < 9; ++y) pts.push_back({0, y});
    PointSet e = PointSet::make(factorize(9), 2, std::move(pts));
    VanishingBasis vb = vanishing_space(e, 1);
    REQUIRE_FALSE(vb.basis.empty());

    MultivariatePoly x1;
    x1.n = 9;
    x1.vars = 2;
    x1.set({1, 0}, 1);
    CHECK(vanishing_space_contains(vb, x1));

    MultivariatePoly x2;
    x2.n = 9;
    x2.vars = 2;
    x2.set({0, 1}, 1);
    CHECK_FALSE(vanishing_space_contains(vb, x2));

    for (const MultivariatePoly& f : vb.basis) CHECK(vanishes_on(f, e));
}

TEST_CASE("vanishing_space: exhaustive module equality on tiny instances") {
    struct Instance {
        Int n;
        int d;
        int degree;
        std::vector<Point> pts;
    };
    const Instance instances[] = {
        {9, 2, 1, {{0, 0}, {0, 3}, {0, 6}}},
        {9, 1, 2, {{0}, {3}}},
        {6, 1, 2, {{0}, {3}}},
        {6, 2, 1, {{1, 1}, {4, 4}}},
        {12, 1, 1, {{0}, {6}}},
        {4, 1, 2, {{0}, {2}}},
        {8, 1, 2, {{0}, {4}}},  // three descent levels
        {8, 1, 2, {{0}, {2}}},  // mixed pivot valuations: x^2-2x and 4x
        {27, 1, 1, {{0}, {9}}},
    };
    for (const Instance& inst : instances) {
        PointSet e = PointSet::make(factorize(inst.n), inst.d, inst.pts);
        VanishingBasis vb = vanishing_space(e, inst.degree);
        std::vector<Monomial> mons = monomials_up_to(inst.d, inst.degree);

        // Walk every coefficient vector mod n and compare the definition
        // against the membership test.
        std::vector<Int> coeffs(mons.size(), 0);
        for (;;) {
            MultivariatePoly f = poly_from_coeffs(inst.n, inst.d, mons, coeffs);
            bool direct = vanishes_on(f, e);
            bool member = vanishing_space_contains(vb, f);
            CHECK(direct == member);

            std::size_t i = 0;
            while (i < coeffs.size() && ++coeffs[i] == inst.n) coeffs[i++] = 0;
            if (i == coeffs.size()) break;
        }
    }
}

TEST_CASE("vanishing_space: soundness on seeded sets, composite moduli included") {
    const Int ns[] = {6, 9, 12, 30};
    for (int trial = 0; trial < 16; ++trial) {
        PointSet e = random_point_set(factorize(ns[trial % 4]), 1 + trial % 2, 1 + trial % 6,
                                      1300 + static_cast<std::uint64_t>(trial));
        VanishingBasis vb = vanishing_space(e, 2);
        for (const MultivariatePoly& f : vb.basis) {
            CHECK_FALSE(f.is_zero());
            CHECK(vanishes_on(f, e));
            CHECK(vanishing_space_contains(vb, f));
        }
    }
}

TEST_CASE("vanishing_space: planted polynomial is recovered") {
    // Plant a polynomial, take points from its zero set, and require
    // membership of the plant in the computed module.
    struct Plant {
        Int n;
        int d;
        int degree;
    };
    const Plant plants[] = {{9, 2, 2}, {6, 2, 2}, {25, 1, 2}, {9, 1, 3}};
    Rng rng(5150);
    for (const Plant& plant : plants) {
        std::vector<Monomial> mons = monomials_up_to(plant.d, plant.degree);
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::vector<Int> coeffs(mons.size());
            for (Int& c : coeffs) c = rng.residue(plant.n);
            MultivariatePoly f = poly_from_coeffs(plant.n, plant.d, mons, coeffs);
            if (f.is_zero()) continue;

            std::vector<Point> zeros;
            PointSet space = full_space(factorize(plant.n), plant.d);
            for (const Point& p : space.pts)
                if (f.eval(p) == 0) zeros.push_back(p);
            if (zeros.empty()) continue;

            PointSet e = PointSet::make(factorize(plant.n), plant.d, zeros);
            VanishingBasis vb = vanishing_space(e, plant.degree);
            CHECK(vanishing_space_contains(vb, f));
        }
    }
}

TEST_CASE("vanishing_space: budget and threshold reporting") {
    PointSet e = PointSet::make(factorize(9), 2, {{0, 0}, {1, 2}});
    CHECK_THROWS_AS(vanishing_space(e, 90, 100), budget_error);

    VanishingBasis vb = vanishing_space(e, 1);
    CHECK(vb.degree_power_threshold == 1); // 1^2
    CHECK(vb.set_exceeds_threshold);       // |E| = 2 > 1
    REQUIRE(vb.local_threshold.size() == 1);
    CHECK(vb.local_threshold[0].first == 9);
    CHECK(vb.local_threshold[0].second); // |E_9|^2 = 4 > D*p = 3
}

TEST_CASE("schwartz-zippel: exhaustive exact fractions") {
    // Linear polynomial over F_5^2: the zero set is a line, 5 of 25.
    MultivariatePoly line;
    line.n = 5;
    line.vars = 2;
    line.set({1, 0}, 1);
    line.set({0, 1}, 3);
    SZReport rep = schwartz_zippel_report(line, 100, 7);
    CHECK(rep.exhaustive);
    CHECK(rep.samples == 25);
    CHECK(rep.observed == make_rat(1, 5));
    CHECK(rep.bound == make_rat(1, 5));

    // Zero polynomial: everything vanishes; excluded from assertions.
    MultivariatePoly zero;
    zero.n = 5;
    zero.vars = 2;
    SZReport zr = schwartz_zippel_report(zero, 100, 7);
    CHECK(zr.observed == make_rat(1, 1));

    // Random quadratics stay within the D/p bound exhaustively.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        MultivariatePoly f = random_multivariate_poly(5, 2, 2, seed);
        SZReport r = schwartz_zippel_report(f, 100, seed);
        CHECK(r.exhaustive);
        CHECK(r.observed <= r.bound);
    }
    CHECK_THROWS_AS(schwartz_zippel_report(line, 0, 1), input_error);

    MultivariatePoly composite;
    composite.n = 6;
    composite.vars = 1;
    composite.set({1}, 1);
    CHECK_THROWS_AS(schwartz_zippel_report(composite, 10, 1), input_error);
}

TEST_CASE("schwartz-zippel: seeded sampling stays near the bound") {
    // p^d = 101^2 exceeds the budget, so this goes through the sampler.
    MultivariatePoly f = random_multivariate_poly(101, 2, 2, 99);
    SZReport rep = schwartz_zippel_report(f, 2000, 1234);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.samples == 2000);
    // zeros <= samples * D / p + 3 sigma, all in integers.
    Int slack = 3 * isqrt(rep.samples) + 1;
    CHECK(rep.zeros * rep.p <= rep.degree * rep.samples + slack * rep.p);
    SZReport again = schwartz_zippel_report(f, 2000, 1234);
    CHECK(again.zeros == rep.zeros); // same seed, same draw
}

TEST_CASE("skew-lift identity checks") {
    TwistChecks ok = skew_lift_identity_checks(3, default_skew_matrix(3, 2));
    CHECK(ok.skew);
    CHECK(ok.isotropic_form);
    CHECK(ok.distance_identity);
    CHECK(ok.vectors_exhaustive);
    CHECK(ok.pairs_exhaustive);
    CHECK(ok.vectors_checked == 9);
    CHECK(ok.pairs_checked == 81);

    SkewMatrix zero{3, 2, {{0, 0}, {0, 0}}};
    TwistChecks degenerate = skew_lift_identity_checks(3, zero);
    CHECK(degenerate.skew);
    CHECK(degenerate.isotropic_form);
    CHECK(degenerate.distance_identity);

    SkewMatrix identity{3, 2, {{1, 0}, {0, 1}}};
    TwistChecks bad = skew_lift_identity_checks(3, identity);
    CHECK_FALSE(bad.skew);
    CHECK_FALSE(bad.isotropic_form); // <e1, e1> = 1

    CHECK_THROWS_AS(skew_lift_identity_checks(2, SkewMatrix{2, 2, {{0, 1}, {1, 0}}}),
                    input_error);

    // Forced sampling path: budget below p^d.
    TwistChecks sampled = skew_lift_identity_checks(5, default_skew_matrix(5, 3), 10, 500, 42);
    CHECK_FALSE(sampled.vectors_exhaustive);
    CHECK_FALSE(sampled.pairs_exhaustive);
    CHECK(sampled.vectors_checked == 500);
    CHECK(sampled.pairs_checked == 500);
    CHECK(sampled.isotropic_form);
    CHECK(sampled.distance_identity);
}
