#include "znfal/poly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "znfal/construct.hpp"

namespace znfal {

// -----------------------------------------------------------------------
// Univariate
// -----------------------------------------------------------------------

Int UnivariatePoly::eval(Int t) const {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = (mul_mod(acc, mod_reduce(t, n), n) + *it) % n;
    return acc;
}

UnivariatePoly UnivariatePoly::make(Int n, std::vector<Int> coeffs) {
    ZNFAL_REQUIRE(n >= 2, "UnivariatePoly: modulus must be at least 2");
    for (Int& c : coeffs) c = mod_reduce(c, n);
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    if (coeffs.empty()) coeffs.push_back(0);
    return UnivariatePoly{n, std::move(coeffs)};
}

UnivariatePoly annihilator_poly(const std::vector<Int>& s, const Modulus& m) {
    ZNFAL_REQUIRE(!s.empty(), "annihilator_poly: empty root set");
    std::vector<Int> roots = s;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<Int> coeffs{1}; // running product, monic
    for (Int r : roots) {
        Int neg = mod_reduce(-r, m.n);
        std::vector<Int> next(coeffs.size() + 1, 0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = (next[i + 1] + coeffs[i]) % m.n;
            next[i] = (next[i] + mul_mod(coeffs[i], neg, m.n)) % m.n;
        }
        coeffs = std::move(next);
    }
    UnivariatePoly q{m.n, std::move(coeffs)};
    ZNFAL_INVARIANT(q.coeffs.back() == 1 % m.n, "annihilator_poly: lost monicity");
    return q;
}

// -----------------------------------------------------------------------
// Multivariate
// -----------------------------------------------------------------------

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    int ta = std::accumulate(a.begin(), a.end(), 0);
    int tb = std::accumulate(b.begin(), b.end(), 0);
    if (ta != tb) return ta < tb;
    return a < b;
}

std::vector<Monomial> monomials_up_to(int vars, int max_degree) {
    ZNFAL_REQUIRE(vars >= 1 && max_degree >= 0, "monomials_up_to: bad arguments");
    std::vector<Monomial> out;
    Monomial cur(static_cast<std::size_t>(vars), 0);
    // Enumerate all exponent vectors with sum <= max_degree, then sort.
    for (;;) {
        if (std::accumulate(cur.begin(), cur.end(), 0) <= max_degree) out.push_back(cur);
        int i = 0;
        while (i < vars && ++cur[static_cast<std::size_t>(i)] > max_degree)
            cur[static_cast<std::size_t>(i++)] = 0;
        if (i == vars) break;
    }
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

int MultivariatePoly::total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms)
        best = std::max(best, std::accumulate(m.begin(), m.end(), 0));
    return best;
}

Int MultivariatePoly::eval(const Point& x) const {
    ZNFAL_REQUIRE(static_cast<int>(x.size()) == vars, "MultivariatePoly::eval: arity mismatch");
    Int acc = 0;
    for (const auto& [m, c] : terms) {
        Int term = c;
        for (int v = 0; v < vars; ++v) {
            Int base = mod_reduce(x[static_cast<std::size_t>(v)], n);
            for (int e = 0; e < m[static_cast<std::size_t>(v)]; ++e) term = mul_mod(term, base, n);
        }
        acc = (acc + term) % n;
    }
    return acc;
}

void MultivariatePoly::set(const Monomial& m, Int coeff) {
    ZNFAL_REQUIRE(static_cast<int>(m.size()) == vars, "MultivariatePoly::set: arity mismatch");
    coeff = mod_reduce(coeff, n);
    if (coeff == 0)
        terms.erase(m);
    else
        terms[m] = coeff;
}

MultivariatePoly random_multivariate_poly(Int p, int vars, int degree, std::uint64_t seed) {
    ZNFAL_REQUIRE(degree >= 0, "random_multivariate_poly: negative degree");
    std::vector<Monomial> basis = monomials_up_to(vars, degree);
    Rng rng(seed);
    for (;;) {
        MultivariatePoly f;
        f.n = p;
        f.vars = vars;
        for (const Monomial& m : basis) f.set(m, rng.residue(p));
        if (f.total_degree() == degree) return f;
    }
}

// -----------------------------------------------------------------------
// Distance annihilator
// -----------------------------------------------------------------------

PsiCheck psi_vanishing_check(const PointSet& e) {
    std::vector<Int> delta = distance_set(e);
    UnivariatePoly q = annihilator_poly(delta, e.mod);

    PsiCheck out;
    out.annihilator_degree = q.degree();
    out.vanishes = true;
    for (const Point& x : e.pts)
        for (const Point& y : e.pts) {
            ++out.pairs_checked;
            if (q.eval(squared_distance(x, y, e.mod)) != 0) out.vanishes = false;
        }
    return out;
}

// -----------------------------------------------------------------------
// Vanishing module: kernels over Z_{p^a}
// -----------------------------------------------------------------------

namespace {

Int pow_int(Int b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int valuation(Int x, Int p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

using Row = std::vector<Int>;

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](Int x) { return x == 0; });
}

/// Canonical Howell form of the row module spanned by `rows` in (Z_q)^N,
/// q = p^a. Row operations preserve the module; shadow rows p^(a-v) * r
/// are appended whenever a pivot has positive valuation so that the
/// leading-entry membership test below is exact.
std::vector<Row> howell_form(std::vector<Row> work, Int p, int a, Int q) {
    std::vector<Row> result;
    std::vector<Int> pivot_val;
    std::vector<std::size_t> pivot_col;
    if (work.empty()) return result;
    const std::size_t cols = work[0].size();

    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t best = work.size();
        int best_v = a;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work[i][col] == 0) continue;
            int v = valuation(work[i][col], p, a);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == work.size()) continue;

        Row row = std::move(work[best]);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
        Int pv = pow_int(p, best_v);
        Int unit = row[col] / pv; // coprime to p
        Int inv = inv_mod(mod_reduce(unit, q), q);
        for (Int& x : row) x = mul_mod(x, inv, q);
        ZNFAL_INVARIANT(row[col] == pv, "howell_form: pivot normalization failed");

        for (Row& w : work) {
            if (w[col] == 0) continue;
            Int factor = w[col] / pv; // valuation(w[col]) >= best_v by minimality
            for (std::size_t c = 0; c < cols; ++c)
                w[c] = mod_reduce(w[c] - mul_mod(factor, row[c], q), q);
        }
        if (best_v > 0) {
            Row shadow(cols);
            Int mult = pow_int(p, a - best_v);
            for (std::size_t c = 0; c < cols; ++c) shadow[c] = mul_mod(mult, row[c], q);
            if (!row_is_zero(shadow)) work.push_back(std::move(shadow));
        }
        result.push_back(std::move(row));
        pivot_val.push_back(pv);
        pivot_col.push_back(col);

        work.erase(std::remove_if(work.begin(), work.end(), row_is_zero), work.end());
        if (work.empty()) break;
    }

    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t i = 0; i < result.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Int t = result[j][pivot_col[i]] / pivot_val[i];
            if (t == 0) continue;
            for (std::size_t c = 0; c < cols; ++c)
                result[j][c] = mod_reduce(result[j][c] - mul_mod(t, result[i][c], q), q);
        }
    return result;
}

/// Exact membership of y in the row module presented in Howell form.
bool howell_contains(const std::vector<Row>& howell, Row y, Int p, int a, Int q) {
    for (const Row& row : howell) {
        std::size_t col = 0;
        while (col < row.size() && row[col] == 0) ++col;
        ZNFAL_INVARIANT(col < row.size(), "howell_contains: zero row in canonical form");
        if (y[col] == 0) continue;
        Int pv = row[col];
        if (valuation(y[col], p, a) < valuation(pv, p, a)) return false;
        Int factor = y[col] / pv;
        for (std::size_t c = 0; c < y.size(); ++c)
            y[c] = mod_reduce(y[c] - mul_mod(factor, row[c], q), q);
    }
    return row_is_zero(y);
}

/// Reduced-echelon nullspace basis of a matrix over F_p (columns =
/// unknowns). Deterministic.
std::vector<Row> nullspace_mod_p(std::vector<Row> m, Int p, std::size_t cols) {
    std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t i = rank; i < m.size(); ++i)
            if (m[i][col] % p != 0) {
                sel = i;
                break;
            }
        if (sel == SIZE_MAX) continue;
        std::swap(m[rank], m[sel]);
        Int inv = inv_mod(mod_reduce(m[rank][col], p), p);
        for (std::size_t c = 0; c < cols; ++c) m[rank][c] = mul_mod(mod_reduce(m[rank][c], p), inv, p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] % p == 0) continue;
            Int f = mod_reduce(m[i][col], p);
            for (std::size_t c = 0; c < cols; ++c)
                m[i][c] = mod_reduce(m[i][c] - f * m[rank][c], p);
        }
        pivot_of_col[col] = rank;
        ++rank;
    }

    std::vector<Row> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] != SIZE_MAX) continue;
        Row v(cols, 0);
        v[col] = 1;
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] != SIZE_MAX)
                v[c] = mod_reduce(-m[pivot_of_col[c]][col], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Generating set (Howell form) of {c in (Z_q)^N : M c = 0 mod q},
/// q = p^a, by level descent: generators of the mod-p^s solutions are
/// combined through the F_p-kernel of their residuals divided by p^s,
/// and augmented with their own p-multiples.
std::vector<Row> kernel_mod_prime_power(const std::vector<Row>& eval_rows, std::size_t ncols,
                                        Int p, int a) {
    const Int q = pow_int(p, a);
    std::vector<Row> gens(ncols);
    for (std::size_t i = 0; i < ncols; ++i) {
        gens[i].assign(ncols, 0);
        gens[i][i] = 1;
    }

    for (int level = 0; level < a; ++level) {
        const Int ps = pow_int(p, level);
        // Residual columns h_i = (M g_i) / p^level mod p.
        std::vector<Row> h(eval_rows.size(), Row(gens.size(), 0));
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            for (std::size_t r = 0; r < eval_rows.size(); ++r) {
                Int acc = 0;
                for (std::size_t c = 0; c < ncols; ++c)
                    acc = (acc + mul_mod(eval_rows[r][c], gens[gi][c], q)) % q;
                ZNFAL_INVARIANT(acc % ps == 0, "kernel descent: residual valuation too small");
                h[r][gi] = (acc / ps) % p;
            }

        std::vector<Row> combos = nullspace_mod_p(std::move(h), p, gens.size());

        std::vector<Row> next;
        for (const Row& t : combos) {
            Row u(ncols, 0);
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                if (t[gi] == 0) continue;
                for (std::size_t c = 0; c < ncols; ++c)
                    u[c] = (u[c] + mul_mod(t[gi], gens[gi][c], q)) % q;
            }
            if (!row_is_zero(u)) next.push_back(std::move(u));
        }
        for (const Row& g : gens) {
            Row pg(ncols);
            for (std::size_t c = 0; c < ncols; ++c) pg[c] = mul_mod(p, g[c], q);
            if (!row_is_zero(pg)) next.push_back(std::move(pg));
        }
        gens = howell_form(std::move(next), p, a, q);
        if (gens.empty()) break;
    }
    return gens;
}

} // namespace

VanishingBasis vanishing_space(const PointSet& e, int degree_bound, Int max_monomials) {
    ZNFAL_REQUIRE(degree_bound >= 0, "vanishing_space: negative degree bound");
    VanishingBasis vb;
    vb.n = e.mod.n;
    vb.vars = e.dim;
    vb.degree_bound = degree_bound;
    // C(D + d, d) monomial columns; check before enumerating anything.
    BigInt count = 1;
    for (int i = 1; i <= e.dim; ++i) count = count * big(degree_bound + i) / big(i);
    if (count > big(max_monomials))
        throw budget_error("vanishing_space: " + count.get_str() +
                           " monomials exceed the budget of " + std::to_string(max_monomials));
    vb.monomials = monomials_up_to(e.dim, degree_bound);
    const std::size_t ncols = vb.monomials.size();

    for (std::size_t fi = 0; fi < e.mod.factors.size(); ++fi) {
        auto [p, a] = e.mod.factors[fi];
        const Int q = e.mod.prime_power(fi);
        if (degree_bound >= p) vb.degree_warning = true;

        // Monomial evaluation matrix mod q, one row per point.
        std::vector<Row> rows(e.pts.size(), Row(ncols, 0));
        for (std::size_t r = 0; r < e.pts.size(); ++r)
            for (std::size_t c = 0; c < ncols; ++c) {
                Int val = 1;
                for (int v = 0; v < e.dim; ++v) {
                    Int base = e.pts[r][static_cast<std::size_t>(v)] % q;
                    for (int k = 0; k < vb.monomials[c][static_cast<std::size_t>(v)]; ++k)
                        val = mul_mod(val, base, q);
                }
                rows[r][c] = val;
            }

        VanishingBasis::Component comp;
        comp.q = q;
        comp.p = p;
        comp.exponent = a;
        comp.howell = kernel_mod_prime_power(rows, ncols, p, a);
        vb.components.push_back(std::move(comp));
    }

    // Recombine: scale each component generator by the CRT idempotent
    // that is 1 mod its own q and 0 mod the others.
    for (const auto& comp : vb.components) {
        Int idem = 1;
        if (e.mod.factors.size() > 1) {
            Int rest = e.mod.n / comp.q;
            idem = mul_mod(rest, inv_mod(rest % comp.q, comp.q), e.mod.n);
        }
        for (const Row& g : comp.howell) {
            MultivariatePoly f;
            f.n = e.mod.n;
            f.vars = e.dim;
            for (std::size_t c = 0; c < ncols; ++c)
                f.set(vb.monomials[c], mul_mod(g[c] % e.mod.n, idem, e.mod.n));
            if (!f.is_zero()) vb.basis.push_back(std::move(f));
        }
    }
    vb.complete = true;

    // Informational size thresholds.
    vb.degree_power_threshold = big_pow(big(std::max(degree_bound, 0)),
                                        static_cast<unsigned long>(e.dim));
    vb.set_exceeds_threshold = big(e.size()) > vb.degree_power_threshold;
    for (std::size_t fi = 0; fi < e.mod.factors.size(); ++fi) {
        const Int q = e.mod.prime_power(fi);
        const Int p = e.mod.factors[fi].first;
        std::map<Point, int> distinct;
        for (const Point& pt : e.pts) {
            Point r = pt;
            for (Int& c : r) c %= q;
            distinct[r] = 1;
        }
        BigInt local = big(static_cast<Int>(distinct.size()));
        vb.local_threshold.emplace_back(q, local * local > big(degree_bound) * big(p));
    }
    return vb;
}

bool vanishing_space_contains(const VanishingBasis& vb, const MultivariatePoly& f) {
    if (f.vars != vb.vars) return false;
    if (f.total_degree() > vb.degree_bound) return false;

    Row coeffs(vb.monomials.size(), 0);
    std::map<Monomial, std::size_t, GradedLexLess> index;
    for (std::size_t i = 0; i < vb.monomials.size(); ++i) index[vb.monomials[i]] = i;
    for (const auto& [m, c] : f.terms) {
        auto it = index.find(m);
        if (it == index.end()) return false;
        coeffs[it->second] = mod_reduce(c, vb.n);
    }

    for (const auto& comp : vb.components) {
        Row reduced(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) reduced[i] = coeffs[i] % comp.q;
        if (!howell_contains(comp.howell, std::move(reduced), comp.p, comp.exponent, comp.q))
            return false;
    }
    return true;
}

// -----------------------------------------------------------------------
// Vanishing-fraction diagnostics
// -----------------------------------------------------------------------

SZReport schwartz_zippel_report(const MultivariatePoly& f, Int sample_budget, std::uint64_t seed) {
    Modulus m = factorize(f.n);
    ZNFAL_REQUIRE(m.factors.size() == 1 && m.factors[0].second == 1,
                  "schwartz_zippel_report: modulus must be prime");
    ZNFAL_REQUIRE(sample_budget >= 1, "schwartz_zippel_report: need a positive sample budget");

    SZReport rep;
    rep.p = f.n;
    rep.vars = f.vars;
    rep.degree = std::max(f.total_degree(), 0);
    rep.bound = make_rat(rep.degree, rep.p);

    BigInt space = big_pow(big(rep.p), static_cast<unsigned long>(f.vars));
    rep.exhaustive = space <= big(sample_budget);

    if (rep.exhaustive) {
        Point x(static_cast<std::size_t>(f.vars), 0);
        for (;;) {
            ++rep.samples;
            if (f.eval(x) == 0) ++rep.zeros;
            int i = 0;
            while (i < f.vars && ++x[static_cast<std::size_t>(i)] == rep.p)
                x[static_cast<std::size_t>(i++)] = 0;
            if (i == f.vars) break;
        }
    } else {
        Rng rng(seed);
        Point x(static_cast<std::size_t>(f.vars));
        for (Int s = 0; s < sample_budget; ++s) {
            for (int v = 0; v < f.vars; ++v) x[static_cast<std::size_t>(v)] = rng.residue(rep.p);
            ++rep.samples;
            if (f.eval(x) == 0) ++rep.zeros;
        }
    }
    rep.observed = make_rat(rep.zeros, rep.samples);
    return rep;
}

// -----------------------------------------------------------------------
// Skew-lift identity checks
// -----------------------------------------------------------------------

TwistChecks skew_lift_identity_checks(Int p, const SkewMatrix& a, Int exhaustive_budget,
                                      Int sample_count, std::uint64_t seed) {
    ZNFAL_REQUIRE(p % 2 == 1 && p >= 3, "skew_lift_identity_checks: p must be an odd prime");
    ZNFAL_REQUIRE(a.p == p, "skew_lift_identity_checks: matrix modulus mismatch");
    const int d = a.dim;
    const Int psq = p * p;

    TwistChecks out;
    out.skew = a.is_skew();

    // <v, A v> = 0 mod p for every v.
    auto form_vanishes = [&](const Point& v) {
        Point av = a.apply(v);
        Int acc = 0;
        for (int i = 0; i < d; ++i)
            acc = (acc + mul_mod(mod_reduce(v[static_cast<std::size_t>(i)], p),
                                 av[static_cast<std::size_t>(i)], p)) %
                  p;
        return acc == 0;
    };

    BigInt vectors = big_pow(big(p), static_cast<unsigned long>(d));
    out.vectors_exhaustive = vectors <= big(exhaustive_budget);
    out.isotropic_form = true;
    Rng rng(seed);
    if (out.vectors_exhaustive) {
        Point v(static_cast<std::size_t>(d), 0);
        for (;;) {
            ++out.vectors_checked;
            if (!form_vanishes(v)) out.isotropic_form = false;
            int i = 0;
            while (i < d && ++v[static_cast<std::size_t>(i)] == p) v[static_cast<std::size_t>(i++)] = 0;
            if (i == d) break;
        }
    } else {
        Point v(static_cast<std::size_t>(d));
        for (Int s = 0; s < sample_count; ++s) {
            for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = rng.residue(p);
            ++out.vectors_checked;
            if (!form_vanishes(v)) out.isotropic_form = false;
        }
    }

    // ||X - Y||^2 = ||x - y||^2 (mod p^2) with X = x + pAx, Y = y + pAy
    // and the right side the integer-difference norm of the mod-p
    // coordinates.
    auto identity_holds = [&](const Point& x, const Point& y) {
        Point ax = a.apply(x), ay = a.apply(y);
        Int lhs = 0, rhs = 0;
        for (int i = 0; i < d; ++i) {
            Int xi = x[static_cast<std::size_t>(i)], yi = y[static_cast<std::size_t>(i)];
            Int diff = mod_reduce((xi + p * ax[static_cast<std::size_t>(i)]) -
                                      (yi + p * ay[static_cast<std::size_t>(i)]),
                                  psq);
            lhs = (lhs + mul_mod(diff, diff, psq)) % psq;
            rhs = (rhs + mod_reduce((xi - yi) * (xi - yi), psq)) % psq;
        }
        return lhs == rhs;
    };

    BigInt pairs = vectors * vectors;
    out.pairs_exhaustive = pairs <= big(exhaustive_budget);
    out.distance_identity = true;
    if (out.pairs_exhaustive) {
        Point x(static_cast<std::size_t>(d), 0);
        for (;;) {
            Point y(static_cast<std::size_t>(d), 0);
            for (;;) {
                ++out.pairs_checked;
                if (!identity_holds(x, y)) out.distance_identity = false;
                int i = 0;
                while (i < d && ++y[static_cast<std::size_t>(i)] == p)
                    y[static_cast<std::size_t>(i++)] = 0;
                if (i == d) break;
            }
            int i = 0;
            while (i < d && ++x[static_cast<std::size_t>(i)] == p)
                x[static_cast<std::size_t>(i++)] = 0;
            if (i == d) break;
        }
    } else {
        Point x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
        for (Int s = 0; s < sample_count; ++s) {
            for (int i = 0; i < d; ++i) {
                x[static_cast<std::size_t>(i)] = rng.residue(p);
                y[static_cast<std::size_t>(i)] = rng.residue(p);
            }
            ++out.pairs_checked;
            if (!identity_holds(x, y)) out.distance_identity = false;
        }
    }
    return out;
}

} // namespace znfal
