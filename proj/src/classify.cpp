#include "znfal/classify.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace znfal {

namespace {

// ---------------------------------------------------------------------
// Affine subspace enumeration over F_p.
//
// Dimension-r subspaces are enumerated through their unique canonical
// form: a reduced-echelon basis (pivot columns j_1 < ... < j_r, identity
// at pivots, free entries only at non-pivot columns right of the pivot)
// plus an offset vector that is zero at every pivot column. Every affine
// subspace has exactly one such description, so counting candidates per
// dimension matches p^(d-r) times the Gaussian binomial.
// ---------------------------------------------------------------------

struct SubspaceScan {
    Int best_count = -1;
    Point best_offset;
    std::vector<Point> best_basis;
};

bool on_subspace(const Point& x, const Point& offset, const std::vector<Point>& basis,
                 const std::vector<int>& pivots, Int p) {
    Point y(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) y[c] = mod_reduce(x[c] - offset[c], p);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Int coeff = y[static_cast<std::size_t>(pivots[i])];
        if (coeff == 0) continue;
        for (std::size_t c = 0; c < y.size(); ++c)
            y[c] = mod_reduce(y[c] - coeff * basis[i][c], p);
    }
    for (Int c : y)
        if (c != 0) return false;
    return true;
}

// Odometer over the free slots of a template vector; returns false when
// the odometer wraps (all combinations visited).
bool advance(Point& values, const std::vector<std::size_t>& slots, Int p) {
    for (std::size_t s : slots) {
        if (++values[s] < p) return true;
        values[s] = 0;
    }
    return false;
}

void scan_dimension(const std::vector<Point>& pts, Int p, int d, int r, SubspaceScan& out) {
    if (r == 0) {
        // Only points of the set itself can carry a nonzero fraction;
        // the lexicographically smallest one is the canonical winner.
        out.best_count = 1;
        out.best_offset = pts.front();
        out.best_basis = {};
        return;
    }

    std::vector<int> pivots(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pivots[static_cast<std::size_t>(i)] = i;

    for (;;) {
        // Free slots of the basis rows for this pivot choice.
        std::vector<Point> basis(static_cast<std::size_t>(r),
                                 Point(static_cast<std::size_t>(d), 0));
        std::vector<std::size_t> row_of_slot, col_of_slot;
        for (int i = 0; i < r; ++i) {
            basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;
            for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < d; ++c) {
                if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
                row_of_slot.push_back(static_cast<std::size_t>(i));
                col_of_slot.push_back(static_cast<std::size_t>(c));
            }
        }

        Point free_vals(row_of_slot.size(), 0);
        do {
            for (std::size_t s = 0; s < row_of_slot.size(); ++s)
                basis[row_of_slot[s]][col_of_slot[s]] = free_vals[s];

            // Offsets: zero at pivot columns, free elsewhere.
            std::vector<std::size_t> offset_slots;
            for (int c = 0; c < d; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    offset_slots.push_back(static_cast<std::size_t>(c));
            Point offset(static_cast<std::size_t>(d), 0);
            std::vector<std::size_t> odo(offset_slots.begin(), offset_slots.end());
            do {
                Int count = 0;
                for (const Point& x : pts)
                    if (on_subspace(x, offset, basis, pivots, p)) ++count;
                if (count > out.best_count) {
                    out.best_count = count;
                    out.best_offset = offset;
                    out.best_basis = basis;
                }
            } while (advance(offset, odo, p));
        } while (advance(free_vals, row_of_slot, p));

        // Next pivot combination in lex order.
        int i = r - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == d - r + i) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Number of dimension-r candidates times the per-candidate point work.
BigInt dimension_cost(Int p, int d, int r, Int points) {
    if (r == 0) return big(points);
    BigInt total = 0;
    std::vector<int> pivots(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pivots[static_cast<std::size_t>(i)] = i;
    for (;;) {
        int free_slots = 0;
        for (int i = 0; i < r; ++i)
            for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < d; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) ++free_slots;
        total += big_pow(big(p), static_cast<unsigned long>(free_slots + d - r));

        int i = r - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == d - r + i) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
    return total * big(points);
}

} // namespace

AffineSummary affine_concentration(const LocalSet& local, int max_dim, const Rat& threshold,
                                   Int budget) {
    ZNFAL_REQUIRE(max_dim >= 0 && max_dim <= local.dim,
                  "affine_concentration: max_dim out of range");
    const Int p = local.p;

    // Work in the residue field: reduce mod p and deduplicate.
    std::vector<Point> reduced = local.pts;
    for (Point& pt : reduced)
        for (Int& c : pt) c %= p;
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    const Int set_size = static_cast<Int>(reduced.size());

    AffineSummary out;
    out.p = p;
    out.ambient_dim = local.dim;
    out.dim = -1;

    BigInt spent = 0;
    Rat best_fraction = make_rat(0, 1);
    for (int r = 0; r <= max_dim; ++r) {
        BigInt cost = dimension_cost(p, local.dim, r, set_size);
        if (spent + cost > big(budget)) {
            out.truncated = true;
            break;
        }
        spent += cost;

        SubspaceScan scan;
        scan_dimension(reduced, p, local.dim, r, scan);
        Rat fraction = make_rat(scan.best_count, set_size);
        if (out.dim < 0 || fraction > best_fraction) {
            best_fraction = fraction;
            out.dim = r;
            out.fraction = fraction;
            out.offset = scan.best_offset;
            out.basis = scan.best_basis;
        }
        out.completed_dims = r;
        if (fraction >= threshold) {
            // Lowest dimension reaching the threshold wins outright.
            out.dim = r;
            out.fraction = fraction;
            out.offset = scan.best_offset;
            out.basis = scan.best_basis;
            return out;
        }
    }
    ZNFAL_REQUIRE(out.completed_dims >= 0,
                  "affine_concentration: budget too small for any dimension");
    return out;
}

CosetConcentration coset_concentration(const PointSet& e, Int K) {
    ZNFAL_REQUIRE(K != 1, "coset_concentration: K = 1 certifies nothing (singleton classes)");
    ZNFAL_REQUIRE(K > 1 && e.mod.n % K == 0, "coset_concentration: K must be a divisor > 1");
    const Int m = e.mod.n / K;

    std::map<Point, Int> classes;
    for (const Point& p : e.pts) {
        Point r = p;
        for (Int& c : r) c %= m; // m = 1 collapses everything to the origin class
        ++classes[r];
    }
    const auto best = std::max_element(classes.begin(), classes.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    // std::map iterates keys in lex order, so max_element already ties to
    // the smallest representative.
    return CosetConcentration{best->first, make_rat(best->second, e.size())};
}

bool isotropy_check(const PointSet& s, Int k) {
    ZNFAL_REQUIRE(k > 1 && k < s.mod.n && s.mod.n % k == 0,
                  "isotropy_check: k must be a nontrivial divisor of n (1 < k < n)");
    for (std::size_t i = 0; i < s.pts.size(); ++i)
        for (std::size_t j = i; j < s.pts.size(); ++j)
            if (squared_distance(s.pts[i], s.pts[j], s.mod) % k != 0) return false;
    return true;
}

std::optional<Int> largest_isotropy_divisor(const PointSet& s) {
    // k works iff k divides gcd(n, all pairwise squared distances).
    Int g = s.mod.n;
    for (std::size_t i = 0; i < s.pts.size() && g > 1; ++i)
        for (std::size_t j = i + 1; j < s.pts.size() && g > 1; ++j)
            g = gcd_int(g, squared_distance(s.pts[i], s.pts[j], s.mod));
    if (g == 1) return std::nullopt;
    if (g < s.mod.n) return g;
    // All distances vanish mod n itself; the largest admissible k is the
    // largest proper divisor of n.
    std::vector<Int> divs = divisors(s.mod);
    if (divs.size() < 3) return std::nullopt; // prime n has no nontrivial divisor
    return divs[divs.size() - 2];
}

PointSet certified_subset(const PointSet& e, const StructureCertificate& cert) {
    std::vector<Point> sub;
    for (const Point& p : e.pts) {
        bool member = true;
        for (int c = 0; c < e.dim; ++c)
            if (p[static_cast<std::size_t>(c)] % cert.m !=
                cert.coset_rep[static_cast<std::size_t>(c)])
                member = false;
        if (member) sub.push_back(p);
    }
    return PointSet::make(e.mod, e.dim, std::move(sub));
}

std::optional<StructureCertificate> classify(const PointSet& e, const ClassifyConfig& config) {
    struct Candidate {
        Int K;
        Point rep;
        Rat alpha;
        std::optional<Int> iso;
    };
    std::optional<Candidate> winner;

    for (Int K : divisors(e.mod)) {
        if (K <= 1 || K >= e.mod.n) continue; // trivial submodules certify nothing
        CosetConcentration cc = coset_concentration(e, K);
        if (cc.fraction < config.alpha_min) continue;

        StructureCertificate probe;
        probe.m = e.mod.n / K;
        probe.coset_rep = cc.rep;
        std::optional<Int> iso = largest_isotropy_divisor(certified_subset(e, probe));
        if (config.require_isotropy && !iso) continue;

        Candidate cand{K, cc.rep, cc.fraction, iso};
        if (!winner || cand.alpha > winner->alpha ||
            (cand.alpha == winner->alpha &&
             (cand.K < winner->K || (cand.K == winner->K && cand.rep < winner->rep))))
            winner = std::move(cand);
    }
    if (!winner) return std::nullopt;

    StructureCertificate cert;
    cert.n = e.mod.n;
    cert.dim = e.dim;
    cert.K = winner->K;
    cert.m = e.mod.n / winner->K;
    cert.coset_rep = winner->rep;
    cert.alpha = winner->alpha;
    cert.isotropy_k = winner->iso;
    if (config.with_local_summaries)
        for (const LocalSet& local : all_projections(e))
            cert.local_summaries.emplace_back(
                local.q, affine_concentration(local, e.dim - 1, config.affine_threshold,
                                              config.affine_budget));
    return cert;
}

std::vector<StructureCertificate> classify_peel(const PointSet& e, const ClassifyConfig& config) {
    std::vector<StructureCertificate> out;
    PointSet rest = e;
    for (;;) {
        std::optional<StructureCertificate> cert = classify(rest, config);
        if (!cert) break;
        PointSet sub = certified_subset(rest, *cert);
        out.push_back(std::move(*cert));
        if (sub.size() == rest.size()) break; // everything certified
        rest = set_difference(rest, sub);
    }
    return out;
}

bool validate_certificate(const PointSet& e, const StructureCertificate& cert) {
    if (cert.n != e.mod.n || cert.dim != e.dim) return false;
    if (cert.K <= 1 || cert.K >= cert.n || cert.n % cert.K != 0) return false;
    if (cert.m != cert.n / cert.K) return false;
    if (static_cast<int>(cert.coset_rep.size()) != e.dim) return false;
    for (Int c : cert.coset_rep)
        if (c < 0 || c >= cert.m) return false;

    std::vector<Point> members;
    for (const Point& p : e.pts) {
        bool in = true;
        for (int c = 0; c < e.dim; ++c)
            if (p[static_cast<std::size_t>(c)] % cert.m !=
                cert.coset_rep[static_cast<std::size_t>(c)])
                in = false;
        if (in) members.push_back(p);
    }
    if (make_rat(static_cast<Int>(members.size()), e.size()) != cert.alpha) return false;
    if (cert.isotropy_k) {
        if (*cert.isotropy_k <= 1 || *cert.isotropy_k >= cert.n) return false;
        if (members.empty()) return false;
        PointSet sub = PointSet::make(e.mod, e.dim, std::move(members));
        if (!isotropy_check(sub, *cert.isotropy_k)) return false;
    }
    return true;
}

} // namespace znfal
