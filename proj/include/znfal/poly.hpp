#pragma once

/// Polynomial machinery over Z_n: annihilator polynomials of distance
/// sets, pointwise vanishing of their composition with the distance
/// form, and the module of bounded-degree polynomials vanishing on a
/// point set.
///
/// Vanishing modules over a prime power Z_{p^a} are computed by iterated
/// mod-p kernels: solutions at level p^(s+1) are generated by liftable
/// F_p-kernel combinations of the level-p^s generators together with
/// their p-multiples; dividing the residuals by p turns each level into
/// a plain linear system over F_p. Composite n is handled per prime
/// power and recombined through the CRT idempotents.

#include <map>
#include <optional>

#include "znfal/energy.hpp"
#include "znfal/points.hpp"
#include "znfal/rng.hpp"

namespace znfal {

// -----------------------------------------------------------------------
// Univariate
// -----------------------------------------------------------------------

struct UnivariatePoly {
    Int n = 0;
    std::vector<Int> coeffs; // ascending degree, reduced mod n, trimmed

    bool is_zero() const { return coeffs.size() == 1 && coeffs[0] == 0; }
    Int degree() const { return static_cast<Int>(coeffs.size()) - 1; }
    Int eval(Int t) const;

    static UnivariatePoly make(Int n, std::vector<Int> coeffs);
};

/// Q(T) = prod_{s in S} (T - s), monic of degree |S|, coefficients mod n.
/// Vanishes on S by construction.
UnivariatePoly annihilator_poly(const std::vector<Int>& s, const Modulus& m);

// -----------------------------------------------------------------------
// Multivariate
// -----------------------------------------------------------------------

/// Exponent vectors ordered by total degree, then lexicographically.
using Monomial = std::vector<int>;

struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials in `vars` variables of total degree <= max_degree, in
/// graded-lex ascending order.
std::vector<Monomial> monomials_up_to(int vars, int max_degree);

struct MultivariatePoly {
    Int n = 0;
    int vars = 0;
    std::map<Monomial, Int, GradedLexLess> terms; // zero coefficients never stored

    bool is_zero() const { return terms.empty(); }
    int total_degree() const; // -1 for the zero polynomial
    Int eval(const Point& x) const;
    void set(const Monomial& m, Int coeff); // reduces, erases zeros

    bool operator==(const MultivariatePoly&) const = default;
};

/// Seeded random polynomial with uniform coefficients, rejected until it
/// is nonzero and attains the requested total degree exactly.
MultivariatePoly random_multivariate_poly(Int p, int vars, int degree, std::uint64_t seed);

// -----------------------------------------------------------------------
// Distance annihilator
// -----------------------------------------------------------------------

/// Builds Q from Delta(E) and evaluates Q(||x-y||^2) over every ordered
/// pair. Vanishes identically by construction; running it end to end
/// exercises the whole polynomial stack, which is why it exists.
struct PsiCheck {
    bool vanishes = false;
    Int annihilator_degree = 0; // |Delta(E)|
    Int pairs_checked = 0;
};
PsiCheck psi_vanishing_check(const PointSet& e);

// -----------------------------------------------------------------------
// Vanishing module
// -----------------------------------------------------------------------

/// All polynomials of total degree <= degree_bound vanishing at every
/// point of E modulo n, presented by a canonical generating set. The
/// per-component Howell matrices are kept so membership in the module
/// can be decided exactly.
struct VanishingBasis {
    Int n = 0;
    int vars = 0;
    int degree_bound = 0;
    std::vector<Monomial> monomials; // graded-lex ascending
    std::vector<MultivariatePoly> basis;
    bool complete = false;
    bool degree_warning = false; // degree_bound >= p somewhere: the
                                 // degree-below-p uniqueness argument is unavailable

    struct Component {
        Int q = 0;
        Int p = 0;
        int exponent = 1;
        std::vector<std::vector<Int>> howell; // canonical kernel rows mod q
    };
    std::vector<Component> components;

    // Reported size thresholds; informational, never enforced.
    BigInt degree_power_threshold;   // D^d
    bool set_exceeds_threshold = false; // |E| > D^d
    std::vector<std::pair<Int, bool>> local_threshold; // (q, |E_q|^2 > D*p)
};

/// Throws budget_error when the monomial count exceeds max_monomials.
VanishingBasis vanishing_space(const PointSet& e, int degree_bound, Int max_monomials = 5000);

/// Exact membership of f in the module generated by the basis.
bool vanishing_space_contains(const VanishingBasis& vb, const MultivariatePoly& f);

// -----------------------------------------------------------------------
// Vanishing-fraction diagnostics
// -----------------------------------------------------------------------

/// Observed vanishing fraction of a polynomial over F_p^d next to the
/// degree/p bound. Exhaustive when p^d fits in the sample budget,
/// otherwise seeded uniform sampling. Diagnostic only.
struct SZReport {
    Int p = 0;
    int vars = 0;
    Int degree = 0;
    Int samples = 0;
    Int zeros = 0;
    Rat observed;
    Rat bound; // degree / p
    bool exhaustive = false;
};
SZReport schwartz_zippel_report(const MultivariatePoly& f, Int sample_budget, std::uint64_t seed);

// -----------------------------------------------------------------------
// Skew-lift identity checks
// -----------------------------------------------------------------------

struct SkewMatrix; // construct.hpp

/// Verifies the three identities behind the skew-twisted lift over
/// Z_{p^2}: skew-symmetry of A, vanishing of <v, Av> mod p, and the
/// pairwise distance identity ||X-Y||^2 = ||x-y||^2 (mod p^2), where
/// x, y are the mod-p coordinates and the right side is the squared norm
/// of their integer difference. Exhaustive within budget, seeded
/// sampling beyond it. p = 2 is rejected.
struct TwistChecks {
    bool skew = false;
    bool isotropic_form = false;    // <v, Av> = 0 mod p for all v
    bool distance_identity = false; // cross term invisible mod p^2
    bool vectors_exhaustive = false;
    bool pairs_exhaustive = false;
    Int vectors_checked = 0;
    Int pairs_checked = 0;
};
TwistChecks skew_lift_identity_checks(Int p, const SkewMatrix& a, Int exhaustive_budget = 1000000,
                                      Int sample_count = 10000, std::uint64_t seed = 0);

} // namespace znfal
