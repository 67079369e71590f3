#pragma once

/// Structure detection for point sets in Z_n^d: concentration on cosets
/// of annihilator submodules Ann(K)^d, isotropy of the certified subset
/// (all pairwise squared distances divisible by some 1 < k < n), and
/// exhaustive affine-subspace concentration search in the prime-field
/// components. A certificate is self-contained: recomputing the stated
/// fraction and re-running the isotropy check reproduces it.

#include <optional>

#include "znfal/lifting.hpp"

namespace znfal {

/// Best affine concentration of a local set, over the prime field F_p
/// (prime-power components are reduced mod p first). The search is
/// exhaustive over canonical reduced-echelon bases per dimension; if the
/// candidate budget would be exceeded the result says so explicitly
/// instead of silently truncating.
struct AffineSummary {
    Int p = 0;
    int ambient_dim = 0;
    int dim = 0;                  // dimension of the reported subspace
    Rat fraction;                 // covered share of the mod-p point set
    Point offset;                 // canonical offset (zero at pivot columns)
    std::vector<Point> basis;     // reduced-echelon rows, dim many
    bool truncated = false;
    int completed_dims = -1;      // highest dimension fully searched
};

/// Scans dimensions 0..max_dim in order and returns the summary of the
/// lowest dimension whose best fraction reaches `threshold`; if none
/// does, the global best (ties: lower dimension, then enumeration
/// order). `budget` caps candidate-times-point evaluations.
AffineSummary affine_concentration(const LocalSet& local, int max_dim,
                                   const Rat& threshold = make_rat(1, 1),
                                   Int budget = 100000000);

/// Most populated residue class of E mod m = n/K, i.e. the best coset of
/// Ann(K)^d. Ties go to the lexicographically smallest representative.
/// K = 1 is rejected (singleton classes certify nothing).
struct CosetConcentration {
    Point rep;    // reduced mod m = n/K
    Rat fraction; // exact share of |E|
};
CosetConcentration coset_concentration(const PointSet& e, Int K);

/// True iff every ordered pair of s has squared distance = 0 mod k.
/// Requires a nontrivial divisor: 1 < k < n.
bool isotropy_check(const PointSet& s, Int k);

/// Largest nontrivial divisor k of n dividing every pairwise squared
/// distance of s, if any.
std::optional<Int> largest_isotropy_divisor(const PointSet& s);

struct ClassifyConfig {
    Rat alpha_min = make_rat(1, 2);
    bool require_isotropy = true;
    Rat affine_threshold = make_rat(1, 1);
    Int affine_budget = 100000000;
    bool with_local_summaries = true;
};

struct StructureCertificate {
    Int n = 0;
    int dim = 0;
    Int K = 0;                      // annihilated divisor, 1 < K < n
    Int m = 0;                      // n / K, generator of Ann(K)
    Point coset_rep;                // reduced mod m
    Rat alpha;                      // |E intersect (v + Ann(K)^d)| / |E|
    std::optional<Int> isotropy_k;  // largest nontrivial isotropy divisor
    std::vector<std::pair<Int, AffineSummary>> local_summaries; // per prime power q
};

/// Scans every divisor K of n with 1 < K < n; candidates need
/// concentration alpha >= alpha_min (and an isotropy divisor when
/// require_isotropy is set). Winner: maximal alpha, ties broken by
/// smaller K then lexicographic coset representative. nullopt means
/// unstructured.
std::optional<StructureCertificate> classify(const PointSet& e, const ClassifyConfig& config = {});

/// Greedy peeling: classify, remove the certified subset, repeat on the
/// remainder until it is empty or unstructured.
std::vector<StructureCertificate> classify_peel(const PointSet& e,
                                                const ClassifyConfig& config = {});

/// The points of E lying on the certificate's coset.
PointSet certified_subset(const PointSet& e, const StructureCertificate& cert);

/// Re-derives the certificate's claims from scratch: divisor validity,
/// stated fraction, isotropy. Used to keep emitted certificates honest.
bool validate_certificate(const PointSet& e, const StructureCertificate& cert);

} // namespace znfal
