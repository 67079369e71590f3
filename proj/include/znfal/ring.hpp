#pragma once

/// Exact arithmetic in Z_n: factorization, the divisor lattice, CRT
/// transport between Z_n and its prime-power components, and annihilator
/// submodules Ann(K) = {x : Kx = 0}.
///
/// Everything here is plain integer arithmetic; residues are always kept
/// fully reduced in [0, n).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "znfal/errors.hpp"

namespace znfal {

using Int = std::int64_t;

/// x mod n normalized into [0, n).
constexpr Int mod_reduce(Int x, Int n) {
    Int r = x % n;
    return r < 0 ? r + n : r;
}

/// (a * b) mod n without intermediate overflow.
inline Int mul_mod(Int a, Int b, Int n) {
    return static_cast<Int>(static_cast<__int128>(a) * b % n);
}

Int gcd_int(Int a, Int b);

/// Extended Euclid: returns g = gcd(a, b) and x, y with a*x + b*y = g.
struct Egcd {
    Int g, x, y;
};
Egcd egcd(Int a, Int b);

/// Inverse of a modulo n; requires gcd(a, n) = 1.
Int inv_mod(Int a, Int n);

/// A modulus n >= 2 together with its factorization n = prod p_i^{a_i},
/// primes strictly increasing.
struct Modulus {
    Int n = 0;
    std::vector<std::pair<Int, int>> factors; // (prime, exponent)
    bool squarefree = false;

    std::size_t component_count() const { return factors.size(); }

    /// The i-th maximal prime-power divisor p_i^{a_i}.
    Int prime_power(std::size_t i) const;

    /// All maximal prime-power divisors, in prime order.
    std::vector<Int> prime_powers() const;

    bool operator==(const Modulus&) const = default;
};

/// Trial-division factorization. Throws input_error for n < 2.
Modulus factorize(Int n);

/// All divisors of n, ascending, including 1 and n.
/// The result has length prod (a_i + 1).
std::vector<Int> divisors(const Modulus& m);

/// Split x in [0, n) into residues modulo each maximal prime-power
/// divisor, in prime order.
std::vector<Int> crt_split(Int x, const Modulus& m);

/// Inverse of crt_split: the unique x in [0, n) with the given residues.
Int crt_combine(std::span<const Int> residues, const Modulus& m);

/// The annihilator submodule Ann(K) = {x in Z_n : K*x = 0 (mod n)}.
/// For K | n this is the cyclic submodule generated by m = n/K, with
/// exactly K elements {0, m, 2m, ...}.
struct SubmoduleSpec {
    Int n = 0;
    Int K = 0;         // annihilated divisor
    Int generator = 0; // n / K

    bool contains(Int x) const { return mod_reduce(x, n) % generator == 0; }
    Int size() const { return K; }
    std::vector<Int> elements() const;
};

/// Throws input_error unless K | n and K >= 1.
SubmoduleSpec annihilator_submodule(Int K, const Modulus& m);

} // namespace znfal
