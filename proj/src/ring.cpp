#include "znfal/ring.hpp"

#include <algorithm>
#include <string>

namespace znfal {

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Egcd egcd(Int a, Int b) {
    if (b == 0) return {a, 1, 0};
    Egcd e = egcd(b, a % b);
    return {e.g, e.y, e.x - (a / b) * e.y};
}

Int inv_mod(Int a, Int n) {
    Egcd e = egcd(mod_reduce(a, n), n);
    ZNFAL_REQUIRE(e.g == 1, "inv_mod: argument is not a unit modulo n");
    return mod_reduce(e.x, n);
}

Int Modulus::prime_power(std::size_t i) const {
    ZNFAL_INVARIANT(i < factors.size(), "Modulus::prime_power: index out of range");
    Int q = 1;
    for (int e = 0; e < factors[i].second; ++e) q *= factors[i].first;
    return q;
}

std::vector<Int> Modulus::prime_powers() const {
    std::vector<Int> out;
    out.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) out.push_back(prime_power(i));
    return out;
}

Modulus factorize(Int n) {
    ZNFAL_REQUIRE(n >= 2, "factorize: modulus must be at least 2, got " + std::to_string(n));
    Modulus m;
    m.n = n;
    m.squarefree = true;
    Int rest = n;
    for (Int p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 1) m.squarefree = false;
        m.factors.emplace_back(p, e);
    }
    if (rest > 1) m.factors.emplace_back(rest, 1);
    return m;
}

std::vector<Int> divisors(const Modulus& m) {
    std::vector<Int> out{1};
    for (auto [p, a] : m.factors) {
        std::size_t base = out.size();
        Int pe = 1;
        for (int e = 1; e <= a; ++e) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> crt_split(Int x, const Modulus& m) {
    ZNFAL_REQUIRE(x >= 0 && x < m.n, "crt_split: residue out of range");
    std::vector<Int> out;
    out.reserve(m.factors.size());
    for (std::size_t i = 0; i < m.factors.size(); ++i) out.push_back(x % m.prime_power(i));
    return out;
}

Int crt_combine(std::span<const Int> residues, const Modulus& m) {
    ZNFAL_REQUIRE(residues.size() == m.factors.size(),
                  "crt_combine: one residue per prime-power component required");
    Int x = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        Int q = m.prime_power(i);
        ZNFAL_REQUIRE(residues[i] >= 0 && residues[i] < q, "crt_combine: component residue out of range");
        Int big = m.n / q;                       // coprime to q
        Int coeff = mul_mod(big, inv_mod(big % q, q), m.n);
        x = (x + mul_mod(residues[i], coeff, m.n)) % m.n;
    }
    return x;
}

std::vector<Int> SubmoduleSpec::elements() const {
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(K));
    for (Int t = 0; t < K; ++t) out.push_back(t * generator);
    return out;
}

SubmoduleSpec annihilator_submodule(Int K, const Modulus& m) {
    ZNFAL_REQUIRE(K >= 1 && m.n % K == 0,
                  "annihilator_submodule: K = " + std::to_string(K) + " does not divide n = " +
                      std::to_string(m.n));
    return SubmoduleSpec{m.n, K, m.n / K};
}

} // namespace znfal
