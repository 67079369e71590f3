#pragma once

/// Arbitrary-precision counts and exact rationals. Energies grow like
/// |E|^4 and overflow 64 bits well inside supported input sizes, and
/// every reported ratio is an exact fraction, so GMP types are used
/// throughout. No floating point exists anywhere in this project.

#include <gmpxx.h>

#include <string>

#include "znfal/ring.hpp"

namespace znfal {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const BigInt& num, const BigInt& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(Int num, Int den) {
    return make_rat(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline BigInt big(Int x) { return BigInt(static_cast<long>(x)); }

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    return make_rat(big_pow(base.get_num(), e), big_pow(base.get_den(), e));
}

inline std::string big_to_string(const BigInt& x) { return x.get_str(); }

/// Canonical "num/den" rendering, denominator always present and positive.
inline std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parse "num/den" or a bare integer. Throws input_error on junk.
Rat rat_from_string(const std::string& s);

} // namespace znfal
