#include "znfal/bignum.hpp"

namespace znfal {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

} // namespace

Rat rat_from_string(const std::string& s) {
    std::size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    ZNFAL_REQUIRE(is_integer_literal(num) && is_integer_literal(den),
                  "rational: expected \"num/den\" or integer, got \"" + s + "\"");
    BigInt num_i(num), den_i(den);
    ZNFAL_REQUIRE(den_i != 0, "rational: zero denominator in \"" + s + "\"");
    Rat r(num_i, den_i);
    r.canonicalize();
    return r;
}

} // namespace znfal
