#pragma once

/// Deterministic sampling primitives. All randomized outputs in this
/// project are fully determined by an explicit 64-bit seed, so results
/// reproduce across platforms and runs.
///
/// Generator: std::mt19937_64 seeded directly with the seed (the engine
/// itself is pinned by the C++ standard). Bounded draws use rejection,
/// never std::uniform_int_distribution, whose output is
/// implementation-defined.

#include <cstdint>
#include <random>

#include "znfal/ring.hpp"

namespace znfal {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform draw from [0, bound), bound >= 1, by rejection:
    /// draw 64-bit words, discard those >= 2^64 - (2^64 mod bound),
    /// reduce the first accepted word.
    std::uint64_t below(std::uint64_t bound) {
        ZNFAL_INVARIANT(bound >= 1, "Rng::below: bound must be positive");
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r <= limit) return r % bound;
        }
    }

    Int residue(Int n) { return static_cast<Int>(below(static_cast<std::uint64_t>(n))); }

  private:
    std::mt19937_64 engine_;
};

} // namespace znfal
