#pragma once

// Deterministic random sampling for the verification suites. Only the
// mt19937_64 engine itself is used (its output sequence is pinned by the
// standard); bounded draws go through rejection sampling so results are
// identical across platforms and standard libraries.

#include <cstdint>
#include <random>

namespace rescal {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform integer in [lo, hi], inclusive.
    long range(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// Nonzero integer in [lo, hi].
    long nonzero(long lo, long hi) {
        long x;
        do {
            x = range(lo, hi);
        } while (x == 0);
        return x;
    }

    bool coin() { return (eng_() & 1) != 0; }

  private:
    std::mt19937_64 eng_;
};

/// Stable per-instance stream: one suite run with seed s derives instance
/// i's stream from (s, i), so a single failing instance replays alone.
inline Rng instance_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed * 0x9e3779b97f4a7c15ULL + index + 1);
}

}  // namespace rescal
