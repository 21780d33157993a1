#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace microevo {

/// Deterministic RNG wrapper. Draw helpers are implemented directly on the
/// raw 64-bit stream so that results do not depend on the standard library's
/// distribution internals, which keeps checkpointed runs bit-reproducible.
class Rng {
public:
    Rng() : engine_(0) {}
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    std::uint64_t uniform_index(std::uint64_t n) { return engine_() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    std::string save_state() const {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }
    void restore_state(const std::string& s) {
        std::istringstream is(s);
        is >> engine_;
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive independent stream seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return mix_seed(mix_seed(base ^ mix_seed(a)) ^ mix_seed(b ^ 0x5bf03635ULL));
}

}  // namespace microevo
