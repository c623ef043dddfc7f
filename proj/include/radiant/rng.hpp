#pragma once

#include <cstdint>
#include <cmath>

namespace radiant {

// Counter-based generator built on splitmix64 (Steele et al., "Fast
// splittable pseudorandom number generators", OOPSLA 2014). Every stream
// is identified by (seed, stream); draws are a pure function of the
// counter, so sampling is reproducible and trivially splittable across
// workers. Algorithm name pinned in output metadata as "splitmix64-v1".
class Rng {
  public:
    static constexpr const char *algorithm = "splitmix64-v1";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second value cached.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Derives an independent child stream, e.g. one per Monte-Carlo sample.
    Rng split(std::uint64_t stream) const {
        return Rng(mix(state_ ^ 0xbf58476d1ce4e5b9ULL), stream);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace radiant
