#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cuspflow {

// Deterministic RNG streams. Every Monte Carlo routine takes an explicit
// stream; worker streams are derived from a master seed by stream index, so
// results do not depend on thread scheduling or worker count.
//
// mt19937_64 output is fixed by the standard; the double mappings below are
// explicit so sequences are identical across platforms (std::
// uniform_real_distribution is implementation-defined and must not be used).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
  public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t s = master_seed ^ (0x6c62272e07bb0142ULL * (stream_index + 1));
        std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
        gen_.seed(seq);
    }

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    int uniform_int(int lo, int hi) { // inclusive ends, small ranges
        return lo + int(gen_() % std::uint64_t(hi - lo + 1));
    }

    // standard exponential via inverse CDF
    double exponential() { return -std::log1p(-uniform01()); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0x1.0p-60) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cuspflow
