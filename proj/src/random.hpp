#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "common.hpp"

namespace hypercell {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent substream seed for task `index` of a run seeded with `master`.
// Used by every parallel loop so results depend only on (master, index).
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master;
    uint64_t a = splitmix64(s);
    s = a ^ (index * 0xD2B74407B1CE6E93ULL + 0x632BE59BD9B4E019ULL);
    return splitmix64(s);
}

// Deterministic random stream: mt19937_64 plus hand-rolled samplers so the
// produced sequences are implementation-independent for a fixed seed.
class RandomStream {
  public:
    explicit RandomStream(uint64_t seed) : eng_(seed) {}

    uint64_t bits() { return eng_(); }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        // Rejection on the top range to avoid modulo bias.
        uint64_t limit = n * (UINT64_MAX / n);
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    int sign() { return (eng_() & 1u) ? 1 : -1; }

    double gaussian() {
        // Marsaglia polar method; cache the second variate.
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * m;
        have_cached_ = true;
        return u * m;
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    // Exact Poisson sampling by inversion; large means are split into chunks so
    // exp(-mean) never underflows. O(mean) time, deterministic.
    uint64_t poisson(double mean) {
        if (mean < 0.0 || !std::isfinite(mean)) fail(ErrorCode::InvalidArgument, "poisson mean must be finite and >= 0");
        uint64_t total = 0;
        while (mean > 30.0) {
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

    // Gamma(k, rate) for integer shape k as a sum of exponentials.
    double gamma_integer(int k, double rate) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += exponential(rate);
        return s;
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        double threshold = std::exp(-mean);
        uint64_t k = 0;
        double p = uniform();
        while (p > threshold) {
            ++k;
            p *= uniform();
        }
        return k;
    }

    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace hypercell
