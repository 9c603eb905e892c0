#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace resa {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
// update equations below are fixed by this header, so streams are identical
// on every platform and standard library:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// All derived draws (uniform_double, uniform_int, normal) are built from
// explicit arithmetic on next() outputs, never from std:: distributions,
// which are implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n = 0 returns 0.
    uint64_t uniform_int(uint64_t n) {
        if (n == 0) return 0;
        // Rejection sampling to avoid modulo bias.
        uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive range
        return lo + static_cast<int64_t>(uniform_int(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Box-Muller; one value per call, the paired value is discarded so the
    // stream position is a simple function of the call count.
    double normal(double mean, double sigma) {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * M_PI * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[uniform_int(static_cast<uint64_t>(v.size()))];
    }

    // Independent child stream, e.g. one per virtual user or per city.
    SplitMix64 fork(uint64_t salt) {
        SplitMix64 mixer(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
        return SplitMix64(mixer.next());
    }

private:
    uint64_t state_;
};

}  // namespace resa
