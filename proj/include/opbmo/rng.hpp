// Counter-style deterministic random streams.
//
// Every random draw in the library is a pure function of (seed, stream ids),
// so parallel and serial runs produce identical values no matter how work is
// scheduled across threads.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace opbmo {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    /// Sub-stream derived from (seed, ids...); independent of draw order elsewhere.
    template <typename... Ids>
    static Rng stream(std::uint64_t seed, Ids... ids) {
        std::uint64_t h = mix64(seed);
        ((h = mix64(h ^ static_cast<std::uint64_t>(ids))), ...);
        Rng r(0);
        r.state_ = h;
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::int64_t next_below(std::int64_t bound) {
        return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(bound));
    }

    int next_sign() { return (next_u64() & 1) ? 1 : -1; }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = next_double(); } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Complex standard normal (unit variance in total).
    std::complex<double> next_cgaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re * 0.7071067811865475244, im * 0.7071067811865475244};
    }

private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace opbmo
