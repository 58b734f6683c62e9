#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "nri/matrix.hpp"

namespace nri {

/// SplitMix64 stream (Steele, Lea, Flood 2014 constants).  Deterministic and
/// cheap to seed per work item, which keeps parallel matrix generation
/// order-independent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal N(0, 1) via Box-Muller on the stream.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Standard complex Gaussian: real and imaginary parts each N(0, 1/2).
    cdouble next_complex_gaussian() {
        const double scale = std::numbers::sqrt2 / 2.0;
        const double re = scale * next_gaussian();
        const double im = scale * next_gaussian();
        return cdouble{re, im};
    }

    /// Haar-uniform unit vector in C^n.
    std::vector<cdouble> unit_vector(std::size_t n) {
        std::vector<cdouble> x(n);
        double norm2 = 0.0;
        for (auto& z : x) {
            z = next_complex_gaussian();
            norm2 += std::norm(z);
        }
        if (norm2 == 0.0) {
            x[0] = 1.0;
            return x;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& z : x) z *= inv;
        return x;
    }

    /// Stream mixer for deriving independent sub-seeds.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        Rng r(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace nri
