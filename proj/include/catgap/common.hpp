// common.hpp — shared error types, deterministic RNG, log-space helpers
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace catgap {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy; the CLI maps these onto exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Orbit landed within tolerance of a partition cell boundary; caller perturbs the seed point.
struct BoundaryHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------ deterministic RNG ----------------------------
//
// splitmix64: tiny, seedable, identical output everywhere. Standard-library
// distributions are implementation-defined, so regression outputs go through
// this generator only.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53-bit mantissa
    double uniform01() noexcept { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) noexcept { return n ? next() % n : 0; }

    // standard exponential, used for Dirichlet rows
    double exp1() noexcept { return -std::log(1.0 - uniform01()); }

    // independent stream for trial i
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
        Rng r(seed ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull));
        r.next();
        return r.next();
    }
};

// ----------------------------- log-space arithmetic ---------------------------

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), tolerant of -inf
inline double log_add(double a, double b) noexcept {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    const double m = a > b ? a : b;
    return m + std::log1p(std::exp(-(std::abs(a - b))));
}

// log of binomial coefficient via lgamma
inline double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return kLogZero;
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

}  // namespace catgap
