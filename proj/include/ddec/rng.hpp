#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace ddec {

/// Seeded pseudo-random source with platform-independent sampling.
///
/// The engine output of std::mt19937_64 is fixed by the standard, but the
/// standard distributions are not, so integer and real draws are derived
/// here directly from the raw 64-bit stream.
class Rng {
public:
    using seed_type = std::uint64_t;

    explicit Rng(seed_type seed) : _engine(seed), _seed(seed) {}

    seed_type seed() const { return _seed; }

    std::uint64_t next() { return _engine(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
    {
        if (hi < lo)
            throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == std::numeric_limits<std::uint64_t>::max())
            return static_cast<std::int64_t>(next());
        const std::uint64_t n = span + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
        std::uint64_t v = next();
        while (v >= limit)
            v = next();
        return lo + static_cast<std::int64_t>(v % n);
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("index: n must be positive");
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    /// Uniform real in the open interval (0, 1); never returns 0 or 1.
    double uniform01()
    {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// A fresh, independent generator for a sub-task (benchmark runs, fixtures).
    Rng split() { return Rng(next()); }

private:
    std::mt19937_64 _engine;
    seed_type _seed;
};

/// Seed drawn from the operating system's entropy source.
inline Rng::seed_type entropy_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

} // namespace ddec
