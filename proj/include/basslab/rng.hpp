#pragma once

#include <cstddef>
#include <cstdint>

namespace basslab::rng {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of trial `trial` under `base`; distinct trials get unrelated streams.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) noexcept
{
    return mix64(mix64(base) ^ mix64(trial + 0x632be59bd9b4e019ULL));
}

/// Uniform double in (0, 1] from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Shared stream of uniforms omega_j^n used to drive coupled discrete runs.
/// Values are a pure function of (seed, n, j), so nothing is stored.
class CouplingTape {
public:
    explicit constexpr CouplingTape(std::uint64_t seed) noexcept : seed_(seed) {}

    /// Tape returning `value` everywhere; constant(1.0) never triggers an adoption.
    static constexpr CouplingTape constant(double value) noexcept
    {
        CouplingTape tape(0);
        tape.constant_ = true;
        tape.value_ = value;
        return tape;
    }

    constexpr double operator()(std::uint64_t step, std::size_t node) const noexcept
    {
        if (constant_) return value_;
        return to_unit(mix64(mix64(seed_ ^ mix64(step)) + static_cast<std::uint64_t>(node)));
    }

    constexpr std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    bool constant_ = false;
    double value_ = 1.0;
};

}  // namespace basslab::rng
