#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace augbench {

// Deterministic random source. mt19937_64 is fully specified by the
// standard, but the standard *distributions* are not, so every draw used
// here is implemented explicitly. Identical seeds give identical streams
// on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    // Independent stream derived from this rng's seed and a salt.
    // Forking does not consume state from the parent.
    Rng fork(std::uint64_t salt) const { return Rng(mix(seed_ ^ (0x9e3779b97f4a7c15ULL + salt))); }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Multiply-shift; bias is < n / 2^64.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Box-Muller. Consumes two uniforms per draw; no cached spare so the
    // stream position is a pure function of the draw count.
    double gaussian(double mean, double stddev) {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    // splitmix64 finalizer; decorrelates nearby seeds.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Salt constants for the independent streams of a benchmark run.
namespace rng_salt {
inline constexpr std::uint64_t trim = 0x01;
inline constexpr std::uint64_t folds = 0x02;
inline constexpr std::uint64_t inflate = 0x03;
inline constexpr std::uint64_t init = 0x04;
inline constexpr std::uint64_t shuffle = 0x05;
inline constexpr std::uint64_t train = 0x06;
} // namespace rng_salt

/// Seed for a nested deterministic stream, e.g. (run seed, scheme, fold).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    Rng rng(base);
    for (std::uint64_t p : path) rng = rng.fork(p);
    return rng.next_u64();
}

} // namespace augbench
