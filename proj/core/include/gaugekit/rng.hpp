#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace gaugekit {

// Splitmix-style 64-bit generator. Deterministic across platforms, which is
// what the seeded verification suites and the CLI determinism contract rely
// on; std::mt19937 + std::normal_distribution would not give stable streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 bits of resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (no cached spare: keeps the stream
    /// position a pure function of the draw count).
    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    std::vector<double> normal_vector(std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) x = normal();
        return v;
    }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    /// Derives an independent stream, used to give every suite case its own
    /// seed as a pure function of (root seed, label, index).
    static std::uint64_t derive(std::uint64_t root, std::uint64_t salt) {
        Rng r(root ^ (0x9E3779B97F4A7C15ULL * (salt + 1)));
        return r.next_u64();
    }

    static std::uint64_t hash_string(const char* s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (; *s; ++s) h = (h ^ std::uint64_t(*s)) * 1099511628211ULL;
        return h;
    }

private:
    std::uint64_t state_;
};

} // namespace gaugekit
