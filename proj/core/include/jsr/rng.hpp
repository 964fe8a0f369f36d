#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace jsr {

/// Deterministic random source. std::uniform_real_distribution is
/// implementation-defined, so all transforms are spelled out here to keep
/// seeded runs reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        // 53 random mantissa bits in [0, 1)
        return std::ldexp(static_cast<double>(gen_() >> 11), -53);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t next() { return gen_(); }

    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    double normal() {
        // Box-Muller, one value per call (the pair's second half is dropped)
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    std::vector<double> vector(int dim, double lo = -1.0, double hi = 1.0) {
        std::vector<double> v(static_cast<size_t>(dim));
        for (auto& e : v) e = uniform(lo, hi);
        return v;
    }

    std::vector<double> gaussian_vector(int dim) {
        std::vector<double> v(static_cast<size_t>(dim));
        for (auto& e : v) e = normal();
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace jsr
