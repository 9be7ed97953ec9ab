#pragma once

#include <cstdint>
#include <random>

#include "seqspace/types.hpp"

namespace seqspace {

/// Seeded RNG threaded explicitly through every search so runs replay.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    std::uint64_t integer(std::uint64_t n) {  // in [0, n)
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
    }
    bool coin() { return integer(2) == 1; }

    Vector gaussian_vector(std::size_t n) {
        Vector v(n);
        for (auto& e : v) e = normal();
        return v;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace seqspace
