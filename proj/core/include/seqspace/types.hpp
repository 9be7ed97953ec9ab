#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqspace {

/// Coordinate vector over the unit vector basis {e_i}.
using Vector = std::vector<double>;

/// Functional over the same basis; acts on a Vector by the dot product.
using FunctionalVec = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DependentFunctionals : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParamOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double dot(const FunctionalVec& g, const Vector& x) {
    if (g.size() != x.size()) throw DimensionMismatch("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * x[i];
    return s;
}

/// Restart/step budget for the nonconvex searches.
struct SearchBudget {
    int restarts = 64;
    int steps = 200;
};

}  // namespace seqspace
