#pragma once

#include <cstdint>
#include <vector>

#include "seqspace/spaces.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

/// Pair (x, x*) with ||x*||_* = ||x|| and x*(x) = ||x||^2.
struct NormingPair {
    Vector x;
    FunctionalVec xstar;
};

struct DualMax {
    double value = 0.0;
    Vector maximizer;
};

/// max{g(x) : ||x||_s <= 1}: sign-alignment + projected ascent with multistart,
/// seeded by family-specific closed-form candidates. The result is a certified
/// lower bound (every reported value is attained by a feasible point).
DualMax dual_norm_search(const SpaceSpec& s, const FunctionalVec& g,
                         SearchBudget budget = {}, std::uint64_t seed = 0);
double dual_norm(const SpaceSpec& s, const FunctionalVec& g,
                 SearchBudget budget = {}, std::uint64_t seed = 0);

/// Canonical norming functional; no dual-norm verification (fast path).
FunctionalVec norming_functional_unverified(const SpaceSpec& s, const Vector& x);

/// Canonical norming functional, verified against dual_norm at 1e-6 relative.
/// Throws VerificationFailed when the check misses tolerance.
FunctionalVec norming_functional(const SpaceSpec& s, const Vector& x);

/// Up to `cap` extreme points of the norming set at x; always contains the
/// canonical functional. Oversized enumeration is sampled with the given seed.
std::vector<FunctionalVec> norming_extremes(const SpaceSpec& s, const Vector& x,
                                            std::size_t cap = 64, std::uint64_t seed = 0);

bool is_norming_pair(const SpaceSpec& s, const Vector& x, const FunctionalVec& g, double tol);

}  // namespace seqspace
