#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqspace/operators.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

enum class Verdict { Positive, Refuted, Inconclusive };

/// Result of scanning nu(x) = max over norming extremes of x*(Tx) on the
/// unit sphere. Refuted is sound (the witness replays); Positive is a
/// budget-bounded heuristic certificate.
struct PositivityReport {
    double inf_sup_value = 0.0;
    Vector witness_x;
    FunctionalVec witness_xstar;  // argmax extreme at the witness
    Verdict verdict = Verdict::Inconclusive;
    long budget_used = 0;
};

PositivityReport positivity_scan(const SpaceSpec& s, const LinearOperator& T,
                                 SearchBudget budget = {}, std::uint64_t seed = 0,
                                 double tol = 1e-9);

/// Re-evaluate nu at the stored witness (replay check for Refuted reports).
double positivity_value_at(const SpaceSpec& s, const LinearOperator& T, const Vector& x);

struct PropACheck {
    double norm_p = 0.0;
    double norm_id_minus_p = 0.0;
    PositivityReport positivity_of_rank_sum;  // scan of sum f_j (x) u_j = Id - P
    bool consistent = false;
};

/// Checks the equivalence: the rank sum is numerically positive exactly when
/// the projection it complements has norm one.
PropACheck prop_a_check(const SpaceSpec& s, const ProjectionSpec& ps,
                        SearchBudget budget = {}, std::uint64_t seed = 0);

struct SuppWitness {
    Vector x;
    FunctionalVec xstar;
    double value = 0.0;  // nu(x) < 0
    std::size_t coord_outside = 0;  // k with u_{ik} != 0 outside the f supports
    std::size_t coord_inside = 0;   // i inside the f supports
    double eps = 0.0;
};

/// When some u places mass on a coordinate outside the union of the f
/// supports, perturbed basis vectors e_k + eps e_i witness a positivity
/// violation of the rank sum. Requires the space to separate points (no flat
/// segment of the norm at the origin) and to have a smooth unit vector there.
std::optional<SuppWitness> lemma_supp_refuter(const SpaceSpec& s, const ProjectionSpec& ps);

}  // namespace seqspace
