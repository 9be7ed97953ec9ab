#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqspace/duality.hpp"
#include "seqspace/operators.hpp"
#include "seqspace/orlicz_function.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

/// Sampled cross-checks for the norm regularity predicates exposed by
/// `spaces` (exact answers live there; these probe the defining limits).
bool sampled_property_P(const SpaceSpec& s);
bool sampled_property_Q(const SpaceSpec& s);

/// Parameters for the perturbed kernel elements x(a, eps) attached to a
/// sorted positive functional f (f_1 >= ... >= f_n > 0, n >= 3).
struct WitnessParams {
    double a = 0.0;
    double eps = 0.0;
    double eta = 0.0;      // admissible range bound for a in variant A1
    double delta_a = 0.0;  // admissible range bound for eps at this a (A1)
    double eps1 = 0.0;     // admissible range bound for eps at a = 1 (A2)
    double eps_a = 0.0;    // admissible range bound for eps at this a (A3)
};

enum class WitnessVariant { General, A1, A2, A3 };

/// Fill the range bounds for a given f and a; a and eps are left as passed.
WitnessParams witness_bounds(const FunctionalVec& f, double a, double eps);

/// The element x(a, eps) in the coordinates of f. Throws ParamOutOfRange when
/// (a, eps) leaves the variant's admissible range.
Vector witness_x(const FunctionalVec& f, const WitnessParams& params, WitnessVariant variant);

enum class HyperplaneVerdict { PossiblyOne, Impossible };

struct LorentzHyperplaneResult {
    HyperplaneVerdict verdict = HyperplaneVerdict::PossiblyOne;
    std::string reason;  // machine-readable code when Impossible
};

/// Decide whether ker f admits a norm-one projection in the Lorentz space,
/// from the shape of (w, p) and the support of f alone.
LorentzHyperplaneResult lorentz_hyperplane_verdict(const LorentzSpec& s, const FunctionalVec& f);

struct RefuteWitness {
    Vector x;
    FunctionalVec xstar;
    double value = 0.0;  // max over norming extremes of x*((f(x))u), negative
};

/// Search the admissible (a, eps) grids, including coordinate symmetries of
/// tied f entries, for a numerical-positivity violation of f (x) u. Returns
/// nothing when the budget is exhausted without a verified witness (never a
/// false refutation).
std::optional<RefuteWitness> refute_lorentz_hyperplane(const LorentzSpec& s,
                                                       const FunctionalVec& f, const Vector& u,
                                                       SearchBudget budget = {});

enum class PhiClass { SimilarTo, EquivalentTo, NotEquivalentToAnyPower };

struct PhiClassification {
    PhiClass kind = PhiClass::NotEquivalentToAnyPower;
    double p = 0.0;  // exponent near 0 for SimilarTo / EquivalentTo
    double C = 0.0;  // leading constant for SimilarTo
};

/// Classify the behavior of phi near 0 symbolically from its piece list.
PhiClassification classify_orlicz_phi(const OrliczFunction& phi);

enum class SubspaceVerdict { Compatible, Incompatible, NotApplicable };

struct OrliczSubspaceResult {
    SubspaceVerdict verdict = SubspaceVerdict::NotApplicable;
    std::string reason;
    double gamma = 1.0;  // fitted common scale in the equivalent-not-similar case
};

/// Test the standardized kernel functionals of a candidate 1-complemented
/// subspace against the necessary support/scale conditions.
OrliczSubspaceResult orlicz_subspace_verdict(const OrliczSpec& s,
                                             const std::vector<FunctionalVec>& fs,
                                             bool contains_basis_vector);

/// Disjoint index blocks with signs; spans of signed constant-coefficient
/// block vectors.
struct BlockSpec {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::vector<double>> signs;  // +-1 per index, aligned with blocks
};

/// Kernel-form spec of the norm-one projection onto the span of the signed
/// block vectors (within-block averaging, identity outside).
ProjectionSpec build_averaging_projection(const SpaceSpec& s, const BlockSpec& b);

struct DisjointSpanSpec {
    std::vector<Vector> xs;  // mutually disjointly supported
};

enum class DisjointSpanCond { CondA, CondB, Neither };

/// Which necessary condition the disjointly supported family satisfies:
/// CondA (w = 1 up to the total support count) or CondB (constant moduli
/// within each vector). CondA preferred when both hold.
DisjointSpanCond disjoint_span_conditions(const LorentzSpec& s, const DisjointSpanSpec& d);

/// Sampled test of p-convexity with constant 1; false is a sound refutation.
bool p_convexity_sample_check(const SpaceSpec& s, double p, int trials = 2000,
                              std::uint64_t seed = 0);

}  // namespace seqspace
