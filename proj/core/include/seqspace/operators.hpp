#pragma once

#include <cstdint>
#include <vector>

#include "seqspace/duality.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

/// Dense operator over the basis, row-major matrix acting on coordinates.
struct LinearOperator {
    std::size_t dim = 0;
    std::vector<double> m;  // dim*dim, row-major

    LinearOperator() = default;
    explicit LinearOperator(std::size_t d) : dim(d), m(d * d, 0.0) {}

    static LinearOperator identity(std::size_t d);

    double& at(std::size_t i, std::size_t j) { return m[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return m[i * dim + j]; }

    Vector apply(const Vector& x) const;
    LinearOperator operator-(const LinearOperator& other) const;
    LinearOperator operator*(double c) const;
};

/// Families {f_j}, {u_j} with f_j(u_k) = delta_{jk}; defines
/// P = Id - sum f_j (x) u_j.
struct ProjectionSpec {
    std::vector<FunctionalVec> fs;
    std::vector<Vector> us;
};

struct StandardizeResult {
    std::vector<FunctionalVec> fs;      // row-reduced: identity block on perm[0..n)
    std::vector<std::size_t> perm;      // pivot column of each functional
};

/// Row-reduce the functionals so that f_j(e_{perm[k]}) = delta_{jk}.
StandardizeResult standardize_kernel(const std::vector<FunctionalVec>& fs);

/// Validates the biorthogonality/independence invariants and returns P.
LinearOperator build_projection(const ProjectionSpec& ps, std::size_t dim);

/// sum f_j (x) u_j  (equals Id - P).
LinearOperator rank_sum_operator(const ProjectionSpec& ps, std::size_t dim);

struct OpNormResult {
    double value = 0.0;  // certified lower bound on ||T||
    Vector maximizer;
};

/// Multistart maximization of ||Tx||/||x||; deterministic given the seed.
OpNormResult operator_norm(const SpaceSpec& s, const LinearOperator& T, SearchBudget budget = {},
                           std::uint64_t seed = 0);

struct MinProjResult {
    ProjectionSpec best;
    double norm_estimate = 0.0;
};

/// Searches the u-families with f_j(u_k) = delta_{jk} for the projection of
/// smallest estimated norm onto the intersection of the kernels.
MinProjResult minimal_projection_search(const SpaceSpec& s, const std::vector<FunctionalVec>& fs,
                                        SearchBudget budget = {}, std::uint64_t seed = 0);

}  // namespace seqspace
