#include "seqspace/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "seqspace/rng.hpp"

namespace seqspace {

namespace {

Eigen::MatrixXd rows_to_matrix(const std::vector<FunctionalVec>& fs) {
    const Eigen::Index n = static_cast<Eigen::Index>(fs.size());
    const Eigen::Index d = static_cast<Eigen::Index>(fs.front().size());
    Eigen::MatrixXd F(n, d);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (static_cast<Eigen::Index>(fs[j].size()) != d)
            throw DimensionMismatch("functionals of unequal length");
        for (Eigen::Index i = 0; i < d; ++i) F(j, i) = fs[j][i];
    }
    return F;
}

}  // namespace

LinearOperator LinearOperator::identity(std::size_t d) {
    LinearOperator T(d);
    for (std::size_t i = 0; i < d; ++i) T.at(i, i) = 1.0;
    return T;
}

Vector LinearOperator::apply(const Vector& x) const {
    if (x.size() != dim) throw DimensionMismatch("LinearOperator::apply: dimension mismatch");
    Vector y(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

LinearOperator LinearOperator::operator-(const LinearOperator& other) const {
    if (dim != other.dim) throw DimensionMismatch("operator-: dimension mismatch");
    LinearOperator T(dim);
    for (std::size_t k = 0; k < m.size(); ++k) T.m[k] = m[k] - other.m[k];
    return T;
}

LinearOperator LinearOperator::operator*(double c) const {
    LinearOperator T(dim);
    for (std::size_t k = 0; k < m.size(); ++k) T.m[k] = m[k] * c;
    return T;
}

StandardizeResult standardize_kernel(const std::vector<FunctionalVec>& fs) {
    if (fs.empty()) throw DependentFunctionals("standardize_kernel: empty family");
    Eigen::MatrixXd F = rows_to_matrix(fs);
    const Eigen::Index n = F.rows(), d = F.cols();
    std::vector<std::size_t> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < d && row < n; ++col) {
        Eigen::Index piv = row;
        double best = std::abs(F(row, col));
        for (Eigen::Index r = row + 1; r < n; ++r)
            if (std::abs(F(r, col)) > best) {
                best = std::abs(F(r, col));
                piv = r;
            }
        if (best < 1e-12) continue;
        F.row(row).swap(F.row(piv));
        F.row(row) /= F(row, col);
        for (Eigen::Index r = 0; r < n; ++r)
            if (r != row && F(r, col) != 0.0) F.row(r) -= F(r, col) * F.row(row);
        pivots.push_back(static_cast<std::size_t>(col));
        ++row;
    }
    if (row < n) throw DependentFunctionals("standardize_kernel: dependent functionals");
    StandardizeResult out;
    out.perm = pivots;
    out.fs.resize(n, FunctionalVec(d, 0.0));
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < d; ++i) out.fs[j][i] = F(j, i);
    return out;
}

LinearOperator rank_sum_operator(const ProjectionSpec& ps, std::size_t dim) {
    LinearOperator T(dim);
    for (std::size_t k = 0; k < ps.fs.size(); ++k) {
        if (ps.fs[k].size() != dim || ps.us[k].size() != dim)
            throw DimensionMismatch("rank_sum_operator: dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) T.at(i, j) += ps.us[k][i] * ps.fs[k][j];
    }
    return T;
}

LinearOperator build_projection(const ProjectionSpec& ps, std::size_t dim) {
    if (ps.fs.size() != ps.us.size())
        throw ParamOutOfRange("build_projection: need matching families");
    if (ps.fs.empty()) return LinearOperator::identity(dim);
    for (std::size_t j = 0; j < ps.fs.size(); ++j)
        for (std::size_t k = 0; k < ps.us.size(); ++k) {
            const double v = dot(ps.fs[j], ps.us[k]);
            const double want = j == k ? 1.0 : 0.0;
            if (std::abs(v - want) > 1e-10)
                throw ParamOutOfRange("build_projection: f_j(u_k) != delta_jk");
        }
    Eigen::MatrixXd U = rows_to_matrix(ps.us);
    if (Eigen::FullPivLU<Eigen::MatrixXd>(U).rank() < static_cast<Eigen::Index>(ps.us.size()))
        throw ParamOutOfRange("build_projection: dependent u family");
    return LinearOperator::identity(dim) - rank_sum_operator(ps, dim);
}

namespace {

double ratio_at(const SpaceSpec& s, const LinearOperator& T, const Vector& x) {
    const double nx = space_norm(s, x);
    if (nx <= 0.0) return 0.0;
    return space_norm(s, T.apply(x)) / nx;
}

// Ascent step direction: transpose(T) applied to the norming functional of Tx.
Vector ascent_direction(const SpaceSpec& s, const LinearOperator& T, const Vector& x) {
    Vector tx = T.apply(x);
    FunctionalVec g;
    try {
        g = norming_functional_unverified(s, tx);
    } catch (...) {
        return {};
    }
    const double ntx = space_norm(s, tx);
    Vector d(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += T.at(i, j) * g[i];
        d[j] = sum / (ntx * ntx);  // gradient of ||Tx|| scaled to unit order
    }
    return d;
}

void opnorm_refine(const SpaceSpec& s, const LinearOperator& T, Vector& x, double& val,
                   int steps) {
    double alpha = 0.5;
    int stale = 0;
    for (int it = 0; it < steps; ++it) {
        Vector d = ascent_direction(s, T, x);
        if (d.empty()) break;
        Vector cand = x;
        for (std::size_t j = 0; j < x.size(); ++j) cand[j] += alpha * d[j];
        const double n = space_norm(s, cand);
        if (n <= 0.0) break;
        for (double& v : cand) v /= n;
        const double r = ratio_at(s, T, cand);
        if (r > val) {
            x = std::move(cand);
            val = r;
            stale = 0;
        } else {
            alpha *= 0.5;
            if (++stale > 30 || alpha < 1e-13) break;
        }
    }
}

std::vector<Vector> sign_patterns(std::size_t n) {
    std::vector<Vector> out;
    if (n > 4) return out;
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < total; ++mask) {
        Vector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

OpNormResult operator_norm(const SpaceSpec& s, const LinearOperator& T, SearchBudget budget,
                           std::uint64_t seed) {
    const std::size_t n = dim_of(s);
    if (T.dim != n) throw DimensionMismatch("operator_norm: dimension mismatch");

    std::vector<Vector> starts;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        starts.push_back(std::move(e));
    }
    for (auto& p : sign_patterns(n)) starts.push_back(std::move(p));
    Rng rng(seed);
    for (int r = 0; r < budget.restarts; ++r) starts.push_back(rng.gaussian_vector(n));

    OpNormResult best;
    best.maximizer.assign(n, 0.0);
    for (auto& s0 : starts) {
        const double nrm = space_norm(s, s0);
        if (nrm <= 0.0) continue;
        Vector x = s0;
        for (double& v : x) v /= nrm;
        double val = ratio_at(s, T, x);
        opnorm_refine(s, T, x, val, budget.steps);
        if (val > best.value) {
            best.value = val;
            best.maximizer = std::move(x);
        }
    }
    return best;
}

MinProjResult minimal_projection_search(const SpaceSpec& s, const std::vector<FunctionalVec>& fs,
                                        SearchBudget budget, std::uint64_t seed) {
    const std::size_t d = dim_of(s);
    const std::size_t n = fs.size();
    Eigen::MatrixXd F = rows_to_matrix(fs);
    if (F.cols() != static_cast<Eigen::Index>(d))
        throw DimensionMismatch("minimal_projection_search: dimension mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
    if (lu.rank() < static_cast<Eigen::Index>(n))
        throw DependentFunctionals("minimal_projection_search: dependent functionals");

    // u(Z) = F^T (F F^T)^{-1} + N Z over the nullspace basis N of F
    const Eigen::MatrixXd U0 = F.transpose() * (F * F.transpose()).inverse();
    const Eigen::MatrixXd N = lu.kernel();  // d x (d-n)
    const Eigen::Index free_dim = N.cols();

    auto spec_from = [&](const Eigen::MatrixXd& Z) {
        Eigen::MatrixXd U = U0;
        if (free_dim > 0) U += N * Z;
        ProjectionSpec ps;
        ps.fs = fs;
        ps.us.resize(n, Vector(d, 0.0));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < d; ++i) ps.us[k][i] = U(i, k);
        return ps;
    };
    const SearchBudget inner{std::max(8, budget.restarts / 4), std::max(60, budget.steps / 2)};
    auto evaluate = [&](const Eigen::MatrixXd& Z) {
        return operator_norm(s, build_projection(spec_from(Z), d), inner, seed).value;
    };

    Rng rng(seed);
    Eigen::MatrixXd best_z = Eigen::MatrixXd::Zero(free_dim, n);
    double best = evaluate(best_z);

    for (int r = 0; r < budget.restarts && free_dim > 0; ++r) {
        Eigen::MatrixXd Z(free_dim, n);
        for (Eigen::Index i = 0; i < Z.rows(); ++i)
            for (Eigen::Index j = 0; j < Z.cols(); ++j) Z(i, j) = rng.normal();
        double val = evaluate(Z);
        // shrinking random perturbation descent
        double sigma = 0.5;
        for (int it = 0; it < budget.steps / 10; ++it) {
            Eigen::MatrixXd Zc = Z;
            for (Eigen::Index i = 0; i < Zc.rows(); ++i)
                for (Eigen::Index j = 0; j < Zc.cols(); ++j) Zc(i, j) += sigma * rng.normal();
            const double v = evaluate(Zc);
            if (v < val - 1e-12) {
                Z = Zc;
                val = v;
            } else {
                sigma *= 0.7;
                if (sigma < 1e-8) break;
            }
        }
        if (val < best - 1e-12) {
            best = val;
            best_z = Z;
        }
    }

    MinProjResult out;
    out.best = spec_from(best_z);
    out.norm_estimate = operator_norm(s, build_projection(out.best, d), budget, seed).value;
    return out;
}

}  // namespace seqspace
