#include "seqspace/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "seqspace/rng.hpp"

namespace seqspace {

namespace {

Vector unit(std::size_t d, std::size_t i, double v = 1.0) {
    Vector e(d, 0.0);
    e[i] = v;
    return e;
}

double pair_norm(const SpaceSpec& s, std::size_t i, std::size_t j, double eps) {
    Vector x = unit(dim_of(s), i);
    x[j] = eps;
    return space_norm(s, x);
}

}  // namespace

bool sampled_property_P(const SpaceSpec& s) {
    const std::size_t d = dim_of(s);
    if (d < 2) return true;
    const std::size_t pairs = d <= 4 ? d : 1;  // symmetric norm: one pair represents all
    for (std::size_t i = 0; i < pairs; ++i)
        for (std::size_t j = 0; j < (d <= 4 ? d : std::size_t{2}); ++j) {
            if (i == j) continue;
            for (double eps : {1e-1, 1e-2, 1e-3, 1e-4})
                if (pair_norm(s, i, j, eps) <= 1.0 + 1e-12) return false;
        }
    return true;
}

bool sampled_property_Q(const SpaceSpec& s) {
    const std::size_t d = dim_of(s);
    if (d < 2) return true;
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
        double slope = 0.0;
        slope = std::max(slope, (pair_norm(s, 0, 1, eps) - 1.0) / eps);
        if (slope > prev + 1e-12) return false;  // not decreasing toward 0
        prev = slope;
        last = slope;
    }
    return last < 0.05;
}

namespace {

void check_sorted_positive(const FunctionalVec& f) {
    if (f.size() < 3) throw ParamOutOfRange("witness: need at least 3 coordinates");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] <= 0.0) throw ParamOutOfRange("witness: f must be positive");
        if (i > 0 && f[i] > f[i - 1] + 1e-12)
            throw ParamOutOfRange("witness: f must be non-increasing");
    }
}

}  // namespace

WitnessParams witness_bounds(const FunctionalVec& f, double a, double eps) {
    check_sorted_positive(f);
    const std::size_t n = f.size();
    double S = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) S += f[i];
    WitnessParams p;
    p.a = a;
    p.eps = eps;
    p.eta = std::min(f[n - 2] / S, 1.0 - f[n - 1] / S);
    p.delta_a = std::min({S * (1.0 - a) / f[n - 1] - 1.0, 1.0 - S * a / f[n - 2],
                          S * a / f[n - 2]});
    p.eps1 = std::min(S / f[n - 2] - 1.0, 1.0);
    if (n == 3)
        p.eps_a = std::min(1.0 - a, 0.5 * (a - (f[0] / f[2]) * (1.0 - a)));
    return p;
}

Vector witness_x(const FunctionalVec& f, const WitnessParams& params, WitnessVariant variant) {
    check_sorted_positive(f);
    const std::size_t n = f.size();
    const double a = params.a, eps = params.eps;
    switch (variant) {
        case WitnessVariant::General:
            if (a < 0.0 || a > 1.0 || eps < -1.0 || eps > 1.0)
                throw ParamOutOfRange("witness_x: (a, eps) outside [0,1] x [-1,1]");
            break;
        case WitnessVariant::A1:
            if (!(a > 0.0 && a < params.eta && std::abs(eps) < params.delta_a))
                throw ParamOutOfRange("witness_x: (a, eps) outside the A1 range");
            break;
        case WitnessVariant::A2:
            if (!(a == 1.0 && std::abs(eps) < params.eps1))
                throw ParamOutOfRange("witness_x: (a, eps) outside the A2 range");
            break;
        case WitnessVariant::A3:
            if (!(n == 3 && std::abs(f[0] - f[1]) < 1e-12 && a > f[1] / (f[1] + f[2]) &&
                  a < 1.0 && std::abs(eps) < params.eps_a))
                throw ParamOutOfRange("witness_x: (a, eps) outside the A3 range");
            break;
    }
    double S = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) S += f[i];
    Vector x(n, 1.0);
    x[n - 2] = -(S * a / f[n - 2] + eps);
    x[n - 1] = -(S * (1.0 - a) / f[n - 1] + eps);
    return x;
}

LorentzHyperplaneResult lorentz_hyperplane_verdict(const LorentzSpec& s, const FunctionalVec& f) {
    if (s.p <= 1.0) throw PreconditionViolation("lorentz_hyperplane_verdict: requires p > 1");
    if (s.dim < 2 || s.w[1] <= 0.0)
        throw PreconditionViolation("lorentz_hyperplane_verdict: requires w_2 > 0");
    if (f.size() != s.dim)
        throw DimensionMismatch("lorentz_hyperplane_verdict: dimension mismatch");
    std::size_t n = 0;
    std::vector<double> mods;
    for (double v : f)
        if (std::abs(v) > 1e-12) {
            ++n;
            mods.push_back(std::abs(v));
        }
    if (n == 0) throw PreconditionViolation("lorentz_hyperplane_verdict: f = 0");

    LorentzHyperplaneResult out;
    if (n > 2) {
        if (std::abs(s.p - 2.0) > 1e-12) {
            out.verdict = HyperplaneVerdict::Impossible;
            out.reason = "THM31_P_NOT_2";
            return out;
        }
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(s.w[k] - 1.0) > 1e-12) {
                out.verdict = HyperplaneVerdict::Impossible;
                out.reason = "THM31_WEIGHT_NOT_1";
                return out;
            }
    } else if (n == 2) {
        const bool unequal = std::abs(mods[0] - mods[1]) > 1e-12;
        bool weight_off = false;
        for (std::size_t k = 0; k < 2; ++k)
            if (std::abs(s.w[k] - 1.0) > 1e-12) weight_off = true;
        if (unequal && weight_off) {
            out.verdict = HyperplaneVerdict::Impossible;
            out.reason = "COR34_UNEQUAL_MODULI";
            return out;
        }
    }
    out.verdict = HyperplaneVerdict::PossiblyOne;
    return out;
}

namespace {

struct OrderedSupport {
    std::vector<std::size_t> idx;  // rank -> original coordinate
    FunctionalVec g;               // sorted positive moduli of f on the support
};

double nu_rank_one(const LorentzSpec& s, const FunctionalVec& f, const Vector& u,
                   const Vector& x, FunctionalVec* argmax) {
    const double fx = dot(f, x);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : norming_extremes(SpaceSpec{s}, x, 64, 0)) {
        const double v = fx * dot(e, u);
        if (v > best) {
            best = v;
            if (argmax) *argmax = e;
        }
    }
    return best;
}

}  // namespace

std::optional<RefuteWitness> refute_lorentz_hyperplane(const LorentzSpec& s,
                                                       const FunctionalVec& f, const Vector& u,
                                                       SearchBudget budget) {
    const std::size_t d = s.dim;
    if (f.size() != d || u.size() != d)
        throw DimensionMismatch("refute_lorentz_hyperplane: dimension mismatch");
    if (std::abs(dot(f, u) - 1.0) > 1e-8)
        throw PreconditionViolation("refute_lorentz_hyperplane: f(u) must equal 1");

    OrderedSupport os;
    for (std::size_t i = 0; i < d; ++i)
        if (std::abs(f[i]) > 1e-12) os.idx.push_back(i);
    std::stable_sort(os.idx.begin(), os.idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(f[a]) > std::abs(f[b]);
    });
    const std::size_t n = os.idx.size();
    if (n < 3) return std::nullopt;
    os.g.resize(n);
    for (std::size_t r = 0; r < n; ++r) os.g[r] = std::abs(f[os.idx[r]]);

    // coordinate orderings that permute tied f moduli (symmetry of the norm)
    std::vector<std::vector<std::size_t>> orders;
    {
        std::vector<std::size_t> ord = os.idx;
        orders.push_back(ord);
        std::vector<std::size_t> work = ord;
        std::size_t b0 = 0;
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        for (std::size_t r = 1; r <= n; ++r)
            if (r == n || std::abs(os.g[r] - os.g[b0]) > 1e-12) {
                blocks.emplace_back(b0, r);
                b0 = r;
            }
        // cartesian walk over within-block permutations, capped
        bool more = true;
        while (more && orders.size() < 24) {
            more = false;
            for (auto [lo, hi] : blocks) {
                if (std::next_permutation(work.begin() + static_cast<long>(lo),
                                          work.begin() + static_cast<long>(hi))) {
                    more = true;
                    break;
                }
            }
            if (more && !std::equal(work.begin(), work.end(), orders.front().begin()))
                orders.push_back(work);
        }
    }

    const long max_evals = static_cast<long>(budget.restarts) * budget.steps;
    long evals = 0;
    const double tol = 1e-9;

    auto try_point = [&](const std::vector<std::size_t>& ord, const WitnessParams& wp,
                         WitnessVariant variant) -> std::optional<RefuteWitness> {
        Vector xs;
        try {
            xs = witness_x(os.g, wp, variant);
        } catch (const ParamOutOfRange&) {
            return std::nullopt;
        }
        Vector x(d, 0.0);
        for (std::size_t r = 0; r < n; ++r)
            x[ord[r]] = (f[ord[r]] < 0.0 ? -1.0 : 1.0) * xs[r];
        ++evals;
        FunctionalVec gmax;
        const double v = nu_rank_one(s, f, u, x, &gmax);
        if (v < -tol && nu_rank_one(s, f, u, x, nullptr) < -tol) {
            RefuteWitness w;
            w.x = std::move(x);
            w.xstar = std::move(gmax);
            w.value = v;
            return w;
        }
        return std::nullopt;
    };

    const std::vector<double> eps_mags = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

    for (const auto& ord : orders) {
        // variant A1
        WitnessParams base = witness_bounds(os.g, 0.0, 0.0);
        if (base.eta > 0.0)
            for (int j = 1; j <= 32 && evals < max_evals; ++j) {
                const double a = base.eta * j / 33.0;
                WitnessParams wp = witness_bounds(os.g, a, 0.0);
                std::vector<double> epss = eps_mags;
                epss.push_back(wp.delta_a / 2.0);
                for (double m : epss)
                    for (double sgn : {1.0, -1.0}) {
                        wp.eps = sgn * m;
                        if (std::abs(wp.eps) >= wp.delta_a) continue;
                        if (auto w = try_point(ord, wp, WitnessVariant::A1)) return w;
                    }
            }
        // variant A2
        if (base.eps1 > 0.0) {
            WitnessParams wp = witness_bounds(os.g, 1.0, 0.0);
            std::vector<double> epss = eps_mags;
            epss.push_back(wp.eps1 / 2.0);
            for (double m : epss)
                for (double sgn : {1.0, -1.0}) {
                    if (evals >= max_evals) break;
                    wp.eps = sgn * m;
                    if (std::abs(wp.eps) >= wp.eps1) continue;
                    if (auto w = try_point(ord, wp, WitnessVariant::A2)) return w;
                }
        }
        // variant A3
        if (n == 3 && std::abs(os.g[0] - os.g[1]) < 1e-12) {
            const double lo = os.g[1] / (os.g[1] + os.g[2]);
            for (int j = 1; j <= 32 && evals < max_evals; ++j) {
                const double a = lo + (1.0 - lo) * j / 33.0;
                WitnessParams wp = witness_bounds(os.g, a, 0.0);
                if (wp.eps_a <= 0.0) continue;
                std::vector<double> epss = eps_mags;
                epss.push_back(wp.eps_a / 2.0);
                for (double m : epss)
                    for (double sgn : {1.0, -1.0}) {
                        wp.eps = sgn * m;
                        if (std::abs(wp.eps) >= wp.eps_a) continue;
                        if (auto w = try_point(ord, wp, WitnessVariant::A3)) return w;
                    }
            }
        }
        if (evals >= max_evals) break;
    }
    return std::nullopt;
}

PhiClassification classify_orlicz_phi(const OrliczFunction& phi) {
    const PowerPiece& first = phi.pieces().front();
    PhiClassification out;
    if (first.b == 0.0 && first.c == 0.0) {
        out.kind = PhiClass::NotEquivalentToAnyPower;  // flat near 0
        return out;
    }
    if (first.b > 0.0 && first.c > 0.0) {
        out.kind = PhiClass::EquivalentTo;
        out.p = 1.0;
        return out;
    }
    out.kind = PhiClass::SimilarTo;
    if (first.b > 0.0) {
        out.p = 1.0;
        out.C = first.b;
    } else {
        out.p = first.q;
        out.C = first.c;
    }
    return out;
}

namespace {

bool fit_geometric_scale(const std::vector<double>& mods, double& gamma) {
    std::vector<double> logs;
    for (double m : mods)
        if (std::abs(std::log(m)) > 1e-9) logs.push_back(std::log(m));
    if (logs.empty()) {
        gamma = 1.0;
        return true;
    }
    double base = std::numeric_limits<double>::infinity();
    for (double l : logs) base = std::min(base, std::abs(l));
    for (int k = 1; k <= 64; ++k) {
        const double g = base / k;
        bool ok = true;
        for (double l : logs)
            if (std::abs(l / g - std::round(l / g)) > 1e-7) ok = false;
        if (ok) {
            gamma = std::exp(g);
            return true;
        }
    }
    return false;
}

}  // namespace

OrliczSubspaceResult orlicz_subspace_verdict(const OrliczSpec& s,
                                             const std::vector<FunctionalVec>& fs,
                                             bool contains_basis_vector) {
    if (fs.empty() || s.dim < fs.size() + 2)
        throw PreconditionViolation("orlicz_subspace_verdict: need dim F > 1");
    OrliczSubspaceResult out;
    if (!contains_basis_vector) {
        out.reason = "HYP_NO_BASIS_VECTOR";
        return out;
    }
    if (!has_property_P(SpaceSpec{s})) {
        out.reason = "HYP_PHI_NOT_POSITIVE";
        return out;
    }
    const PhiClassification cls = classify_orlicz_phi(s.phi);
    if (cls.kind == PhiClass::SimilarTo && std::abs(cls.p - 2.0) < 1e-12) {
        out.reason = "HYP_PHI_SIMILAR_T2";
        return out;
    }

    const StandardizeResult std_fs = standardize_kernel(fs);
    std::vector<double> mods;
    for (const auto& f : std_fs.fs) {
        std::size_t card = 0;
        for (double v : f)
            if (std::abs(v) > 1e-9) {
                ++card;
                mods.push_back(std::abs(v));
            }
        if (card > 2) {
            out.verdict = SubspaceVerdict::Incompatible;
            out.reason = "THM41_SUPPORT_GT_2";
            return out;
        }
    }

    if (cls.kind == PhiClass::NotEquivalentToAnyPower) {
        for (double m : mods)
            if (std::abs(m - 1.0) > 1e-9) {
                out.verdict = SubspaceVerdict::Incompatible;
                out.reason = "THM41_MODULI_NOT_UNIT";
                return out;
            }
    } else if (cls.kind == PhiClass::EquivalentTo) {
        double gamma = 1.0;
        if (!fit_geometric_scale(mods, gamma)) {
            out.verdict = SubspaceVerdict::Incompatible;
            out.reason = "THM41_SCALE_VIOLATION";
            return out;
        }
        out.gamma = gamma;
    }
    out.verdict = SubspaceVerdict::Compatible;
    out.reason = "";
    return out;
}

ProjectionSpec build_averaging_projection(const SpaceSpec& s, const BlockSpec& b) {
    const std::size_t d = dim_of(s);
    if (b.blocks.size() != b.signs.size())
        throw ParamOutOfRange("build_averaging_projection: blocks/signs mismatch");
    std::vector<bool> used(d, false);
    ProjectionSpec ps;
    for (std::size_t bi = 0; bi < b.blocks.size(); ++bi) {
        const auto& blk = b.blocks[bi];
        const auto& sg = b.signs[bi];
        if (blk.empty() || blk.size() != sg.size())
            throw ParamOutOfRange("build_averaging_projection: malformed block");
        for (std::size_t j = 0; j < blk.size(); ++j) {
            if (blk[j] >= d) throw ParamOutOfRange("build_averaging_projection: index past dim");
            if (used[blk[j]]) throw ParamOutOfRange("build_averaging_projection: overlap");
            used[blk[j]] = true;
            if (sg[j] != 1.0 && sg[j] != -1.0)
                throw ParamOutOfRange("build_averaging_projection: signs must be +-1");
        }
        const std::size_t m = blk.size();
        // successive signed differences kill deviations from the block vector;
        // u_k chosen so Id - sum u_k f_k averages within the block
        for (std::size_t k = 0; k + 1 < m; ++k) {
            FunctionalVec fk(d, 0.0);
            fk[blk[k]] = sg[k];
            fk[blk[k + 1]] = -sg[k + 1];
            Vector uk(d, 0.0);
            for (std::size_t j = 0; j < m; ++j)
                uk[blk[j]] = sg[j] * ((j <= k ? 1.0 : 0.0) - double(k + 1) / double(m));
            ps.fs.push_back(std::move(fk));
            ps.us.push_back(std::move(uk));
        }
    }
    return ps;
}

DisjointSpanCond disjoint_span_conditions(const LorentzSpec& s, const DisjointSpanSpec& d) {
    std::vector<bool> used(s.dim, false);
    std::size_t sigma = 0;
    for (const auto& x : d.xs) {
        if (x.size() != s.dim) throw DimensionMismatch("disjoint_span_conditions: dim mismatch");
        for (std::size_t i = 0; i < s.dim; ++i)
            if (std::abs(x[i]) > 1e-12) {
                if (used[i]) throw ParamOutOfRange("disjoint_span_conditions: supports overlap");
                used[i] = true;
                ++sigma;
            }
    }
    for (std::size_t v = 0; v < sigma; ++v)
        if (s.w[v] == 0.0)
            throw PreconditionViolation("disjoint_span_conditions: zero weight in range");

    bool cond_a = true;
    for (std::size_t v = 0; v < sigma; ++v)
        if (std::abs(s.w[v] - 1.0) > 1e-12) cond_a = false;
    if (cond_a) return DisjointSpanCond::CondA;

    bool cond_b = true;
    for (const auto& x : d.xs) {
        double mod = -1.0;
        for (double v : x)
            if (std::abs(v) > 1e-12) {
                if (mod < 0.0)
                    mod = std::abs(v);
                else if (std::abs(std::abs(v) - mod) > 1e-12)
                    cond_b = false;
            }
    }
    return cond_b ? DisjointSpanCond::CondB : DisjointSpanCond::Neither;
}

bool p_convexity_sample_check(const SpaceSpec& s, double p, int trials, std::uint64_t seed) {
    if (p < 1.0) throw ParamOutOfRange("p_convexity_sample_check: p must be >= 1");
    const std::size_t d = dim_of(s);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const std::size_t m = 2 + rng.integer(2);
        std::vector<Vector> xs;
        for (std::size_t i = 0; i < m; ++i) xs.push_back(rng.gaussian_vector(d));
        Vector lhs(d, 0.0);
        double rhs = 0.0;
        for (const auto& x : xs) {
            for (std::size_t j = 0; j < d; ++j) lhs[j] += std::pow(std::abs(x[j]), p);
            rhs += std::pow(space_norm(s, x), p);
        }
        for (std::size_t j = 0; j < d; ++j) lhs[j] = std::pow(lhs[j], 1.0 / p);
        if (space_norm(s, lhs) > std::pow(rhs, 1.0 / p) + 1e-9) return false;
    }
    return true;
}

}  // namespace seqspace
