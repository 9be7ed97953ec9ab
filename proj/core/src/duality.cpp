#include "seqspace/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "seqspace/rng.hpp"

namespace seqspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double norm2(const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

Vector normalized_to_sphere(const SpaceSpec& s, Vector x) {
    const double n = space_norm(s, x);
    if (n <= 0.0) return {};
    for (double& v : x) v /= n;
    return x;
}

// Frank-Wolfe style ascent for the linear objective g(x) over the unit ball.
void refine(const SpaceSpec& s, const FunctionalVec& g, Vector& x, double& val, int steps) {
    const double g2 = norm2(g);
    if (g2 == 0.0) return;
    double alpha = 1.0;
    for (int it = 0; it < steps; ++it) {
        Vector cand = x;
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += alpha * g[i] / g2;
        cand = normalized_to_sphere(s, std::move(cand));
        if (cand.empty()) break;
        const double v = dot(g, cand);
        if (v > val) {
            x = std::move(cand);
            val = v;
        } else {
            alpha *= 0.5;
            if (alpha < 1e-14) break;
        }
    }
}

// Pool-adjacent-violators solution of
//   max sum g~_i x_i  s.t.  sum w_i x_i^p = 1,  x non-increasing >= 0,
// for |g| already sorted non-increasingly.  Block values follow the pooled
// ratios (G_B / W_B)^{1/(p-1)}.
Vector lorentz_pooled_profile(const std::vector<double>& gs, const std::vector<double>& w,
                              double p) {
    struct Block {
        double G, W;
        std::size_t len;
    };
    std::vector<Block> blocks;
    auto ratio = [](const Block& b) {
        if (b.W > 0.0) return b.G / b.W;
        return b.G > 0.0 ? kInf : 0.0;
    };
    for (std::size_t i = 0; i < gs.size(); ++i) {
        blocks.push_back({gs[i], w[i], 1});
        while (blocks.size() > 1 && ratio(blocks.back()) > ratio(blocks[blocks.size() - 2])) {
            Block b = blocks.back();
            blocks.pop_back();
            blocks.back().G += b.G;
            blocks.back().W += b.W;
            blocks.back().len += b.len;
        }
    }
    Vector x;
    x.reserve(gs.size());
    for (const Block& b : blocks) {
        double v = 0.0;
        if (b.W > 0.0 && b.G > 0.0) v = std::pow(b.G / b.W, 1.0 / (p - 1.0));
        for (std::size_t k = 0; k < b.len; ++k) x.push_back(v);
    }
    return x;
}

// Generalized inverse of the left derivative: largest t with phi'(t) <= v.
double derivative_inverse(const PiecewisePower& phi, double v) {
    if (v <= 0.0) return 0.0;
    const auto& pieces = phi.pieces();
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const PowerPiece& p = pieces[k];
        const double t1 = (k + 1 < pieces.size()) ? pieces[k + 1].t0 : phi.domain_end();
        const double dhi = p.end_derivative(t1);
        if (v <= p.b) return p.t0;
        if (v <= dhi || k + 1 == pieces.size()) {
            if (p.c <= 0.0) return std::isfinite(t1) ? t1 : kInf;
            const double t = p.t0 + std::pow((v - p.b) / (p.q * p.c), 1.0 / (p.q - 1.0));
            return std::isfinite(t1) ? std::min(t, t1) : t;
        }
    }
    return phi.domain_end();
}

std::vector<Vector> family_candidates(const SpaceSpec& s, const FunctionalVec& g) {
    std::vector<Vector> cands;
    const std::size_t n = g.size();
    if (const auto* l = std::get_if<LorentzSpec>(&s)) {
        Rearrangement r = decreasing_rearrangement(g);
        if (l->p > 1.0) {
            Vector prof = lorentz_pooled_profile(r.sorted, l->w, l->p);
            Vector x(n, 0.0);
            for (std::size_t rank = 0; rank < n; ++rank)
                x[r.order[rank]] = sgn(g[r.order[rank]]) * prof[rank];
            cands.push_back(std::move(x));
        } else {
            // p = 1: the ball's extreme points are signed normalized head vectors
            for (std::size_t k = 1; k <= n; ++k) {
                Vector x(n, 0.0);
                for (std::size_t rank = 0; rank < k; ++rank) {
                    const std::size_t j = r.order[rank];
                    x[j] = g[j] != 0.0 ? sgn(g[j]) : 1.0;
                }
                cands.push_back(std::move(x));
            }
        }
    } else {
        const auto& o = std::get<OrliczSpec>(s);
        if (o.flavor == OrliczFlavor::Luxemburg) {
            // KKT profile: x_j = (phi')^{-1}(|g_j| / mu), mu set by the modular
            double mu_lo = 1e-9, mu_hi = 1.0;
            auto mod_at = [&](double mu) {
                double m = 0.0;
                for (double gi : g) {
                    const double t = derivative_inverse(o.phi, std::abs(gi) / mu);
                    m += std::isfinite(t) ? o.phi(std::min(t, 1e6)) : kInf;
                }
                return m;
            };
            for (double gi : g) mu_hi = std::max(mu_hi, std::abs(gi));
            mu_hi *= 4.0;
            for (int it = 0; it < 120; ++it) {
                const double mu = 0.5 * (mu_lo + mu_hi);
                if (mod_at(mu) > 1.0)
                    mu_lo = mu;
                else
                    mu_hi = mu;
            }
            Vector x(n, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                double t = derivative_inverse(o.phi, std::abs(g[j]) / mu_hi);
                if (!std::isfinite(t)) t = 1e6;
                x[j] = sgn(g[j]) * t;
            }
            cands.push_back(std::move(x));
        } else {
            // dual of the Orlicz norm is the Luxemburg conjugate norm; build the
            // matching maximizer from the conjugate derivative profile
            const PiecewisePower conj = young_conjugate(o.phi);
            Vector gabs(n);
            for (std::size_t j = 0; j < n; ++j) gabs[j] = std::abs(g[j]);
            double lg = 0.0;
            {
                // Luxemburg norm of g under the conjugate (may have finite domain)
                double amax = 0.0, asum = 0.0;
                for (double v : gabs) {
                    amax = std::max(amax, v);
                    asum += v;
                }
                if (amax > 0.0) {
                    double lo = amax * 1e-9, hi = std::max(asum, amax) * 1e9 + 1.0;
                    auto mod = [&](double lam) {
                        double m = 0.0;
                        for (double v : gabs)
                            if (v > 0.0) {
                                const double r = v / lam;
                                m += r > conj.domain_end() ? kInf : conj(r);
                            }
                        return m;
                    };
                    for (int it = 0; it < 200; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (mod(mid) > 1.0)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    lg = hi;
                }
            }
            if (lg > 0.0) {
                Vector x(n, 0.0);
                for (std::size_t j = 0; j < n; ++j) {
                    const double r = std::abs(g[j]) / lg;
                    x[j] = sgn(g[j]) * conj.left_derivative(std::min(r, conj.domain_end()));
                }
                cands.push_back(std::move(x));
            }
        }
    }
    return cands;
}

}  // namespace

DualMax dual_norm_search(const SpaceSpec& s, const FunctionalVec& g, SearchBudget budget,
                         std::uint64_t seed) {
    const std::size_t n = dim_of(s);
    if (g.size() != n) throw DimensionMismatch("dual_norm: dimension mismatch");
    DualMax best;
    best.maximizer.assign(n, 0.0);
    bool all_zero = true;
    for (double v : g)
        if (v != 0.0) all_zero = false;
    if (all_zero) return best;

    std::vector<Vector> starts;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = g[i] >= 0.0 ? 1.0 : -1.0;
        starts.push_back(std::move(e));
    }
    Vector aligned(n);
    for (std::size_t i = 0; i < n; ++i) aligned[i] = g[i];
    starts.push_back(std::move(aligned));
    for (auto& c : family_candidates(s, g)) starts.push_back(std::move(c));

    Rng rng(seed);
    for (int r = 0; r < budget.restarts; ++r) starts.push_back(rng.gaussian_vector(n));

    for (auto& s0 : starts) {
        Vector x = normalized_to_sphere(s, std::move(s0));
        if (x.empty()) continue;
        double val = dot(g, x);
        if (val < 0.0) {
            for (double& v : x) v = -v;
            val = -val;
        }
        refine(s, g, x, val, budget.steps);
        if (val > best.value) {
            best.value = val;
            best.maximizer = std::move(x);
        }
    }
    return best;
}

double dual_norm(const SpaceSpec& s, const FunctionalVec& g, SearchBudget budget,
                 std::uint64_t seed) {
    return dual_norm_search(s, g, budget, seed).value;
}

namespace {

struct TieBlock {
    std::vector<std::size_t> coords;  // original indices, tied moduli
    std::vector<double> weights;      // the rank weights this block occupies
};

// Tie blocks of nonzero moduli together with the weight ranks they span.
std::vector<TieBlock> lorentz_tie_blocks(const LorentzSpec& l, const Vector& x,
                                         const Rearrangement& r) {
    std::vector<TieBlock> blocks;
    std::size_t i = 0;
    while (i < r.sorted.size() && r.sorted[i] > 0.0) {
        std::size_t j = i;
        while (j < r.sorted.size() && r.sorted[j] == r.sorted[i]) ++j;
        TieBlock b;
        for (std::size_t k = i; k < j; ++k) {
            b.coords.push_back(r.order[k]);
            b.weights.push_back(l.w[k]);
        }
        blocks.push_back(std::move(b));
        i = j;
    }
    return blocks;
}

FunctionalVec lorentz_functional_from_assignment(const LorentzSpec& l, const Vector& x,
                                                 const std::vector<TieBlock>& blocks,
                                                 const std::vector<std::vector<double>>& assign) {
    FunctionalVec raw(x.size(), 0.0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t k = 0; k < blocks[b].coords.size(); ++k) {
            const std::size_t j = blocks[b].coords[k];
            raw[j] = sgn(x[j]) * std::pow(std::abs(x[j]), l.p - 1.0) * assign[b][k];
        }
    const double nx = lorentz_norm(l, x);
    const double denom = dot(raw, x);  // equals ||x||^p for any in-block assignment
    if (denom <= 0.0) throw VerificationFailed("lorentz norming: degenerate pairing");
    const double scale = nx * nx / denom;
    for (double& v : raw) v *= scale;
    return raw;
}

FunctionalVec orlicz_functional_from_choices(const OrliczSpec& o, const Vector& x,
                                             const std::vector<double>& derivs) {
    FunctionalVec raw(x.size(), 0.0);
    // zero coordinates carry a signed derivative choice directly
    for (std::size_t j = 0; j < x.size(); ++j)
        raw[j] = x[j] != 0.0 ? sgn(x[j]) * derivs[j] : derivs[j];
    const double nx = space_norm(SpaceSpec{o}, x);
    const double denom = dot(raw, x);
    if (denom <= 0.0) throw VerificationFailed("orlicz norming: flat derivative at every ratio");
    const double scale = nx * nx / denom;
    for (double& v : raw) v *= scale;
    return raw;
}

std::vector<double> orlicz_ratio_point(const OrliczSpec& o, const Vector& x) {
    const double l = o.flavor == OrliczFlavor::Luxemburg ? luxemburg_norm(o, x)
                                                         : amemiya_argmin(o.phi, x);
    std::vector<double> ratios(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) ratios[j] = std::abs(x[j]) / l;
    return ratios;
}

}  // namespace

FunctionalVec norming_functional_unverified(const SpaceSpec& s, const Vector& x) {
    const std::size_t n = dim_of(s);
    if (x.size() != n) throw DimensionMismatch("norming_functional: dimension mismatch");
    bool zero = true;
    for (double v : x)
        if (v != 0.0) zero = false;
    if (zero) throw ParamOutOfRange("norming_functional: x must be nonzero");

    if (const auto* l = std::get_if<LorentzSpec>(&s)) {
        const Rearrangement r = decreasing_rearrangement(x);
        const auto blocks = lorentz_tie_blocks(*l, x, r);
        std::vector<std::vector<double>> assign;
        for (const auto& b : blocks) {
            const double avg =
                std::accumulate(b.weights.begin(), b.weights.end(), 0.0) / b.weights.size();
            assign.emplace_back(b.coords.size(), avg);
        }
        return lorentz_functional_from_assignment(*l, x, blocks, assign);
    }
    const auto& o = std::get<OrliczSpec>(s);
    const auto ratios = orlicz_ratio_point(o, x);
    std::vector<double> derivs(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) derivs[j] = o.phi.left_derivative(ratios[j]);
    return orlicz_functional_from_choices(o, x, derivs);
}

FunctionalVec norming_functional(const SpaceSpec& s, const Vector& x) {
    FunctionalVec g = norming_functional_unverified(s, x);
    // the pairing is exact by construction; the dual-norm search gives a lower
    // bound, so only the one-sided ball containment is checkable
    if (!is_norming_pair(s, x, g, 1e-6))
        throw VerificationFailed("norming_functional: dual-norm check missed tolerance");
    return g;
}

std::vector<FunctionalVec> norming_extremes(const SpaceSpec& s, const Vector& x, std::size_t cap,
                                            std::uint64_t seed) {
    const std::size_t n = dim_of(s);
    if (x.size() != n) throw DimensionMismatch("norming_extremes: dimension mismatch");
    std::vector<FunctionalVec> out;
    out.push_back(norming_functional_unverified(s, x));

    auto push_unique = [&](FunctionalVec g) {
        for (const auto& h : out) {
            double diff = 0.0;
            for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(h[j] - g[j]));
            if (diff <= 1e-12) return;
        }
        if (out.size() < cap + 1) out.push_back(std::move(g));
    };

    Rng rng(seed);
    if (const auto* l = std::get_if<LorentzSpec>(&s)) {
        const Rearrangement r = decreasing_rearrangement(x);
        auto blocks = lorentz_tie_blocks(*l, x, r);

        // per-block distinct weight permutations
        std::vector<std::vector<std::vector<double>>> per_block;
        std::size_t total = 1;
        for (auto& b : blocks) {
            std::vector<std::vector<double>> perms;
            std::vector<double> ws = b.weights;
            std::sort(ws.begin(), ws.end());
            do {
                perms.push_back(ws);
                if (perms.size() > 4 * cap) break;
            } while (std::next_permutation(ws.begin(), ws.end()));
            total = std::min<std::size_t>(total * perms.size(), 8 * cap);
            per_block.push_back(std::move(perms));
        }

        if (total <= cap) {
            out.clear();  // full enumeration supersedes the averaged seed
            std::vector<std::size_t> idx(blocks.size(), 0);
            while (true) {
                std::vector<std::vector<double>> assign;
                for (std::size_t b = 0; b < blocks.size(); ++b)
                    assign.push_back(per_block[b][idx[b]]);
                push_unique(lorentz_functional_from_assignment(*l, x, blocks, assign));
                std::size_t b = 0;
                while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
                if (b == idx.size()) break;
            }
        } else {
            for (std::size_t t = 0; t < cap; ++t) {
                std::vector<std::vector<double>> assign;
                for (std::size_t b = 0; b < blocks.size(); ++b)
                    assign.push_back(per_block[b][rng.integer(per_block[b].size())]);
                push_unique(lorentz_functional_from_assignment(*l, x, blocks, assign));
            }
        }
        return out;
    }

    const auto& o = std::get<OrliczSpec>(s);
    const auto ratios = orlicz_ratio_point(o, x);
    const double d0 = o.phi.right_derivative(0.0);
    std::vector<std::vector<double>> choices(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == 0.0) {
            choices[j] = {0.0};
            if (d0 > 0.0) {
                choices[j].push_back(d0);
                choices[j].push_back(-d0);
            }
            continue;
        }
        const double dl = o.phi.left_derivative(ratios[j]);
        const double dr = o.phi.right_derivative(ratios[j]);
        choices[j] = {dl};
        if (std::isfinite(dr) && dr > dl + 1e-12) choices[j].push_back(dr);
    }
    std::size_t total = 1;
    for (const auto& c : choices) total = std::min<std::size_t>(total * c.size(), 8 * cap);

    auto emit = [&](const std::vector<double>& derivs) {
        // skip sign-flipped zero-coordinate picks that cannot norm anything
        try {
            push_unique(orlicz_functional_from_choices(o, x, derivs));
        } catch (const VerificationFailed&) {
        }
    };
    if (total <= cap) {
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::vector<double> derivs(n);
            for (std::size_t j = 0; j < n; ++j) derivs[j] = choices[j][idx[j]];
            emit(derivs);
            std::size_t j = 0;
            while (j < n && ++idx[j] == choices[j].size()) idx[j++] = 0;
            if (j == n) break;
        }
    } else {
        for (std::size_t t = 0; t < cap; ++t) {
            std::vector<double> derivs(n);
            for (std::size_t j = 0; j < n; ++j) derivs[j] = choices[j][rng.integer(choices[j].size())];
            emit(derivs);
        }
    }
    return out;
}

bool is_norming_pair(const SpaceSpec& s, const Vector& x, const FunctionalVec& g, double tol) {
    const double nx = space_norm(s, x);
    const double pairing = dot(g, x);
    if (std::abs(pairing - nx * nx) > tol * std::max(1.0, nx * nx)) return false;
    return dual_norm(s, g) <= nx * (1.0 + tol);
}

}  // namespace seqspace
