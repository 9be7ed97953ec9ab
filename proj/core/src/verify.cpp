#include "seqspace/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "seqspace/duality.hpp"
#include "seqspace/operators.hpp"
#include "seqspace/positivity.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/theorems.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

// strictly convex C1 function from two power segments, scaled to phi(1) = 1
OrliczFunction random_smooth_phi(Rng& rng) {
    const double q1 = 1.5 + rng.uniform() * 1.5;
    const double c1 = 0.3 + rng.uniform();
    const double t1 = 0.3 + rng.uniform() * 0.5;
    const double q2 = 1.5 + rng.uniform() * 1.5;
    const double c2 = 0.2 + rng.uniform();
    const double d1 = c1 * q1 * std::pow(t1, q1 - 1.0);  // derivative continuity at t1
    PiecewisePower raw({Segment{0.0, 0.0, c1, q1}, Segment{t1, d1, c2, q2}});
    const double v1 = raw(1.0);
    std::vector<Segment> scaled = {Segment{0.0, 0.0, c1 / v1, q1},
                                   Segment{t1, d1 / v1, c2 / v1, q2}};
    return OrliczFunction(PiecewisePower(std::move(scaled)));
}

SpaceSpec random_symmetric_space(Rng& rng, std::size_t dim) {
    if (rng.coin()) {
        std::vector<double> w(dim, 1.0);
        double cur = 1.0;
        for (std::size_t i = 1; i < dim; ++i) {
            cur *= 0.6 + 0.4 * rng.uniform();
            w[i] = cur;
        }
        return LorentzSpec(std::move(w), 1.25 + rng.uniform() * 1.75);
    }
    const OrliczFlavor fl = rng.coin() ? OrliczFlavor::Luxemburg : OrliczFlavor::OrliczNorm;
    return OrliczSpec(random_smooth_phi(rng), fl, dim);
}

// the rank-one refutation protocol shared by cases 2 and 3
bool refute_all_u(const LorentzSpec& s, const FunctionalVec& f, Check& chk,
                  const std::string& label) {
    std::vector<Vector> us;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double u1 = -1.5 + 3.0 * i / 9.0;
            const double u2 = -1.5 + 3.0 * j / 9.0;
            us.push_back(Vector{u1, u2, 1.0 - u1 - u2});
        }
    Rng rng(7);
    while (us.size() < 164) {
        Vector u = rng.gaussian_vector(3);
        const double fu = dot(f, u);
        if (std::abs(fu) < 0.05) continue;
        for (double& v : u) v /= fu;
        us.push_back(std::move(u));
    }
    for (std::size_t k = 0; k < us.size(); ++k) {
        auto w = refute_lorentz_hyperplane(s, f, us[k], SearchBudget{64, 400});
        bool ok = w.has_value() && w->value < -1e-8;
        if (!ok) {
            ProjectionSpec ps{{f}, {us[k]}};
            const auto rep =
                positivity_scan(SpaceSpec{s}, rank_sum_operator(ps, 3), SearchBudget{64, 200}, 11);
            ok = rep.verdict == Verdict::Refuted && rep.inf_sup_value < -1e-8;
        }
        if (!ok) {
            std::ostringstream os;
            os << label << ": u index " << k << " not refuted";
            chk.expect(false, os.str());
            return false;
        }
    }
    return true;
}

AcResult ac1() {
    Check chk;
    SpaceSpec s = LorentzSpec({1.0, 1.0, 1.0, 0.0}, 2.0);
    // averaging pair on the first three coordinates plus annihilation of the
    // fourth; the rank-1 version alone has norm > 1 (take x = (-1,1,1,1))
    ProjectionSpec ps{{{1.0, 1.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}},
                      {{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}, {0.0, 0.0, 0.0, 1.0}}};
    const LinearOperator P = build_projection(ps, 4);
    const double nrm = operator_norm(s, P, SearchBudget{48, 150}, 5).value;
    chk.expect(nrm >= 1.0 - 1e-9 && nrm <= 1.0 + 1e-6, "projection norm outside [1-1e-9, 1+1e-6]");
    const PropACheck pc = prop_a_check(s, ps, SearchBudget{32, 100}, 5);
    chk.expect(pc.positivity_of_rank_sum.verdict == Verdict::Positive, "rank sum not Positive");
    chk.expect(pc.consistent, "prop_a_check inconsistent");
    return AcResult{1, "lorentz-example", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac2() {
    Check chk;
    LorentzSpec s({1.0, 0.8, 0.6}, 2.0);
    refute_all_u(s, {1.0, 1.0, 1.0}, chk, "w=(1,.8,.6) p=2");
    return AcResult{2, "lorentz-hyperplane-refutation", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac3() {
    Check chk;
    LorentzSpec s({1.0, 1.0, 1.0}, 3.0);
    refute_all_u(s, {1.0, 1.0, 1.0}, chk, "w=1 p=3");
    return AcResult{3, "lorentz-p3-refutation", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac4() {
    Check chk;
    Rng rng(21);
    for (int t = 0; t < 20 && chk.ok; ++t) {
        const std::size_t n = 2 + rng.integer(5);  // 2..6
        SpaceSpec s = LorentzSpec(std::vector<double>(n, 1.0), 2.0);
        Vector f = rng.gaussian_vector(n);
        double nf = std::sqrt(dot(f, f));
        if (nf < 0.1) continue;
        for (double& v : f) v /= nf;
        const MinProjResult mp =
            minimal_projection_search(s, {f}, SearchBudget{4, 60}, 100 + t);
        chk.expect(mp.norm_estimate <= 1.0 + 1e-6, "minimal projection misses norm 1");
        const PropACheck pc = prop_a_check(s, mp.best, SearchBudget{12, 80}, 100 + t);
        chk.expect(pc.consistent, "prop_a_check inconsistent on minimizer");
    }
    return AcResult{4, "l2-minimal-projections", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac5() {
    Check chk;
    const OrliczFunction phi = OrliczFunction::square_with_affine_patch(0.6);
    const std::size_t m = 3, d = 3 * m;
    OrliczSpec s(phi, OrliczFlavor::Luxemburg, d);

    // F: coordinates 3-periodic, each period summing to zero
    Eigen::MatrixXd B(d, 2);
    B.setZero();
    for (std::size_t j = 0; j < m; ++j) {
        B(3 * j + 0, 0) = 1.0;
        B(3 * j + 1, 0) = -1.0;
        B(3 * j + 1, 1) = 1.0;
        B(3 * j + 2, 1) = -1.0;
    }
    const Eigen::MatrixXd Q = B * (B.transpose() * B).inverse() * B.transpose();

    Rng rng(33);
    for (int t = 0; t < 1000 && chk.ok; ++t) {
        const double a = rng.normal(), b = rng.normal();
        Vector x(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) x[i] = a * B(i, 0) + b * B(i, 1);
        double l2 = 0.0;
        for (double v : x) l2 += v * v;
        l2 = std::sqrt(l2);
        const double lx = luxemburg_norm(s, x);
        chk.expect(std::abs(lx - l2) <= 1e-9 * std::max(1.0, l2),
                   "norm on F differs from the euclidean norm");
    }
    for (int t = 0; t < 10000 && chk.ok; ++t) {
        Vector x = rng.gaussian_vector(d);
        Vector qx(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) qx[i] += Q(i, j) * x[j];
        chk.expect(luxemburg_norm(s, qx) <= luxemburg_norm(s, x) * (1.0 + 1e-9),
                   "orthogonal projection expands the norm");
    }
    return AcResult{5, "orlicz-patch-example", chk.ok, chk.detail.str(), 0.0};
}

// independent value for the Amemiya form: pick k with conjugate modular 1 on
// y_i = phi'(k |x_i|); then sum |x_i| y_i is the dual pairing value
double orlicz_norm_via_conjugate_ball(const OrliczFunction& phi, const Vector& x) {
    const PiecewisePower psi = young_conjugate(phi);
    auto conj_modular = [&](double k) {
        double mres = 0.0;
        for (double xi : x)
            if (xi != 0.0) mres += psi(phi.right_derivative(k * std::abs(xi)));
        return mres;
    };
    double lo = 1e-9, hi = 1.0;
    while (conj_modular(hi) < 1.0 && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (conj_modular(mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double k = 0.5 * (lo + hi);
    double val = 0.0;
    for (double xi : x) val += std::abs(xi) * phi.right_derivative(k * std::abs(xi));
    return val;
}

AcResult ac6() {
    Check chk;
    Rng rng(55);
    for (int t = 0; t < 100 && chk.ok; ++t) {
        const OrliczFunction phi = random_smooth_phi(rng);
        const std::size_t d = 2 + rng.integer(5);
        Vector x = rng.gaussian_vector(d);
        const double direct = orlicz_norm(phi, x);
        const double viaball = orlicz_norm_via_conjugate_ball(phi, x);
        chk.expect(std::abs(direct - viaball) <= 1e-7 * std::max(1.0, std::abs(direct)),
                   "Amemiya value disagrees with the conjugate-ball value");
    }
    return AcResult{6, "amemiya-agreement", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac7() {
    Check chk;
    Rng rng(77);
    for (int t = 0; t < 50 && chk.ok; ++t) {
        const std::size_t d = 3 + rng.integer(6);  // 3..8
        SpaceSpec s = random_symmetric_space(rng, d);
        // random disjoint blocks over a shuffled index set, first block size >= 2
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        for (std::size_t i = d; i > 1; --i) std::swap(idx[i - 1], idx[rng.integer(i)]);
        BlockSpec b;
        std::size_t pos = 0;
        while (pos < d) {
            std::size_t len = (pos == 0 ? 2 : 1) + rng.integer(3);
            len = std::min(len, d - pos);
            std::vector<std::size_t> blk(idx.begin() + static_cast<long>(pos),
                                         idx.begin() + static_cast<long>(pos + len));
            std::vector<double> sg;
            for (std::size_t i = 0; i < len; ++i) sg.push_back(rng.coin() ? 1.0 : -1.0);
            b.blocks.push_back(std::move(blk));
            b.signs.push_back(std::move(sg));
            pos += len;
            if (rng.coin()) break;  // leave the tail untouched by any block
        }
        const ProjectionSpec ps = build_averaging_projection(s, b);
        if (ps.fs.empty()) continue;
        const PropACheck pc = prop_a_check(s, ps, SearchBudget{16, 80}, 300 + t);
        if (!pc.consistent) {
            std::ostringstream os;
            os << "averaging projection inconsistent at trial " << t;
            chk.expect(false, os.str());
        }
    }
    return AcResult{7, "averaging-consistency", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac8() {
    Check chk;
    Rng rng(99);
    int done = 0;
    while (done < 20 && chk.ok) {
        const std::size_t n = 3 + rng.integer(3);  // 3..5
        FunctionalVec f(n);
        for (auto& v : f) v = 0.5 + 1.5 * rng.uniform();
        std::sort(f.begin(), f.end(), std::greater<>());
        WitnessParams wb = witness_bounds(f, 0.0, 0.0);
        if (wb.eta <= 1e-3) continue;
        const double a = wb.eta * (0.1 + 0.8 * rng.uniform());
        wb = witness_bounds(f, a, 0.0);
        if (wb.delta_a <= 1e-6) continue;
        wb.eps = (rng.coin() ? 1.0 : -1.0) * wb.delta_a * (0.1 + 0.8 * rng.uniform());
        const Vector x = witness_x(f, wb, WitnessVariant::A1);

        std::vector<double> w(n, 1.0);
        double cur = 1.0;
        for (std::size_t i = 1; i < n; ++i) {
            cur *= 0.7 + 0.3 * rng.uniform();
            w[i] = cur;
        }
        const double p = 1.5 + 1.5 * rng.uniform();
        LorentzSpec s(w, p);

        double S = 0.0;
        for (std::size_t i = 0; i + 2 < n; ++i) S += f[i];
        double wmid = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) wmid += w[i];
        wmid /= double(n - 2);
        FunctionalVec display(n, wmid);
        display[n - 2] = -std::pow(S * a / f[n - 2] + wb.eps, p - 1.0) * w[n - 1];
        display[n - 1] = -std::pow(S * (1.0 - a) / f[n - 1] + wb.eps, p - 1.0);

        const double scale = std::pow(lorentz_norm(s, x), p - 2.0);
        const FunctionalVec g = norming_functional(SpaceSpec{s}, x);
        for (std::size_t i = 0; i < n; ++i)
            chk.expect(std::abs(g[i] * scale - display[i]) <= 1e-10,
                       "norming functional differs from the closed-form display");
        ++done;
    }
    return AcResult{8, "norming-display", chk.ok, chk.detail.str(), 0.0};
}

AcResult ac9() {
    Check chk;
    {
        const PhiClassification c = classify_orlicz_phi(OrliczFunction::power(3.0));
        chk.expect(c.kind == PhiClass::SimilarTo && c.p == 3.0 && std::abs(c.C - 1.0) < 1e-12,
                   "t^3 not SimilarTo(3,1)");
    }
    {
        const PhiClassification c =
            classify_orlicz_phi(OrliczFunction::square_with_affine_patch(0.6));
        chk.expect(c.kind == PhiClass::SimilarTo && c.p == 2.0 && std::abs(c.C - 1.0) < 1e-12,
                   "patched square not SimilarTo(2,1)");
    }
    OrliczFunction mixed = [] {
        PiecewisePower raw({Segment{0.0, 0.5, 0.5, 2.0}});
        const double v = raw(1.0);
        return OrliczFunction(PiecewisePower({Segment{0.0, 0.5 / v, 0.5 / v, 2.0}}));
    }();
    {
        const PhiClassification c = classify_orlicz_phi(mixed);
        chk.expect(c.kind == PhiClass::EquivalentTo && c.p == 1.0,
                   "mixed linear+power piece not EquivalentTo(1)");
    }
    {
        OrliczSpec s(mixed, OrliczFlavor::Luxemburg, 4);
        auto r = orlicz_subspace_verdict(s, {{1.0, -1.0, 0.0, 0.0}}, true);
        chk.expect(r.verdict == SubspaceVerdict::Compatible && std::abs(r.gamma - 1.0) < 1e-9,
                   "equal-moduli pair not Compatible with gamma 1");
        r = orlicz_subspace_verdict(s, {{1.0, 1.0, 1.0, 0.0}}, true);
        chk.expect(r.verdict == SubspaceVerdict::Incompatible && r.reason == "THM41_SUPPORT_GT_2",
                   "support-3 functional not flagged");
        r = orlicz_subspace_verdict(s, {{1.0, 2.0, 0.0, 0.0}}, true);
        chk.expect(r.verdict == SubspaceVerdict::Compatible && std::abs(r.gamma - 2.0) < 1e-6,
                   "geometric-scale pair not Compatible with gamma 2");
    }
    // regularity predicates across a parameter sweep
    int cases = 0;
    for (double w2 : {1.0, 0.5, 0.0})
        for (double p : {1.0, 2.0, 3.0}) {
            SpaceSpec s = LorentzSpec({1.0, w2, w2 * 0.5}, p);
            chk.expect(has_property_P(s) == (w2 > 0.0), "Lorentz P predicate off");
            chk.expect(has_property_Q(s) == (p > 1.0), "Lorentz Q predicate off");
            ++cases;
        }
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
        SpaceSpec s = OrliczSpec(OrliczFunction::power(q), OrliczFlavor::Luxemburg, 3);
        chk.expect(has_property_P(s), "power phi should have P");
        chk.expect(has_property_Q(s) == (q > 1.0), "Orlicz Q predicate off");
        ++cases;
    }
    for (double knee : {0.2, 0.3, 0.5, 0.6, 0.8}) {
        SpaceSpec s =
            OrliczSpec(OrliczFunction::square_with_affine_patch(knee), OrliczFlavor::Luxemburg, 3);
        chk.expect(has_property_P(s) && has_property_Q(s), "patched square predicates off");
        ++cases;
    }
    for (double fl : {0.0, 1.0}) {
        Rng rng(400 + static_cast<std::uint64_t>(fl));
        SpaceSpec s = OrliczSpec(random_smooth_phi(rng),
                                 fl > 0.5 ? OrliczFlavor::OrliczNorm : OrliczFlavor::Luxemburg, 3);
        chk.expect(has_property_P(s) && has_property_Q(s), "smooth phi predicates off");
        ++cases;
    }
    chk.expect(cases >= 20, "fewer than 20 parameterized spaces covered");
    return AcResult{9, "classification-suite", chk.ok, chk.detail.str(), 0.0};
}

AcResult timed(AcResult (*fn)()) {
    const auto t0 = std::chrono::steady_clock::now();
    AcResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

AcResult (*const kCases[9])() = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9};

}  // namespace

std::vector<std::string> acceptance_case_names() {
    return {"lorentz-example",      "lorentz-hyperplane-refutation",
            "lorentz-p3-refutation", "l2-minimal-projections",
            "orlicz-patch-example", "amemiya-agreement",
            "averaging-consistency", "norming-display",
            "classification-suite"};
}

AcResult run_acceptance_case(int id) {
    if (id < 1 || id > 9) throw ParamOutOfRange("acceptance case id must be 1..9");
    return timed(kCases[id - 1]);
}

AcResult run_acceptance_case(const std::string& name) {
    const auto names = acceptance_case_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return run_acceptance_case(static_cast<int>(i) + 1);
    throw ParamOutOfRange("unknown acceptance case: " + name);
}

std::vector<AcResult> run_acceptance_suite() {
    std::vector<AcResult> out;
    for (int id = 1; id <= 9; ++id) out.push_back(run_acceptance_case(id));
    return out;
}

}  // namespace seqspace
