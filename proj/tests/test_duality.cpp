#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "seqspace/duality.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/spaces.hpp"

using namespace seqspace;

namespace {

// brute-force dual norm on a 2d sphere grid of the primal unit ball
double grid_dual_2d(const SpaceSpec& s, const FunctionalVec& g) {
    double best = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        const double th = 2.0 * M_PI * i / N;
        Vector x = {std::cos(th), std::sin(th)};
        const double n = space_norm(s, x);
        best = std::max(best, dot(g, x) / n);
    }
    return best;
}

std::vector<SpaceSpec> sample_spaces() {
    return {
        LorentzSpec({1, 0.8, 0.6, 0.4}, 2.0),
        LorentzSpec({1, 0.9, 0.5, 0.25}, 3.0),
        LorentzSpec({1, 1, 1, 1}, 1.5),
        OrliczSpec(OrliczFunction::power(2.5), OrliczFlavor::Luxemburg, 4),
        OrliczSpec(OrliczFunction::square_with_affine_patch(0.6), OrliczFlavor::Luxemburg, 4),
        OrliczSpec(OrliczFunction::power(1.7), OrliczFlavor::OrliczNorm, 4),
    };
}

}  // namespace

TEST_CASE("dual norm closed and grid cases") {
    SpaceSpec l2 = LorentzSpec({1, 1}, 2.0);
    CHECK(dual_norm(l2, {3, 4}) == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(dual_norm(l2, {0, 0}) == 0.0);

    // w=(1,0), p=1: the norm is max(|x1|,|x2|), so the dual of (1,1) is the
    // l1 value 2 (grid oracle agrees)
    SpaceSpec winf = LorentzSpec({1, 0}, 1.0);
    const double oracle = grid_dual_2d(winf, {1, 1});
    CHECK(oracle == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(dual_norm(winf, {1, 1}) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("norming functional closed forms") {
    SpaceSpec l2 = LorentzSpec({1, 1}, 2.0);
    const FunctionalVec g = norming_functional(l2, {2, 1});
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-12));

    SpaceSpec lw = LorentzSpec({1, 0.8, 0.6}, 2.0);
    const FunctionalVec ge = norming_functional(lw, {1, 0, 0});
    CHECK(ge[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ge[1] == doctest::Approx(0.0));
    CHECK(ge[2] == doctest::Approx(0.0));

    // middle tie block {1,2} of x gets the averaged weight (w2+w3)/2 = 0.7
    SpaceSpec lw4 = LorentzSpec({1, 0.8, 0.6, 0.4}, 2.0);
    const FunctionalVec gm = norming_functional(lw4, {1, 1, 0.5, 2});
    CHECK(gm[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(gm[1] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(gm[2] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(gm[3] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("norming extremes") {
    SpaceSpec lw = LorentzSpec({1, 0.5}, 2.0);
    auto ex = norming_extremes(lw, {1, 1});
    REQUIRE(ex.size() == 2);
    std::sort(ex.begin(), ex.end(),
              [](const FunctionalVec& a, const FunctionalVec& b) { return a[0] > b[0]; });
    CHECK(ex[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ex[0][1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ex[1][0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ex[1][1] == doctest::Approx(1.0).epsilon(1e-12));

    // strictly decreasing moduli, p>1: unique norming functional
    SpaceSpec lw3 = LorentzSpec({1, 0.8, 0.6}, 2.0);
    CHECK(norming_extremes(lw3, {3, 2, 1}).size() == 1);

    CHECK_THROWS_AS(norming_extremes(lw3, {0, 0, 0}), ParamOutOfRange);
}

TEST_CASE("is_norming_pair basics") {
    SpaceSpec l2 = LorentzSpec({1, 1}, 2.0);
    CHECK(is_norming_pair(l2, {1, 0}, {1, 0}, 1e-6));
    CHECK_FALSE(is_norming_pair(l2, {1, 0}, {0, 1}, 1e-6));

    SpaceSpec lw = LorentzSpec({1, 0.8, 0.6}, 2.0);
    const Vector x = {3, 2, 1};
    CHECK(is_norming_pair(lw, x, norming_functional(lw, x), 1e-6));
}

TEST_CASE("norming functional passes the pair check on random inputs") {
    Rng rng(23);
    for (const auto& s : sample_spaces())
        for (int t = 0; t < 15; ++t) {
            Vector x = rng.gaussian_vector(4);
            const FunctionalVec g = norming_functional(s, x);
            CHECK(is_norming_pair(s, x, g, 1e-6));
            for (const auto& e : norming_extremes(s, x, 16, 5))
                CHECK(is_norming_pair(s, x, e, 1e-6));
        }
}

TEST_CASE("scaling covariance and sign equivariance") {
    Rng rng(29);
    for (const auto& s : sample_spaces())
        for (int t = 0; t < 10; ++t) {
            Vector x = rng.gaussian_vector(4);
            const double alpha = rng.uniform(0.2, 4.0);
            Vector ax = x, fx = x;
            for (auto& v : ax) v *= alpha;
            fx[2] = -fx[2];
            const FunctionalVec g = norming_functional(s, x);
            const FunctionalVec ga = norming_functional(s, ax);
            const FunctionalVec gf = norming_functional(s, fx);
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(ga[i] == doctest::Approx(alpha * g[i]).epsilon(1e-10));
                CHECK(gf[i] ==
                      doctest::Approx(i == 2 ? -g[i] : g[i]).epsilon(1e-10));
            }
        }
}

TEST_CASE("extremes at a tied pair each maximize over the dual ball") {
    // grid oracle: both extreme functionals attain the dual norm at x=(1,1)
    SpaceSpec lw = LorentzSpec({1, 0.5}, 2.0);
    const Vector x = {1, 1};
    const double nx = space_norm(lw, x);
    for (const auto& e : norming_extremes(lw, x)) {
        CHECK(dot(e, x) == doctest::Approx(nx * nx).epsilon(1e-10));
        CHECK(dual_norm(lw, e) == doctest::Approx(nx).epsilon(1e-6));
    }
}

TEST_CASE("dual norm is monotone in budget") {
    SpaceSpec s = LorentzSpec({1, 0.8, 0.6, 0.4}, 2.0);
    const FunctionalVec g = {0.3, -1.2, 0.7, 0.1};
    const double lo = dual_norm(s, g, SearchBudget{2, 20}, 9);
    const double hi = dual_norm(s, g, SearchBudget{32, 200}, 9);
    CHECK(hi >= lo - 1e-12);
}
