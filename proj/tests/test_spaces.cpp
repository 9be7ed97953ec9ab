#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "seqspace/orlicz_function.hpp"
#include "seqspace/rng.hpp"
#include "seqspace/spaces.hpp"

using namespace seqspace;

namespace {

double lp_norm(const Vector& x, double p) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

// numeric Legendre transform on a fine grid, for conjugate cross-checks
double grid_conjugate(const PiecewisePower& phi, double u, double tmax = 50.0) {
    double best = 0.0;
    const int N = 200000;
    for (int i = 0; i <= N; ++i) {
        const double t = tmax * i / N;
        best = std::max(best, t * u - phi(t));
    }
    return best;
}

}  // namespace

TEST_CASE("decreasing rearrangement") {
    auto r = decreasing_rearrangement({-2.0, 1.0, 3.0});
    CHECK(r.sorted == Vector{3.0, 2.0, 1.0});
    CHECK(r.order == std::vector<std::size_t>{2, 0, 1});

    r = decreasing_rearrangement({0.0, 0.0});
    CHECK(r.sorted == Vector{0.0, 0.0});
    CHECK(r.order == std::vector<std::size_t>{0, 1});

    r = decreasing_rearrangement({1.0, 1.0, -1.0});
    CHECK(r.sorted == Vector{1.0, 1.0, 1.0});
    CHECK(r.order == std::vector<std::size_t>{0, 1, 2});  // stable among ties
}

TEST_CASE("lorentz norm closed forms") {
    CHECK(lorentz_norm(LorentzSpec({1, 1}, 2), {3, 4}) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(lorentz_norm(LorentzSpec({1, 0.5}, 1), {1, 1}) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(lorentz_norm(LorentzSpec({1, 1, 1, 0}, 2), {1, 1, 1, 5}) ==
          doctest::Approx(std::sqrt(27.0)).epsilon(1e-12));
}

TEST_CASE("weight validation") {
    CHECK_THROWS_AS(LorentzSpec({0.5, 0.2}, 2), ParamOutOfRange);   // w[0] != 1
    CHECK_THROWS_AS(LorentzSpec({1.0, 1.2}, 2), ParamOutOfRange);   // increasing
    CHECK_THROWS_AS(LorentzSpec({1.0, -0.1}, 2), ParamOutOfRange);  // negative
    CHECK_THROWS_AS(LorentzSpec({1.0, 0.5}, 0.5), ParamOutOfRange);
}

TEST_CASE("lorentz with unit weight equals lp") {
    Rng rng(3);
    for (double p : {1.0, 2.0, 3.0}) {
        LorentzSpec s(std::vector<double>(5, 1.0), p);
        for (int t = 0; t < 50; ++t) {
            Vector x = rng.gaussian_vector(5);
            CHECK(lorentz_norm(s, x) == doctest::Approx(lp_norm(x, p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("luxemburg norm with power phi equals lp") {
    Rng rng(5);
    for (double p : {1.0, 2.0, 3.0}) {
        OrliczSpec s(OrliczFunction::power(p), OrliczFlavor::Luxemburg, 4);
        for (int t = 0; t < 30; ++t) {
            Vector x = rng.gaussian_vector(4);
            CHECK(luxemburg_norm(s, x) == doctest::Approx(lp_norm(x, p)).epsilon(1e-8));
        }
    }
    OrliczSpec s(OrliczFunction::power(2.0), OrliczFlavor::Luxemburg, 3);
    CHECK(luxemburg_norm(s, {1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(luxemburg_norm(s, {0, 0, 0}) == 0.0);
}

TEST_CASE("orlicz norm closed forms") {
    OrliczSpec sq(OrliczFunction::power(2.0), OrliczFlavor::OrliczNorm, 3);
    CHECK(orlicz_norm(sq, {0, 0, 0}) == 0.0);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Vector x = rng.gaussian_vector(3);
        // sup over the u^2/4-modular ball is attained at y = 2x/||x||_2
        CHECK(orlicz_norm(sq, x) == doctest::Approx(2.0 * lp_norm(x, 2)).epsilon(1e-8));
    }
    OrliczSpec lin(OrliczFunction::power(1.0), OrliczFlavor::OrliczNorm, 2);
    CHECK(orlicz_norm(lin, {1, 1}) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("young conjugate closed forms") {
    const PiecewisePower sq = PiecewisePower::power(2.0);
    const PiecewisePower csq = young_conjugate(sq);
    for (double u : {0.1, 0.5, 1.0, 2.0, 7.0})
        CHECK(csq(u) == doctest::Approx(u * u / 4.0).epsilon(1e-12));

    const PiecewisePower lin = PiecewisePower::power(1.0);
    const PiecewisePower clin = young_conjugate(lin);
    CHECK(clin(0.5) == doctest::Approx(0.0));
    CHECK(clin(1.0) == doctest::Approx(0.0));
    CHECK(clin.domain_end() == doctest::Approx(1.0));
    CHECK(clin(1.5) == std::numeric_limits<double>::infinity());

    for (double p : {1.5, 2.5, 3.0}) {
        const PiecewisePower cp = young_conjugate(PiecewisePower::power(p));
        const double pc = p / (p - 1.0);
        const double coeff = (p - 1.0) * std::pow(p, -pc);
        for (double u : {0.3, 1.0, 2.0}) {
            CHECK(cp(u) == doctest::Approx(coeff * std::pow(u, pc)).epsilon(1e-10));
            CHECK(cp(u) == doctest::Approx(grid_conjugate(PiecewisePower::power(p), u))
                               .epsilon(1e-4));
        }
    }
}

TEST_CASE("young conjugate of the patched square against the grid") {
    const OrliczFunction phi = OrliczFunction::square_with_affine_patch(0.6);
    const PiecewisePower conj = young_conjugate(phi);
    for (double u : {0.1, 0.4, 0.8, 1.1, 1.5}) {
        if (u >= conj.domain_end()) continue;
        CHECK(conj(u) == doctest::Approx(grid_conjugate(phi, u, 2.0)).epsilon(1e-6));
    }
}

TEST_CASE("biconjugation returns phi on a sample grid") {
    Rng rng(11);
    std::vector<OrliczFunction> phis = {OrliczFunction::power(2.0),
                                        OrliczFunction::power(1.7),
                                        OrliczFunction::square_with_affine_patch(0.5)};
    for (const auto& phi : phis) {
        const PiecewisePower back = young_conjugate(young_conjugate(phi));
        for (int t = 0; t < 40; ++t) {
            const double u = rng.uniform(0.0, 3.0);
            CHECK(back(u) == doctest::Approx(phi(u)).epsilon(1e-8));
        }
    }
}

TEST_CASE("norm axioms on random inputs") {
    Rng rng(13);
    std::vector<SpaceSpec> spaces = {
        LorentzSpec({1, 0.7, 0.4, 0.2}, 2.5),
        LorentzSpec({1, 1, 0.5, 0.0}, 1.0),
        OrliczSpec(OrliczFunction::square_with_affine_patch(0.6), OrliczFlavor::Luxemburg, 4),
        OrliczSpec(OrliczFunction::power(1.8), OrliczFlavor::OrliczNorm, 4),
    };
    for (const auto& s : spaces)
        for (int t = 0; t < 40; ++t) {
            Vector x = rng.gaussian_vector(4), y = rng.gaussian_vector(4);
            const double alpha = rng.uniform(-3.0, 3.0);
            Vector ax = x, xy = x;
            for (std::size_t i = 0; i < 4; ++i) {
                ax[i] *= alpha;
                xy[i] += y[i];
            }
            const double nx = space_norm(s, x), ny = space_norm(s, y);
            CHECK(space_norm(s, ax) ==
                  doctest::Approx(std::abs(alpha) * nx).epsilon(1e-10));
            CHECK(space_norm(s, xy) <= (nx + ny) * (1.0 + 1e-10) + 1e-12);
        }
}

TEST_CASE("symmetry under permutation and sign flips") {
    Rng rng(17);
    std::vector<SpaceSpec> spaces = {
        LorentzSpec({1, 0.9, 0.3, 0.1}, 1.5),
        OrliczSpec(OrliczFunction::square_with_affine_patch(0.4), OrliczFlavor::Luxemburg, 4),
        OrliczSpec(OrliczFunction::power(2.2), OrliczFlavor::OrliczNorm, 4),
    };
    for (const auto& s : spaces)
        for (int t = 0; t < 30; ++t) {
            Vector x = rng.gaussian_vector(4);
            Vector y = x;
            std::swap(y[0], y[3]);
            std::swap(y[1], y[2]);
            y[1] = -y[1];
            y[2] = -y[2];
            CHECK(space_norm(s, y) == doctest::Approx(space_norm(s, x)).epsilon(1e-12));
        }
}

TEST_CASE("luxemburg bracket handles flat phi near zero") {
    // phi = 0 below 0.5, then steep power reaching phi(1) = 1
    PiecewisePower raw({Segment{0.0, 0.0, 0.0, 2.0}, Segment{0.5, 0.0, 4.0, 2.0}});
    OrliczFunction phi{PiecewisePower(raw)};
    OrliczSpec s(phi, OrliczFlavor::Luxemburg, 2);
    const double n = luxemburg_norm(s, {1.0, 0.0});
    CHECK(n > 0.0);
    CHECK(n <= 1.0 + 1e-9);  // modular at lambda=1 is phi(1)=1
}

TEST_CASE("orlicz function validation") {
    CHECK_THROWS_AS(OrliczFunction(PiecewisePower({Segment{0.0, 0.0, 2.0, 2.0}})),
                    ParamOutOfRange);  // phi(1) != 1
    // decreasing slope across a breakpoint violates convexity
    CHECK_THROWS_AS(PiecewisePower({Segment{0.0, 1.0, 0.0, 2.0}, Segment{0.5, 0.1, 0.0, 2.0}}),
                    ParamOutOfRange);
}

TEST_CASE("regularity predicates") {
    CHECK(has_property_P(LorentzSpec({1, 0.5, 0.1}, 2)));
    CHECK_FALSE(has_property_P(LorentzSpec({1, 0, 0}, 2)));
    CHECK(has_property_Q(LorentzSpec({1, 1, 1}, 2)));
    CHECK_FALSE(has_property_Q(LorentzSpec({1, 1, 1}, 1)));
    CHECK(has_property_P(OrliczSpec(OrliczFunction::power(2), OrliczFlavor::Luxemburg, 3)));
    CHECK(has_property_Q(OrliczSpec(OrliczFunction::power(2), OrliczFlavor::Luxemburg, 3)));
    CHECK_FALSE(has_property_Q(OrliczSpec(OrliczFunction::power(1), OrliczFlavor::Luxemburg, 3)));
}
