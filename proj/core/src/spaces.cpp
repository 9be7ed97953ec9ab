#include "seqspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace seqspace {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Rearrangement decreasing_rearrangement(const Vector& x) {
    Rearrangement r;
    r.order.resize(x.size());
    std::iota(r.order.begin(), r.order.end(), std::size_t{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(x[a]) > std::abs(x[b]);
    });
    r.sorted.reserve(x.size());
    for (std::size_t i : r.order) r.sorted.push_back(std::abs(x[i]));
    return r;
}

Weight::Weight(std::vector<double> values) : w(std::move(values)) {
    if (w.empty()) throw ParamOutOfRange("Weight: empty");
    if (w.front() != 1.0) throw ParamOutOfRange("Weight: w[0] must equal 1");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0.0) throw ParamOutOfRange("Weight: negative entry");
        if (i > 0 && w[i] > w[i - 1] + 1e-15) throw ParamOutOfRange("Weight: not non-increasing");
    }
}

LorentzSpec::LorentzSpec(std::vector<double> weights, double exponent)
    : w(Weight(std::move(weights)).w), p(exponent), dim(w.size()) {
    if (p < 1.0) throw ParamOutOfRange("LorentzSpec: p must be >= 1");
}

OrliczSpec::OrliczSpec(OrliczFunction f, OrliczFlavor fl, std::size_t d)
    : phi(std::move(f)), flavor(fl), dim(d) {
    if (dim == 0) throw ParamOutOfRange("OrliczSpec: dim must be positive");
}

std::size_t dim_of(const SpaceSpec& s) {
    return std::visit([](const auto& sp) { return sp.dim; }, s);
}

double lorentz_norm(const LorentzSpec& s, const Vector& x) {
    if (x.size() != s.dim) throw DimensionMismatch("lorentz_norm: dimension mismatch");
    const Rearrangement r = decreasing_rearrangement(x);
    double sum = 0.0;
    for (std::size_t n = 0; n < s.dim; ++n)
        if (s.w[n] > 0.0 && r.sorted[n] > 0.0) sum += s.w[n] * std::pow(r.sorted[n], s.p);
    return std::pow(sum, 1.0 / s.p);
}

namespace {
double modular(const OrliczFunction& phi, const Vector& x, double lambda) {
    double m = 0.0;
    for (double xi : x)
        if (xi != 0.0) m += phi(std::abs(xi) / lambda);
    return m;
}
}  // namespace

double luxemburg_norm(const OrliczFunction& phi, const Vector& x) {
    double amax = 0.0, asum = 0.0;
    for (double xi : x) {
        amax = std::max(amax, std::abs(xi));
        asum += std::abs(xi);
    }
    if (amax == 0.0) return 0.0;

    double hi = asum;                       // modular(hi) <= phi(1) = 1 by convexity
    double lo = amax;                       // modular(lo) >= phi(1) = 1
    if (modular(phi, x, lo) <= 1.0) {
        // phi vanishes near 0: the norm sits below max|x_i|; expand downward
        double next = lo / 2.0;
        int guard = 0;
        while (modular(phi, x, next) <= 1.0) {
            hi = next;
            next /= 2.0;
            if (++guard > 2100) throw BracketError("luxemburg_norm: bracket did not converge");
        }
        hi = std::min(hi, lo);
        lo = next;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (modular(phi, x, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double luxemburg_norm(const OrliczSpec& s, const Vector& x) {
    if (x.size() != s.dim) throw DimensionMismatch("luxemburg_norm: dimension mismatch");
    return luxemburg_norm(s.phi, x);
}

namespace {
double amemiya_value(const OrliczFunction& phi, const Vector& x, double lambda) {
    return lambda * (1.0 + modular(phi, x, lambda));
}
}  // namespace

double amemiya_argmin(const OrliczFunction& phi, const Vector& x) {
    double amax = 0.0, asum = 0.0;
    for (double xi : x) {
        amax = std::max(amax, std::abs(xi));
        asum += std::abs(xi);
    }
    if (amax == 0.0) return 1.0;
    // lambda*(1 + modular) is convex in lambda; golden-section over a wide bracket
    double lo = amax * 1e-9, hi = asum + 1.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = amemiya_value(phi, x, c), fd = amemiya_value(phi, x, d);
    for (int it = 0; it < 220; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = amemiya_value(phi, x, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = amemiya_value(phi, x, d);
        }
    }
    return 0.5 * (a + b);
}

double orlicz_norm(const OrliczFunction& phi, const Vector& x) {
    double amax = 0.0, asum = 0.0;
    for (double xi : x) {
        amax = std::max(amax, std::abs(xi));
        asum += std::abs(xi);
    }
    if (amax == 0.0) return 0.0;
    const double lam = amemiya_argmin(phi, x);
    double best = amemiya_value(phi, x, lam);
    // affine-tail phi: the infimum can sit at lambda -> 0
    const double m = phi.slope_at_infinity();
    if (std::isfinite(m)) best = std::min(best, m * asum);
    return best;
}

double orlicz_norm(const OrliczSpec& s, const Vector& x) {
    if (x.size() != s.dim) throw DimensionMismatch("orlicz_norm: dimension mismatch");
    return orlicz_norm(s.phi, x);
}

double space_norm(const SpaceSpec& s, const Vector& x) {
    if (const auto* l = std::get_if<LorentzSpec>(&s)) return lorentz_norm(*l, x);
    const auto& o = std::get<OrliczSpec>(s);
    return o.flavor == OrliczFlavor::Luxemburg ? luxemburg_norm(o, x) : orlicz_norm(o, x);
}

bool has_property_P(const SpaceSpec& s) {
    if (const auto* l = std::get_if<LorentzSpec>(&s))
        return l->dim < 2 || l->w[1] > 0.0;
    const auto& o = std::get<OrliczSpec>(s);
    // phi(t) > 0 for all t > 0 iff phi is not flat at the origin
    const PowerPiece& first = o.phi.pieces().front();
    return first.b > 0.0 || first.c > 0.0;
}

bool has_property_Q(const SpaceSpec& s) {
    if (const auto* l = std::get_if<LorentzSpec>(&s)) return l->p > 1.0;
    const auto& o = std::get<OrliczSpec>(s);
    return o.phi.right_derivative(0.0) == 0.0;
}

}  // namespace seqspace
