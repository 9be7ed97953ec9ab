#include "seqspace/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqspace {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double PowerPiece::value(double t) const {
    const double s = t - t0;
    double v = a + b * s;
    if (c > 0.0) v += c * std::pow(s, q);
    return v;
}

double PowerPiece::derivative(double t) const {
    const double s = t - t0;
    double d = b;
    if (c > 0.0 && s > 0.0) d += q * c * std::pow(s, q - 1.0);
    return d;
}

double PowerPiece::end_derivative(double t1) const {
    if (!std::isfinite(t1)) return c > 0.0 ? kInf : b;
    return derivative(t1);
}

PiecewisePower::PiecewisePower(std::vector<Segment> segments, double domain_end)
    : domain_end_(domain_end) {
    if (segments.empty()) throw ParamOutOfRange("PiecewisePower: empty segment list");
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.t0 < b.t0; });
    if (segments.front().t0 != 0.0)
        throw ParamOutOfRange("PiecewisePower: first segment must start at 0");

    double a = 0.0;
    double prev_end_slope = 0.0;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        Segment s = segments[k];
        if (s.b < 0.0 || s.c < 0.0 || s.q < 1.0)
            throw ParamOutOfRange("PiecewisePower: segment needs b,c >= 0 and q >= 1");
        if (s.q == 1.0) {  // fold a linear power term into the slope
            s.b += s.c;
            s.c = 0.0;
            s.q = 2.0;
        }
        const double t1 = (k + 1 < segments.size()) ? segments[k + 1].t0 : domain_end_;
        if (t1 <= s.t0) {
            if (k + 1 < segments.size()) throw ParamOutOfRange("PiecewisePower: zero-length segment");
            // a single point domain end is fine
        }
        if (k > 0 && prev_end_slope > s.b + 1e-12)
            throw ParamOutOfRange("PiecewisePower: left derivative decreases at a breakpoint");
        PowerPiece p{s.t0, a, s.b, s.c, s.q};
        pieces_.push_back(p);
        if (std::isfinite(t1)) {
            a = p.value(t1);
            prev_end_slope = p.end_derivative(t1);
        }
    }
}

PiecewisePower PiecewisePower::power(double q, double coeff) {
    if (q < 1.0 || coeff < 0.0) throw ParamOutOfRange("power: need q >= 1, coeff >= 0");
    Segment s;
    s.t0 = 0.0;
    if (q == 1.0) {
        s.b = coeff;
        s.c = 0.0;
    } else {
        s.b = 0.0;
        s.c = coeff;
        s.q = q;
    }
    return PiecewisePower({s});
}

namespace {
std::size_t piece_index(const std::vector<PowerPiece>& pieces, double t) {
    // last piece whose start is <= t
    std::size_t lo = 0;
    for (std::size_t k = pieces.size(); k-- > 0;) {
        if (pieces[k].t0 <= t) {
            lo = k;
            break;
        }
    }
    return lo;
}
}  // namespace

double PiecewisePower::operator()(double t) const {
    if (t < 0.0) throw ParamOutOfRange("PiecewisePower: negative argument");
    if (t > domain_end_) return kInf;
    return pieces_[piece_index(pieces_, t)].value(t);
}

double PiecewisePower::left_derivative(double t) const {
    if (t <= 0.0) return 0.0;
    if (t > domain_end_) return kInf;
    std::size_t k = piece_index(pieces_, t);
    if (pieces_[k].t0 == t && k > 0) return pieces_[k - 1].derivative(t);
    return pieces_[k].derivative(t);
}

double PiecewisePower::right_derivative(double t) const {
    if (t < 0.0) throw ParamOutOfRange("PiecewisePower: negative argument");
    if (t >= domain_end_) return kInf;
    std::size_t k = piece_index(pieces_, t);
    if (k + 1 < pieces_.size() && pieces_[k + 1].t0 == t) ++k;
    if (pieces_[k].t0 == t) return pieces_[k].b;
    return pieces_[k].derivative(t);
}

double PiecewisePower::slope_at_infinity() const {
    const PowerPiece& last = pieces_.back();
    if (!std::isfinite(domain_end_)) return last.c > 0.0 ? kInf : last.b;
    return kInf;
}

bool PiecewisePower::strictly_increasing_on(double lo, double hi) const {
    if (hi <= lo) return true;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const double t1 = (k + 1 < pieces_.size()) ? pieces_[k + 1].t0 : domain_end_;
        const double a = std::max(lo, pieces_[k].t0);
        const double b = std::min(hi, t1);
        if (a >= b) continue;
        // flat exactly when the piece is constant
        if (pieces_[k].b == 0.0 && pieces_[k].c == 0.0) return false;
    }
    return true;
}

PiecewisePower young_conjugate(const PiecewisePower& phi) {
    const auto& pieces = phi.pieces();
    std::vector<Segment> segs;
    double d_prev = 0.0;

    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const PowerPiece& p = pieces[k];
        const double t1 = (k + 1 < pieces.size()) ? pieces[k + 1].t0 : phi.domain_end();
        if (p.b > d_prev + 0.0) {
            // derivative jump at p.t0: conjugate is affine with slope p.t0
            segs.push_back({d_prev, p.t0, 0.0, 2.0});
            d_prev = p.b;
        }
        if (p.c > 0.0 && p.q > 1.0 && t1 > p.t0) {
            const double q = p.q, c = p.c;
            const double qq = q / (q - 1.0);
            const double coeff = (q - 1.0) / q * std::pow(q * c, -1.0 / (q - 1.0));
            segs.push_back({p.b, p.t0, coeff, qq});
            d_prev = p.end_derivative(t1);
        }
    }

    double conj_domain_end = kInf;
    if (std::isfinite(phi.domain_end())) {
        // value jumps to +inf at the domain end: affine conjugate tail of slope T
        if (std::isfinite(d_prev)) segs.push_back({d_prev, phi.domain_end(), 0.0, 2.0});
    } else if (std::isfinite(d_prev) && !(pieces.back().c > 0.0)) {
        conj_domain_end = d_prev;  // affine tail of phi bounds the conjugate's domain
    }

    if (segs.empty()) {
        segs.push_back({0.0, 0.0, 0.0, 2.0});
        conj_domain_end = d_prev;
    }
    return PiecewisePower(segs, conj_domain_end);
}

OrliczFunction::OrliczFunction(PiecewisePower f) : PiecewisePower(std::move(f)) {
    if (std::isfinite(domain_end()))
        throw ParamOutOfRange("OrliczFunction: must be finite on all of [0,inf)");
    const double at_one = (*this)(1.0);
    if (std::abs(at_one - 1.0) > 1e-9)
        throw ParamOutOfRange("OrliczFunction: phi(1) must equal 1");
}

OrliczFunction OrliczFunction::square_with_affine_patch(double knee) {
    if (knee <= 0.0 || knee >= 1.0)
        throw ParamOutOfRange("square_with_affine_patch: knee must lie in (0,1)");
    const double slope = (1.0 - knee * knee) / (1.0 - knee);
    std::vector<Segment> segs{{0.0, 0.0, 1.0, 2.0}, {knee, slope, 0.0, 2.0}};
    return OrliczFunction(PiecewisePower(std::move(segs)));
}

}  // namespace seqspace
