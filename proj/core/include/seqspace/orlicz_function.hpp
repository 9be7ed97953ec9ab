#pragma once

#include <limits>
#include <vector>

#include "seqspace/types.hpp"

namespace seqspace {

/// One segment of a piecewise power function:
///   value(t) = a + b*(t - t0) + c*(t - t0)^q   on [t0, next segment start)
/// with b >= 0, c >= 0, q > 1 (pure affine segments carry c = 0).
/// `a` is derived from continuity and is not part of the input form.
struct PowerPiece {
    double t0 = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double q = 2.0;

    double value(double t) const;
    double derivative(double t) const;   // right derivative inside the piece
    double end_derivative(double t1) const;
};

/// Input form of a segment; the constructor computes the additive constants.
struct Segment {
    double t0 = 0.0;
    double b = 0.0;
    double c = 0.0;
    double q = 2.0;
};

/// Convex, non-decreasing piecewise power function on [0, inf) with f(0) = 0.
/// Young conjugates of such functions stay in the class, possibly with a
/// finite effective domain [0, domain_end] and value +inf beyond it.
class PiecewisePower {
public:
    PiecewisePower() = default;
    explicit PiecewisePower(std::vector<Segment> segments,
                            double domain_end = std::numeric_limits<double>::infinity());

    static PiecewisePower power(double q, double coeff = 1.0);

    double operator()(double t) const;
    double left_derivative(double t) const;
    double right_derivative(double t) const;

    /// Supremum of the derivative (slope of the affine tail, +inf if superlinear).
    double slope_at_infinity() const;
    double domain_end() const { return domain_end_; }
    const std::vector<PowerPiece>& pieces() const { return pieces_; }

    bool strictly_increasing_on(double lo, double hi) const;

private:
    std::vector<PowerPiece> pieces_;
    double domain_end_ = std::numeric_limits<double>::infinity();
    friend PiecewisePower young_conjugate(const PiecewisePower&);
};

/// phi*(u) = sup_t (t*u - phi(t)), piecewise closed form.
PiecewisePower young_conjugate(const PiecewisePower& phi);

/// An Orlicz function: PiecewisePower with phi(1) = 1, validated.
class OrliczFunction : public PiecewisePower {
public:
    OrliczFunction() : OrliczFunction(PiecewisePower::power(2.0)) {}
    explicit OrliczFunction(PiecewisePower f);

    static OrliczFunction power(double q) { return OrliczFunction(PiecewisePower::power(q)); }
    /// t^2 up to `knee`, then the affine continuation reaching phi(1) = 1.
    static OrliczFunction square_with_affine_patch(double knee);
};

}  // namespace seqspace
