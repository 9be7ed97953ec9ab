#pragma once

#include <variant>
#include <vector>

#include "seqspace/orlicz_function.hpp"
#include "seqspace/types.hpp"

namespace seqspace {

struct Rearrangement {
    Vector sorted;                    // |x| sorted non-increasingly
    std::vector<std::size_t> order;   // order[r] = original index occupying rank r
};

/// Non-increasing rearrangement of (|x_n|); ties keep ascending original index.
Rearrangement decreasing_rearrangement(const Vector& x);

/// Lorentz weight: non-increasing, w[0] = 1, entries >= 0.
struct Weight {
    std::vector<double> w;
    explicit Weight(std::vector<double> values);
};

struct LorentzSpec {
    std::vector<double> w;
    double p = 2.0;
    std::size_t dim = 0;

    LorentzSpec(std::vector<double> weights, double exponent);
};

enum class OrliczFlavor { Luxemburg, OrliczNorm };

struct OrliczSpec {
    OrliczFunction phi;
    OrliczFlavor flavor = OrliczFlavor::Luxemburg;
    std::size_t dim = 0;

    OrliczSpec(OrliczFunction f, OrliczFlavor fl, std::size_t d);
};

using SpaceSpec = std::variant<LorentzSpec, OrliczSpec>;

std::size_t dim_of(const SpaceSpec& s);

double lorentz_norm(const LorentzSpec& s, const Vector& x);

/// inf{lambda > 0 : sum phi(|x_i|/lambda) <= 1}, by bracketing + bisection.
double luxemburg_norm(const OrliczFunction& phi, const Vector& x);
double luxemburg_norm(const OrliczSpec& s, const Vector& x);

/// sup over the conjugate modular ball, evaluated through the Amemiya form
///   inf_{lambda>0} lambda * (1 + sum phi(|x_i|/lambda)).
double orlicz_norm(const OrliczFunction& phi, const Vector& x);
double orlicz_norm(const OrliczSpec& s, const Vector& x);

/// Amemiya minimizer lambda* (used by the norming-functional construction).
double amemiya_argmin(const OrliczFunction& phi, const Vector& x);

double space_norm(const SpaceSpec& s, const Vector& x);

/// ||e_i + eps e_j|| > 1 for all eps > 0 (exact family criteria).
bool has_property_P(const SpaceSpec& s);
/// (||e_i + eps e_j|| - 1)/eps -> 0 (exact family criteria).
bool has_property_Q(const SpaceSpec& s);

}  // namespace seqspace
