#pragma once

// Classical Yang-Mills-Higgs model with two degrees of freedom:
//
//   H = (p1^2 + p2^2)/2 + g^2 v^2 (q1^2 + q2^2) + g^2 q1^2 q2^2 / 2
//
// Everything here is a pure function of its arguments.

#include <cmath>

namespace ymh {

/// Coupling g and Higgs vacuum v. The oscillator frequency is derived,
/// omega^2 = 2 g^2 v^2, and never stored.
class ModelParams {
public:
    /// Throws Error(InvalidArgument) unless g > 0 and v >= 0, both finite.
    ModelParams(double g, double v);

    double g() const noexcept { return g_; }
    double v() const noexcept { return v_; }
    double omega() const noexcept { return std::sqrt(2.0) * g_ * v_; }

    /// g^2 v^2, the coefficient of the harmonic part of the potential.
    double harmonic() const noexcept { return g_ * g_ * v_ * v_; }

private:
    double g_;
    double v_;
};

/// A point (q1, q2, p1, p2) of phase space at time t.
/// Construction rejects non-finite components with Error(NonFiniteState).
struct PhaseState {
    double q1 = 0.0;
    double q2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double t = 0.0;

    PhaseState() = default;
    PhaseState(double q1, double q2, double p1, double p2, double t = 0.0);
};

double potential_energy(double q1, double q2, const ModelParams& params) noexcept;

double total_energy(const PhaseState& state, const ModelParams& params) noexcept;

/// Hessian determinant of the potential,
///   (2g^2v^2 + g^2 q2^2)(2g^2v^2 + g^2 q1^2) - 4 g^4 q1^2 q2^2.
/// Its sign matches the Gaussian curvature of the potential surface;
/// negative values mark locally unstable regions.
double curvature_discriminant(double q1, double q2, const ModelParams& params) noexcept;

/// Minimum of the potential on the zero-curvature line, 6 g^2 v^4.
/// Throws Error(InvalidArgument) for v = 0.
double critical_energy(const ModelParams& params);

/// Vacuum value at which `energy` is the critical energy, (E / 6g^2)^(1/4).
double critical_vacuum(double energy, double g);

struct ZeroCurvatureMinimum {
    double q1 = 0.0;
    double q2 = 0.0;
    double energy = 0.0;
};

/// Minimizes the potential over the zero-curvature set numerically: a dense
/// grid in q1 with bracketed bisection for the q2 root of the discriminant,
/// then golden-section refinement in q1. Independent of the closed form in
/// critical_energy(), which it is meant to cross-check.
ZeroCurvatureMinimum minimize_on_zero_curvature(const ModelParams& params);

} // namespace ymh
