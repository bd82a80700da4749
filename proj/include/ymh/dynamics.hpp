#pragma once

// Fixed-step RK4 integration of the classical equations of motion and
// Poincare sections on the q1 = 0 surface.

#include "ymh/model.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace ymh {

struct IntegratorConfig {
    double step_h = 1e-3;
    double t_max = 1e3;
    double energy_drift_tol = 1e-6;

    /// Throws Error(InvalidArgument) if the invariants do not hold.
    void validate() const;
};

using PhaseVelocity = std::array<double, 4>;

/// Right-hand side (dq1, dq2, dp1, dp2)/dt of Hamilton's equations.
PhaseVelocity eom_rhs(const PhaseState& state, const ModelParams& params) noexcept;

/// One classical fourth-order Runge-Kutta step of size h.
PhaseState rk4_step(const PhaseState& state, double h, const ModelParams& params);

/// Relative energy error used by the drift monitor: |E - E0| / max(|E0|, 1).
double relative_drift(double energy, double initial_energy) noexcept;

struct Trajectory {
    std::vector<PhaseState> samples;
    ModelParams params;
    double initial_energy = 0.0;
    double step_h = 0.0;
    double max_drift = 0.0;
};

/// Integrates floor(t_max / h + 1/2) steps from state0, keeping every sample.
/// Throws EnergyDriftExceeded or NonFiniteState on the first failing step.
Trajectory integrate(const PhaseState& state0, const IntegratorConfig& cfg,
                     const ModelParams& params);

struct SectionPoint {
    double t = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;
};

struct SectionPointSet {
    std::vector<SectionPoint> points;
    double energy = 0.0;
    double max_drift = 0.0;
};

/// Collects up to n_crossings upward (dq1/dt > 0) passages through q1 = 0,
/// each located by linear interpolation in t between the bracketing RK4
/// samples. Stops at t_max. Throws DegenerateOrbit when the orbit stays on
/// q1 = 0 and NoCrossings when nothing was found.
SectionPointSet poincare_section(const PhaseState& state0, const IntegratorConfig& cfg,
                                 const ModelParams& params, std::size_t n_crossings);

/// The state (0, q2, +p1, p2) on the energy shell E. Throws OffShell if
/// p2^2/2 + V(0, q2) exceeds E.
PhaseState seed_on_shell(double energy, double q2, double p2, const ModelParams& params);

/// A section seed expressed as fractions of the shell extent, so the same
/// seed is admissible for every (E, g, v): q2 = q2_frac * q2_max and
/// p2 = p2_frac * sqrt(2E), with q2_frac^2 + p2_frac^2 <= 1.
struct SectionSeed {
    std::string label;
    double q2_frac = 0.0;
    double p2_frac = 0.0;
};

/// Maps a fractional seed onto the shell E and returns the on-shell state.
PhaseState seed_state(const SectionSeed& seed, double energy, const ModelParams& params);

/// Parses seed lines of the form `label q2_frac p2_frac`; '#' starts a comment.
std::vector<SectionSeed> parse_seeds(const std::string& text);

} // namespace ymh
