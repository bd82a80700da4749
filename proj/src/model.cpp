#include "ymh/model.hpp"

#include "ymh/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ymh {

ModelParams::ModelParams(double g, double v) : g_(g), v_(v)
{
    if (!std::isfinite(g) || !std::isfinite(v) || g <= 0.0 || v < 0.0) {
        std::ostringstream msg;
        msg << "model parameters require g > 0 and v >= 0 (got g=" << g << ", v=" << v << ")";
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
}

PhaseState::PhaseState(double q1_, double q2_, double p1_, double p2_, double t_)
    : q1(q1_), q2(q2_), p1(p1_), p2(p2_), t(t_)
{
    if (!std::isfinite(q1) || !std::isfinite(q2) || !std::isfinite(p1) || !std::isfinite(p2)
        || !std::isfinite(t)) {
        std::ostringstream msg;
        msg << "non-finite phase state (" << q1 << ", " << q2 << ", " << p1 << ", " << p2
            << ") at t=" << t;
        throw Error(ErrorCode::NonFiniteState, msg.str());
    }
}

double potential_energy(double q1, double q2, const ModelParams& params) noexcept
{
    const double g2 = params.g() * params.g();
    return params.harmonic() * (q1 * q1 + q2 * q2) + 0.5 * g2 * q1 * q1 * q2 * q2;
}

double total_energy(const PhaseState& s, const ModelParams& params) noexcept
{
    return 0.5 * (s.p1 * s.p1 + s.p2 * s.p2) + potential_energy(s.q1, s.q2, params);
}

double curvature_discriminant(double q1, double q2, const ModelParams& params) noexcept
{
    const double g2 = params.g() * params.g();
    const double a2 = 2.0 * params.harmonic();
    return (a2 + g2 * q2 * q2) * (a2 + g2 * q1 * q1) - 4.0 * g2 * g2 * q1 * q1 * q2 * q2;
}

double critical_energy(const ModelParams& params)
{
    if (params.v() == 0.0)
        throw Error(ErrorCode::InvalidArgument,
                    "critical energy undefined at v = 0 (no zero-curvature minimum)");
    const double g = params.g();
    const double v = params.v();
    return 6.0 * g * g * v * v * v * v;
}

double critical_vacuum(double energy, double g)
{
    if (!std::isfinite(energy) || !std::isfinite(g) || energy <= 0.0 || g <= 0.0) {
        std::ostringstream msg;
        msg << "critical vacuum requires E > 0 and g > 0 (got E=" << energy << ", g=" << g << ")";
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    return std::pow(energy / (6.0 * g * g), 0.25);
}

namespace {

// Smallest q2 in [0, reach] with curvature_discriminant(q1, q2) = 0, if the
// discriminant changes sign there. Scanned on a grid, then bisected.
bool zero_curvature_q2(double q1, double reach, const ModelParams& params, double& root)
{
    constexpr int scan = 400;
    double lo = 0.0;
    double d_lo = curvature_discriminant(q1, lo, params);
    for (int i = 1; i <= scan; ++i) {
        const double hi = reach * i / scan;
        const double d_hi = curvature_discriminant(q1, hi, params);
        if ((d_lo > 0.0) != (d_hi > 0.0)) {
            double a = lo;
            double b = hi;
            for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b;
                 ++it) {
                const double mid = 0.5 * (a + b);
                if ((curvature_discriminant(q1, mid, params) > 0.0) == (d_lo > 0.0))
                    a = mid;
                else
                    b = mid;
            }
            root = 0.5 * (a + b);
            return true;
        }
        lo = hi;
        d_lo = d_hi;
    }
    return false;
}

} // namespace

ZeroCurvatureMinimum minimize_on_zero_curvature(const ModelParams& params)
{
    if (params.v() == 0.0)
        throw Error(ErrorCode::InvalidArgument, "zero-curvature minimum undefined at v = 0");

    // The zero set scales linearly with v, so a window of a few v covers it.
    const double reach = 8.0 * params.v();
    constexpr int grid = 800;

    auto on_line = [&](double q1, double& q2, double& energy) {
        if (!zero_curvature_q2(q1, reach, params, q2))
            return false;
        energy = potential_energy(q1, q2, params);
        return true;
    };

    int best = -1;
    double best_energy = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid; ++i) {
        double q2 = 0.0;
        double energy = 0.0;
        if (on_line(reach * i / grid, q2, energy) && energy < best_energy) {
            best_energy = energy;
            best = i;
        }
    }
    if (best < 0)
        throw Error(ErrorCode::ConvergenceFailure, "no zero-curvature points found in search window");

    auto cost = [&](double q1) {
        double q2 = 0.0;
        double energy = 0.0;
        return on_line(q1, q2, energy) ? energy : std::numeric_limits<double>::infinity();
    };

    // Golden-section refinement on the bracketing grid cells.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = reach * (best - 1) / grid;
    double b = reach * std::min(best + 1, grid) / grid;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = cost(c);
    double fd = cost(d);
    while (b - a > 1e-12 * reach) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = cost(d);
        }
    }

    ZeroCurvatureMinimum out;
    out.q1 = 0.5 * (a + b);
    if (!on_line(out.q1, out.q2, out.energy))
        throw Error(ErrorCode::ConvergenceFailure, "zero-curvature refinement left the curve");
    return out;
}

} // namespace ymh
