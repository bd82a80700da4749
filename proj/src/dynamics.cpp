#include "ymh/dynamics.hpp"

#include "ymh/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ymh {

void IntegratorConfig::validate() const
{
    if (!(step_h > 0.0) || !(t_max > 0.0) || !(step_h < t_max) || !(energy_drift_tol > 0.0)
        || !std::isfinite(t_max)) {
        std::ostringstream msg;
        msg << "integrator config requires 0 < h < t_max and drift tolerance > 0 (got h="
            << step_h << ", t_max=" << t_max << ", tol=" << energy_drift_tol << ")";
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
}

PhaseVelocity eom_rhs(const PhaseState& s, const ModelParams& params) noexcept
{
    const double g2 = params.g() * params.g();
    const double w2 = 2.0 * params.harmonic();
    return {s.p1, s.p2, -w2 * s.q1 - g2 * s.q1 * s.q2 * s.q2, -w2 * s.q2 - g2 * s.q1 * s.q1 * s.q2};
}

namespace {

PhaseState shifted(const PhaseState& s, const PhaseVelocity& k, double dt) noexcept
{
    PhaseState out;
    out.q1 = s.q1 + dt * k[0];
    out.q2 = s.q2 + dt * k[1];
    out.p1 = s.p1 + dt * k[2];
    out.p2 = s.p2 + dt * k[3];
    out.t = s.t + dt;
    return out;
}

} // namespace

PhaseState rk4_step(const PhaseState& s, double h, const ModelParams& params)
{
    const PhaseVelocity k1 = eom_rhs(s, params);
    const PhaseVelocity k2 = eom_rhs(shifted(s, k1, 0.5 * h), params);
    const PhaseVelocity k3 = eom_rhs(shifted(s, k2, 0.5 * h), params);
    const PhaseVelocity k4 = eom_rhs(shifted(s, k3, h), params);
    const double w = h / 6.0;
    return PhaseState(s.q1 + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                      s.q2 + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
                      s.p1 + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
                      s.p2 + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]),
                      s.t + h);
}

double relative_drift(double energy, double initial_energy) noexcept
{
    return std::abs(energy - initial_energy) / std::max(std::abs(initial_energy), 1.0);
}

namespace {

std::size_t step_count(const IntegratorConfig& cfg)
{
    return static_cast<std::size_t>(std::floor(cfg.t_max / cfg.step_h + 0.5));
}

// Tracks energy drift along an integration and aborts past the tolerance.
class DriftMonitor {
public:
    DriftMonitor(double initial_energy, double tol) : e0_(initial_energy), tol_(tol) {}

    void check(const PhaseState& s, const ModelParams& params)
    {
        const double drift = relative_drift(total_energy(s, params), e0_);
        max_ = std::max(max_, drift);
        if (drift > tol_) {
            std::ostringstream msg;
            msg << "relative energy drift " << drift << " exceeds tolerance " << tol_
                << " at t=" << s.t << "; reduce the step size";
            throw Error(ErrorCode::EnergyDriftExceeded, msg.str());
        }
    }

    double max() const noexcept { return max_; }

private:
    double e0_;
    double tol_;
    double max_ = 0.0;
};

} // namespace

Trajectory integrate(const PhaseState& state0, const IntegratorConfig& cfg,
                     const ModelParams& params)
{
    cfg.validate();
    const std::size_t steps = step_count(cfg);
    const double e0 = total_energy(state0, params);
    DriftMonitor monitor(e0, cfg.energy_drift_tol);

    std::vector<PhaseState> samples;
    samples.reserve(steps + 1);
    samples.push_back(state0);
    PhaseState s = state0;
    for (std::size_t i = 1; i <= steps; ++i) {
        s = rk4_step(s, cfg.step_h, params);
        // Pin sample times to the uniform grid instead of accumulating h.
        s.t = state0.t + static_cast<double>(i) * cfg.step_h;
        monitor.check(s, params);
        samples.push_back(s);
    }
    return Trajectory{std::move(samples), params, e0, cfg.step_h, monitor.max()};
}

SectionPointSet poincare_section(const PhaseState& state0, const IntegratorConfig& cfg,
                                 const ModelParams& params, std::size_t n_crossings)
{
    cfg.validate();
    if (n_crossings == 0)
        throw Error(ErrorCode::InvalidArgument, "n_crossings must be at least 1");
    if (state0.q1 == 0.0 && state0.p1 == 0.0)
        throw Error(ErrorCode::DegenerateOrbit,
                    "orbit starts with q1 = p1 = 0 and never leaves the q1 = 0 plane");

    const std::size_t steps = step_count(cfg);
    const double e0 = total_energy(state0, params);
    DriftMonitor monitor(e0, cfg.energy_drift_tol);

    SectionPointSet out;
    out.energy = e0;
    out.points.reserve(n_crossings);
    PhaseState prev = state0;
    for (std::size_t i = 1; i <= steps && out.points.size() < n_crossings; ++i) {
        PhaseState cur = rk4_step(prev, cfg.step_h, params);
        cur.t = state0.t + static_cast<double>(i) * cfg.step_h;
        monitor.check(cur, params);
        if (prev.q1 < 0.0 && cur.q1 >= 0.0) {
            const double frac = -prev.q1 / (cur.q1 - prev.q1);
            out.points.push_back({prev.t + frac * (cur.t - prev.t),
                                  prev.q2 + frac * (cur.q2 - prev.q2),
                                  prev.p2 + frac * (cur.p2 - prev.p2)});
        }
        prev = cur;
    }
    out.max_drift = monitor.max();
    if (out.points.empty()) {
        std::ostringstream msg;
        msg << "no q1 = 0 crossings before t_max=" << cfg.t_max;
        throw Error(ErrorCode::NoCrossings, msg.str());
    }
    return out;
}

PhaseState seed_on_shell(double energy, double q2, double p2, const ModelParams& params)
{
    const double kinetic = 2.0 * energy - p2 * p2 - 2.0 * potential_energy(0.0, q2, params);
    if (!std::isfinite(kinetic) || kinetic < 0.0) {
        // Tolerate rounding right at the shell boundary.
        if (std::isfinite(kinetic) && kinetic > -1e-12 * std::max(std::abs(energy), 1.0))
            return PhaseState(0.0, q2, 0.0, p2);
        std::ostringstream msg;
        msg << "seed (q2=" << q2 << ", p2=" << p2 << ") lies outside the energy shell E=" << energy;
        throw Error(ErrorCode::OffShell, msg.str());
    }
    return PhaseState(0.0, q2, std::sqrt(kinetic), p2);
}

PhaseState seed_state(const SectionSeed& seed, double energy, const ModelParams& params)
{
    if (!(energy > 0.0))
        throw Error(ErrorCode::InvalidArgument, "section seeds need a positive energy");
    if (params.v() == 0.0)
        throw Error(ErrorCode::InvalidArgument, "fractional seeds need v > 0 (unbounded q2 range)");
    const double q2_max = std::sqrt(energy / params.harmonic());
    const double p2_max = std::sqrt(2.0 * energy);
    return seed_on_shell(energy, seed.q2_frac * q2_max, seed.p2_frac * p2_max, params);
}

std::vector<SectionSeed> parse_seeds(const std::string& text)
{
    std::vector<SectionSeed> seeds;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        SectionSeed seed;
        if (!(fields >> seed.label))
            continue;
        std::string extra;
        if (!(fields >> seed.q2_frac >> seed.p2_frac) || (fields >> extra)
            || seed.q2_frac * seed.q2_frac + seed.p2_frac * seed.p2_frac > 1.0) {
            std::ostringstream msg;
            msg << "bad seed on line " << line_no << ": expected `label q2_frac p2_frac` inside the unit disc";
            throw Error(ErrorCode::InvalidArgument, msg.str());
        }
        seeds.push_back(seed);
    }
    return seeds;
}

} // namespace ymh
