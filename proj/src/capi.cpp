#include "ymh/ymh.h"

#include "ymh/dynamics.hpp"
#include "ymh/error.hpp"
#include "ymh/model.hpp"
#include "ymh/quantum.hpp"
#include "ymh/spectra.hpp"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

namespace ymh {
// Generated from config/poincare_seeds.txt at build time.
extern const char* const default_seed_text;
} // namespace ymh

struct ymh_trajectory {
    ymh::Trajectory value;
};

struct ymh_section {
    ymh::SectionPointSet value;
};

struct ymh_seed_list {
    std::vector<ymh::SectionSeed> value;
};

struct ymh_spectrum {
    ymh::SpectrumBlock value;
    std::string label;
};

struct ymh_ensemble {
    ymh::SpacingEnsemble value;
};

namespace {

thread_local std::string last_error;

int fail(int status, const char* message)
{
    last_error = message;
    return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
int guarded(Fn&& fn)
{
    try {
        fn();
        return YMH_OK;
    } catch (const ymh::Error& e) {
        return fail(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(YMH_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(YMH_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(YMH_ERR_INTERNAL, "unknown exception");
    }
}

#define YMH_REQUIRE(cond)                                                                 \
    do {                                                                                  \
        if (!(cond))                                                                      \
            return fail(YMH_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond);   \
    } while (0)

ymh::ModelParams to_params(const ymh_params* p) { return ymh::ModelParams(p->g, p->v); }

ymh::PhaseState to_state(const ymh_state* s)
{
    return ymh::PhaseState(s->q1, s->q2, s->p1, s->p2, s->t);
}

ymh_state from_state(const ymh::PhaseState& s) { return {s.q1, s.q2, s.p1, s.p2, s.t}; }

ymh::IntegratorConfig to_config(const ymh_integrator_config* c)
{
    return ymh::IntegratorConfig{c->step_h, c->t_max, c->energy_drift_tol};
}

bool valid_sector(ymh_sector s) { return s >= YMH_SECTOR_EE && s <= YMH_SECTOR_OO_ANTI; }

ymh::Sector to_sector(ymh_sector s)
{
    using ymh::Exchange;
    using ymh::Parity;
    switch (s) {
    case YMH_SECTOR_EE: return {Parity::Even, Parity::Even, Exchange::None};
    case YMH_SECTOR_OO: return {Parity::Odd, Parity::Odd, Exchange::None};
    case YMH_SECTOR_EO: return {Parity::Even, Parity::Odd, Exchange::None};
    case YMH_SECTOR_OE: return {Parity::Odd, Parity::Even, Exchange::None};
    case YMH_SECTOR_EE_SYM: return {Parity::Even, Parity::Even, Exchange::Symmetric};
    case YMH_SECTOR_EE_ANTI: return {Parity::Even, Parity::Even, Exchange::Antisymmetric};
    case YMH_SECTOR_OO_SYM: return {Parity::Odd, Parity::Odd, Exchange::Symmetric};
    case YMH_SECTOR_OO_ANTI: return {Parity::Odd, Parity::Odd, Exchange::Antisymmetric};
    }
    throw ymh::Error(ymh::ErrorCode::InvalidArgument, "unknown sector");
}

ymh::ConvergenceOptions to_options(const ymh_convergence_options* o)
{
    ymh::ConvergenceOptions out;
    out.n_levels = o->n_levels;
    out.digits = o->digits;
    out.n_max_start = o->n_max_start;
    out.n_max_step = o->n_max_step;
    out.quantum.coupling_scale = o->coupling_scale;
    out.quantum.max_dimension = o->max_dimension;
    return out;
}

ymh_spectrum* wrap(ymh::SpectrumBlock block)
{
    auto* out = new ymh_spectrum{std::move(block), {}};
    out->label = out->value.sector.label();
    return out;
}

} // namespace

extern "C" {

const char* ymh_version(void) { return "0.1.0"; }

const char* ymh_status_name(int status)
{
    switch (status) {
    case YMH_OK: return "OK";
    case YMH_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case YMH_ERR_INTERNAL: return "Internal";
    default: break;
    }
    if (status >= YMH_ERR_INVALID_ARGUMENT && status <= YMH_ERR_INSUFFICIENT_DATA)
        return ymh::to_string(static_cast<ymh::ErrorCode>(status));
    return "Unknown";
}

const char* ymh_last_error(void) { return last_error.c_str(); }

/* model */

int ymh_omega(const ymh_params* params, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = to_params(params).omega(); });
}

int ymh_potential_energy(const ymh_params* params, double q1, double q2, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = ymh::potential_energy(q1, q2, to_params(params)); });
}

int ymh_total_energy(const ymh_params* params, const ymh_state* state, double* out)
{
    YMH_REQUIRE(params && state && out);
    return guarded([&] { *out = ymh::total_energy(to_state(state), to_params(params)); });
}

int ymh_curvature_discriminant(const ymh_params* params, double q1, double q2, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = ymh::curvature_discriminant(q1, q2, to_params(params)); });
}

int ymh_critical_energy(const ymh_params* params, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = ymh::critical_energy(to_params(params)); });
}

int ymh_critical_vacuum(double energy, double g, double* out)
{
    YMH_REQUIRE(out);
    return guarded([&] { *out = ymh::critical_vacuum(energy, g); });
}

int ymh_zero_curvature_minimum(const ymh_params* params, double* q1, double* q2, double* energy)
{
    YMH_REQUIRE(params && q1 && q2 && energy);
    return guarded([&] {
        const auto m = ymh::minimize_on_zero_curvature(to_params(params));
        *q1 = m.q1;
        *q2 = m.q2;
        *energy = m.energy;
    });
}

/* dynamics */

ymh_integrator_config ymh_integrator_config_default(void)
{
    const ymh::IntegratorConfig c;
    return {c.step_h, c.t_max, c.energy_drift_tol};
}

int ymh_rk4_step(const ymh_params* params, const ymh_state* state, double h, ymh_state* out)
{
    YMH_REQUIRE(params && state && out);
    YMH_REQUIRE(h > 0.0);
    return guarded([&] { *out = from_state(ymh::rk4_step(to_state(state), h, to_params(params))); });
}

int ymh_seed_on_shell(const ymh_params* params, double energy, double q2, double p2, ymh_state* out)
{
    YMH_REQUIRE(params && out);
    return guarded(
        [&] { *out = from_state(ymh::seed_on_shell(energy, q2, p2, to_params(params))); });
}

int ymh_integrate(const ymh_params* params, const ymh_state* state0,
                  const ymh_integrator_config* cfg, ymh_trajectory** out)
{
    YMH_REQUIRE(params && state0 && cfg && out);
    *out = nullptr;
    return guarded([&] {
        *out = new ymh_trajectory{ymh::integrate(to_state(state0), to_config(cfg), to_params(params))};
    });
}

size_t ymh_trajectory_size(const ymh_trajectory* traj)
{
    return traj ? traj->value.samples.size() : 0;
}

int ymh_trajectory_sample(const ymh_trajectory* traj, size_t index, ymh_state* out)
{
    YMH_REQUIRE(traj && out);
    YMH_REQUIRE(index < traj->value.samples.size());
    *out = from_state(traj->value.samples[index]);
    return YMH_OK;
}

double ymh_trajectory_initial_energy(const ymh_trajectory* traj)
{
    return traj ? traj->value.initial_energy : NAN;
}

double ymh_trajectory_max_drift(const ymh_trajectory* traj)
{
    return traj ? traj->value.max_drift : NAN;
}

void ymh_trajectory_free(ymh_trajectory* traj) { delete traj; }

int ymh_poincare_section(const ymh_params* params, const ymh_state* state0,
                         const ymh_integrator_config* cfg, size_t n_crossings, ymh_section** out)
{
    YMH_REQUIRE(params && state0 && cfg && out);
    *out = nullptr;
    return guarded([&] {
        *out = new ymh_section{
            ymh::poincare_section(to_state(state0), to_config(cfg), to_params(params), n_crossings)};
    });
}

size_t ymh_section_size(const ymh_section* section)
{
    return section ? section->value.points.size() : 0;
}

int ymh_section_point(const ymh_section* section, size_t index, double* t, double* q2, double* p2)
{
    YMH_REQUIRE(section);
    YMH_REQUIRE(index < section->value.points.size());
    const auto& p = section->value.points[index];
    if (t)
        *t = p.t;
    if (q2)
        *q2 = p.q2;
    if (p2)
        *p2 = p.p2;
    return YMH_OK;
}

double ymh_section_energy(const ymh_section* section) { return section ? section->value.energy : NAN; }

double ymh_section_max_drift(const ymh_section* section)
{
    return section ? section->value.max_drift : NAN;
}

void ymh_section_free(ymh_section* section) { delete section; }

int ymh_seed_list_parse(const char* text, ymh_seed_list** out)
{
    YMH_REQUIRE(text && out);
    *out = nullptr;
    return guarded([&] { *out = new ymh_seed_list{ymh::parse_seeds(text)}; });
}

int ymh_seed_list_default(ymh_seed_list** out) { return ymh_seed_list_parse(ymh::default_seed_text, out); }

size_t ymh_seed_list_size(const ymh_seed_list* seeds) { return seeds ? seeds->value.size() : 0; }

int ymh_seed_list_get(const ymh_seed_list* seeds, size_t index, const char** label,
                      double* q2_frac, double* p2_frac)
{
    YMH_REQUIRE(seeds);
    YMH_REQUIRE(index < seeds->value.size());
    const auto& s = seeds->value[index];
    if (label)
        *label = s.label.c_str();
    if (q2_frac)
        *q2_frac = s.q2_frac;
    if (p2_frac)
        *p2_frac = s.p2_frac;
    return YMH_OK;
}

int ymh_seed_state(const ymh_params* params, double energy, double q2_frac, double p2_frac,
                   ymh_state* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] {
        const ymh::SectionSeed seed{"", q2_frac, p2_frac};
        *out = from_state(ymh::seed_state(seed, energy, to_params(params)));
    });
}

void ymh_seed_list_free(ymh_seed_list* seeds) { delete seeds; }

/* quantum */

const char* ymh_sector_label(ymh_sector sector)
{
    static const char* const labels[] = {"ee", "oo", "eo", "oe", "ee+", "ee-", "oo+", "oo-"};
    return valid_sector(sector) ? labels[sector] : "";
}

int ymh_h0_element(const ymh_params* params, int n1p, int n2p, int n1, int n2, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = ymh::h0_element(n1p, n2p, n1, n2, to_params(params)); });
}

int ymh_v_element(const ymh_params* params, int n1p, int n2p, int n1, int n2, double* out)
{
    YMH_REQUIRE(params && out);
    return guarded([&] { *out = ymh::v_element(n1p, n2p, n1, n2, to_params(params)); });
}

ymh_convergence_options ymh_convergence_options_default(void)
{
    const ymh::ConvergenceOptions o;
    return {o.n_levels,  o.digits, o.n_max_start, o.n_max_step, o.quantum.coupling_scale,
            o.quantum.max_dimension};
}

int ymh_spectrum_diagonalize(const ymh_params* params, ymh_sector sector, int n_max,
                             double coupling_scale, ymh_spectrum** out)
{
    YMH_REQUIRE(params && out && valid_sector(sector));
    *out = nullptr;
    return guarded([&] {
        ymh::QuantumOptions q;
        q.coupling_scale = coupling_scale;
        *out = wrap(ymh::diagonalize_block(
            ymh::build_block(to_sector(sector), ymh::BasisTruncation{n_max}, to_params(params), q)));
    });
}

int ymh_spectrum_converge(const ymh_params* params, ymh_sector sector,
                          const ymh_convergence_options* options, ymh_spectrum** out)
{
    YMH_REQUIRE(params && options && out && valid_sector(sector));
    *out = nullptr;
    return guarded([&] {
        *out = wrap(ymh::converge_levels(to_sector(sector), to_params(params), to_options(options)));
    });
}

int ymh_spectrum_converge_parity_blocks(const ymh_params* params,
                                        const ymh_convergence_options* options, ymh_spectrum* out[4])
{
    YMH_REQUIRE(params && options && out);
    for (int i = 0; i < 4; ++i)
        out[i] = nullptr;
    return guarded([&] {
        auto blocks = ymh::converge_parity_blocks(to_params(params), to_options(options));
        std::vector<ymh_spectrum*> made;
        try {
            for (auto& b : blocks)
                made.push_back(wrap(std::move(b)));
        } catch (...) {
            for (auto* m : made)
                delete m;
            throw;
        }
        for (int i = 0; i < 4; ++i)
            out[i] = made[static_cast<std::size_t>(i)];
    });
}

size_t ymh_spectrum_size(const ymh_spectrum* s) { return s ? s->value.levels.size() : 0; }

const double* ymh_spectrum_levels(const ymh_spectrum* s) { return s ? s->value.levels.data() : nullptr; }

const char* ymh_spectrum_label(const ymh_spectrum* s) { return s ? s->label.c_str() : ""; }

int ymh_spectrum_n_max(const ymh_spectrum* s) { return s ? s->value.n_max : 0; }

size_t ymh_spectrum_dimension(const ymh_spectrum* s) { return s ? s->value.dimension : 0; }

size_t ymh_spectrum_n_converged(const ymh_spectrum* s) { return s ? s->value.n_converged : 0; }

int ymh_spectrum_digits(const ymh_spectrum* s) { return s ? s->value.converged_digits : 0; }

size_t ymh_spectrum_rounds(const ymh_spectrum* s) { return s ? s->value.history.size() : 0; }

int ymh_spectrum_round(const ymh_spectrum* s, size_t round, int* n_max, const double** levels,
                       size_t* count)
{
    YMH_REQUIRE(s);
    YMH_REQUIRE(round < s->value.history.size());
    const auto& r = s->value.history[round];
    if (n_max)
        *n_max = r.first;
    if (levels)
        *levels = r.second.data();
    if (count)
        *count = r.second.size();
    return YMH_OK;
}

void ymh_spectrum_free(ymh_spectrum* s) { delete s; }

/* level statistics */

int ymh_brody_pdf(double s, double q, double* out)
{
    YMH_REQUIRE(out);
    return guarded([&] { *out = ymh::brody_pdf(s, q); });
}

int ymh_poisson_pdf(double s, double* out)
{
    YMH_REQUIRE(out);
    return guarded([&] { *out = ymh::poisson_pdf(s); });
}

int ymh_wigner_pdf(double s, double* out)
{
    YMH_REQUIRE(out);
    return guarded([&] { *out = ymh::wigner_pdf(s); });
}

int ymh_ensemble_create(ymh_ensemble** out)
{
    YMH_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new ymh_ensemble{}; });
}

int ymh_ensemble_add_levels(ymh_ensemble* ensemble, const double* levels, size_t count,
                            int unfold_degree, const char* label)
{
    YMH_REQUIRE(ensemble && (levels || count == 0));
    return guarded([&] {
        ensemble->value.add_block(
            ymh::unfold(std::span<const double>(levels, count), unfold_degree, label ? label : ""));
    });
}

int ymh_ensemble_add_spacings(ymh_ensemble* ensemble, const double* spacings, size_t count,
                              const char* label)
{
    YMH_REQUIRE(ensemble && (spacings || count == 0));
    for (size_t i = 0; i < count; ++i) {
        if (!(spacings[i] >= 0.0) || !std::isfinite(spacings[i]))
            return fail(YMH_ERR_INVALID_ARGUMENT, "spacings must be finite and non-negative");
    }
    return guarded([&] {
        auto& e = ensemble->value;
        e.spacings.insert(e.spacings.end(), spacings, spacings + count);
        e.per_block_counts.push_back(count);
        e.block_labels.emplace_back(label ? label : "");
    });
}

size_t ymh_ensemble_size(const ymh_ensemble* e) { return e ? e->value.spacings.size() : 0; }

const double* ymh_ensemble_spacings(const ymh_ensemble* e)
{
    return e ? e->value.spacings.data() : nullptr;
}

size_t ymh_ensemble_blocks(const ymh_ensemble* e) { return e ? e->value.per_block_counts.size() : 0; }

size_t ymh_ensemble_block_count(const ymh_ensemble* e, size_t block)
{
    if (!e || block >= e->value.per_block_counts.size())
        return 0;
    return e->value.per_block_counts[block];
}

void ymh_ensemble_free(ymh_ensemble* e) { delete e; }

int ymh_fit_brody(const ymh_ensemble* ensemble, ymh_brody_fit* out)
{
    YMH_REQUIRE(ensemble && out);
    return guarded([&] {
        const auto fit = ymh::fit_brody(ensemble->value);
        *out = {fit.brody_q, fit.log_likelihood, fit.stderr_q, fit.at_boundary ? 1 : 0,
                fit.n_spacings};
    });
}

int ymh_histogram(const ymh_ensemble* ensemble, double bin_width, double s_extent, double* centers,
                  double* densities, size_t* counts, size_t capacity, size_t* n_bins)
{
    YMH_REQUIRE(ensemble && n_bins);
    std::vector<ymh::HistogramBin> bins;
    const int status =
        guarded([&] { bins = ymh::histogram(ensemble->value.spacings, bin_width, s_extent); });
    if (status != YMH_OK)
        return status;
    *n_bins = bins.size();
    if (capacity == 0 && !centers && !densities && !counts)
        return YMH_OK;
    if (capacity < bins.size())
        return fail(YMH_ERR_BUFFER_TOO_SMALL, "histogram buffers are smaller than the bin count");
    for (size_t k = 0; k < bins.size(); ++k) {
        if (centers)
            centers[k] = bins[k].center;
        if (densities)
            densities[k] = bins[k].density;
        if (counts)
            counts[k] = bins[k].count;
    }
    return YMH_OK;
}

} // extern "C"
