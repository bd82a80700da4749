// ymh: command-line driver for the Yang-Mills-Higgs chaos library.
//
//   ymh curvature  critical energy / vacuum with a numerical cross-check
//   ymh poincare   Poincare sections for a seed list (one CSV per seed)
//   ymh spectrum   certified parity-block spectra (one CSV per block)
//   ymh pspacing   spacing histogram, reference curves and Brody fit
//   ymh pipeline   v sweep: spectrum -> unfold -> fit, plus a summary table
//
// Every option can also be given as `key=value` in a --config file; flags
// on the command line win.

#include "output.hpp"

#include "ymh/ymh.h"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using ymhcli::join;
using ymhcli::num;

namespace {

enum ExitCode { Success = 0, Internal = 1, InvalidConfig = 2, NumericalFailure = 3, InsufficientData = 4 };

int exit_code_for(int status)
{
    switch (status) {
    case YMH_OK: return Success;
    case YMH_ERR_INVALID_ARGUMENT:
    case YMH_ERR_OFF_SHELL:
    case YMH_ERR_DEGENERATE_ORBIT: return InvalidConfig;
    case YMH_ERR_INSUFFICIENT_DATA: return InsufficientData;
    case YMH_ERR_INTERNAL:
    case YMH_ERR_BUFFER_TOO_SMALL: return Internal;
    default: return NumericalFailure;
    }
}

struct ApiError : std::runtime_error {
    ApiError(int status_, const std::string& what) : std::runtime_error(what), status(status_) {}
    int status;
};

void check(int status, const std::string& stage)
{
    if (status != YMH_OK)
        throw ApiError(status, stage + ": " + ymh_status_name(status) + ": " + ymh_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using SpectrumPtr = std::unique_ptr<ymh_spectrum, Deleter<ymh_spectrum, ymh_spectrum_free>>;
using SectionPtr = std::unique_ptr<ymh_section, Deleter<ymh_section, ymh_section_free>>;
using TrajectoryPtr = std::unique_ptr<ymh_trajectory, Deleter<ymh_trajectory, ymh_trajectory_free>>;
using EnsemblePtr = std::unique_ptr<ymh_ensemble, Deleter<ymh_ensemble, ymh_ensemble_free>>;
using SeedListPtr = std::unique_ptr<ymh_seed_list, Deleter<ymh_seed_list, ymh_seed_list_free>>;

struct RunConfig {
    std::string command;
    double g = 1.0;
    double v = 1.0;
    std::vector<double> v_list;
    double energy = 10.0;
    double h = 1e-3;
    double t_max = 1e3;
    double drift_tol = 1e-6;
    std::size_t n_crossings = 500;
    std::string seeds = "builtin";
    bool dump_trajectory = false;
    std::size_t dump_stride = 100;
    std::size_t n_levels = 100;
    int digits = 8;
    std::size_t max_dim = 4096;
    double coupling_scale = 1.0;
    int unfold_degree = 6;
    double bin_width = 0.25;
    double s_extent = 4.0;
    std::vector<std::string> spectra;
    bool exchange_diagnostic = false;
    std::string out = ".";
    bool v_given = false;
    bool v_list_given = false;

    std::vector<double> sweep() const
    {
        if (v_list_given && !v_list.empty())
            return v_list;
        return {v};
    }

    // The fully resolved configuration as one line of `key=value` tokens,
    // readable back through --config (one token per line).
    std::string echo() const
    {
        std::ostringstream s;
        s << "# config command=" << command << " g=" << num(g);
        if (v_given)
            s << " v=" << num(v);
        if (v_list_given)
            s << " v-list=[" << join(v_list) << "]";
        s << " E=" << num(energy) << " h=" << num(h) << " t-max=" << num(t_max)
          << " drift-tol=" << num(drift_tol) << " n-crossings=" << n_crossings
          << " seeds=" << seeds << " dump-trajectory=" << (dump_trajectory ? "true" : "false")
          << " dump-stride=" << dump_stride << " n-levels=" << n_levels << " digits=" << digits
          << " max-dim=" << max_dim << " coupling-scale=" << num(coupling_scale)
          << " unfold-degree=" << unfold_degree << " bin-width=" << num(bin_width)
          << " s-extent=" << num(s_extent)
          << " exchange-diagnostic=" << (exchange_diagnostic ? "true" : "false") << "\n";
        return s.str();
    }
};

// Runs fn(i) for i in [0, n) on a small worker pool; the first exception wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        }));
    }
    for (auto& j : jobs)
        j.get();
}

ymh_params params_for(const RunConfig& cfg, double v) { return ymh_params{cfg.g, v}; }

ymh_integrator_config integrator_for(const RunConfig& cfg)
{
    return ymh_integrator_config{cfg.h, cfg.t_max, cfg.drift_tol};
}

ymh_convergence_options convergence_for(const RunConfig& cfg)
{
    ymh_convergence_options o = ymh_convergence_options_default();
    o.n_levels = cfg.n_levels;
    o.digits = cfg.digits;
    o.coupling_scale = cfg.coupling_scale;
    o.max_dimension = cfg.max_dim;
    return o;
}

// ---- curvature ------------------------------------------------------------

int cmd_curvature(const RunConfig& cfg, std::ostream& out)
{
    double v_c = 0.0;
    check(ymh_critical_vacuum(cfg.energy, cfg.g, &v_c), "curvature");
    const double v = cfg.v_given ? cfg.v : v_c;
    const ymh_params p = params_for(cfg, v);
    double e_c = 0.0;
    check(ymh_critical_energy(&p, &e_c), "curvature");
    double q1 = 0.0, q2 = 0.0, e_min = 0.0;
    check(ymh_zero_curvature_minimum(&p, &q1, &q2, &e_min), "curvature oracle");

    std::ostringstream s;
    s << "g=" << num(cfg.g) << "\n"
      << "E=" << num(cfg.energy) << "\n"
      << "v_c=" << num(v_c) << "\n"
      << "v=" << num(v) << "\n"
      << "E_c=" << num(e_c) << "\n"
      << "oracle_q1=" << num(q1) << "\n"
      << "oracle_q2=" << num(q2) << "\n"
      << "oracle_E_min=" << num(e_min) << "\n"
      << "oracle_residual=" << num(std::abs(e_min - e_c) / e_c) << "\n";
    out << s.str();
    if (cfg.out != ".") {
        fs::create_directories(cfg.out);
        ymhcli::write_file(fs::path(cfg.out) / "curvature.txt", cfg.echo() + s.str());
    }
    return Success;
}

// ---- poincare -------------------------------------------------------------

struct SeedItem {
    double v = 0.0;
    std::string label;
    double q2_frac = 0.0;
    double p2_frac = 0.0;
};

SeedListPtr load_seeds(const RunConfig& cfg)
{
    ymh_seed_list* raw = nullptr;
    if (cfg.seeds == "builtin") {
        check(ymh_seed_list_default(&raw), "seeds");
    } else {
        const std::string text = ymhcli::read_file(cfg.seeds);
        check(ymh_seed_list_parse(text.c_str(), &raw), "seeds " + cfg.seeds);
    }
    return SeedListPtr(raw);
}

std::string section_header(const RunConfig& cfg, double v)
{
    return "# E=" + num(cfg.energy) + " g=" + num(cfg.g) + " v=" + num(v) + " h=" + num(cfg.h)
           + " orientation=+\n";
}

void run_seed(const RunConfig& cfg, const SeedItem& item, std::string& report)
{
    const ymh_params p = params_for(cfg, item.v);
    ymh_state s0{};
    check(ymh_seed_state(&p, cfg.energy, item.q2_frac, item.p2_frac, &s0), "seed " + item.label);
    const ymh_integrator_config ic = integrator_for(cfg);

    ymh_section* raw = nullptr;
    check(ymh_poincare_section(&p, &s0, &ic, cfg.n_crossings, &raw), "section " + item.label);
    SectionPtr section(raw);

    std::string text = section_header(cfg, item.v);
    text += "# seed=" + item.label + " q2_frac=" + num(item.q2_frac) + " p2_frac=" + num(item.p2_frac)
            + " q2=" + num(s0.q2) + " p2=" + num(s0.p2) + " p1=" + num(s0.p1) + "\n";
    text += cfg.echo();
    text += "t,q2,p2\n";
    const std::size_t n = ymh_section_size(section.get());
    for (std::size_t i = 0; i < n; ++i) {
        double t = 0.0, q2 = 0.0, p2 = 0.0;
        check(ymh_section_point(section.get(), i, &t, &q2, &p2), "section " + item.label);
        text += num(t) + "," + num(q2) + "," + num(p2) + "\n";
    }
    const std::string stem = "v" + num(item.v) + "_" + item.label;
    ymhcli::write_file(fs::path(cfg.out) / ("poincare_" + stem + ".csv"), text);
    report = "seed=" + item.label + " v=" + num(item.v) + " crossings=" + num(n)
             + " max_drift=" + num(ymh_section_max_drift(section.get()));

    if (!cfg.dump_trajectory)
        return;
    ymh_trajectory* traj_raw = nullptr;
    check(ymh_integrate(&p, &s0, &ic, &traj_raw), "trajectory " + item.label);
    TrajectoryPtr traj(traj_raw);
    std::string dump = "# E=" + num(cfg.energy) + " g=" + num(cfg.g) + " v=" + num(item.v)
                       + " h=" + num(cfg.h) + " stride=" + num(cfg.dump_stride) + "\n";
    dump += cfg.echo();
    dump += "t,q1,q2,p1,p2,energy\n";
    const std::size_t stride = std::max<std::size_t>(1, cfg.dump_stride);
    for (std::size_t i = 0; i < ymh_trajectory_size(traj.get()); i += stride) {
        ymh_state s{};
        check(ymh_trajectory_sample(traj.get(), i, &s), "trajectory " + item.label);
        double e = 0.0;
        check(ymh_total_energy(&p, &s, &e), "trajectory " + item.label);
        dump += num(s.t) + "," + num(s.q1) + "," + num(s.q2) + "," + num(s.p1) + "," + num(s.p2)
                + "," + num(e) + "\n";
    }
    ymhcli::write_file(fs::path(cfg.out) / ("trajectory_" + stem + ".csv"), dump);
}

int cmd_poincare(const RunConfig& cfg, std::ostream& out)
{
    const SeedListPtr seeds = load_seeds(cfg);
    std::vector<SeedItem> items;
    for (double v : cfg.sweep()) {
        for (std::size_t i = 0; i < ymh_seed_list_size(seeds.get()); ++i) {
            SeedItem item;
            const char* label = nullptr;
            check(ymh_seed_list_get(seeds.get(), i, &label, &item.q2_frac, &item.p2_frac), "seeds");
            item.v = v;
            item.label = label;
            items.push_back(item);
        }
    }
    fs::create_directories(cfg.out);

    std::vector<std::string> reports(items.size());
    std::vector<int> statuses(items.size(), YMH_OK);
    parallel_for(items.size(), [&](std::size_t i) {
        try {
            run_seed(cfg, items[i], reports[i]);
        } catch (const ApiError& e) {
            statuses[i] = e.status;
            reports[i] = std::string("seed=") + items[i].label + " v=" + num(items[i].v)
                         + " error=" + e.what();
        }
    });

    int code = Success;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (statuses[i] == YMH_OK) {
            out << reports[i] << "\n";
            continue;
        }
        std::cerr << reports[i] << "\n";
        // A seed that never reaches the surface is reported, not fatal.
        if (statuses[i] != YMH_ERR_NO_CROSSINGS && statuses[i] != YMH_ERR_DEGENERATE_ORBIT)
            code = std::max(code, exit_code_for(statuses[i]));
    }
    return code;
}

// ---- spectrum -------------------------------------------------------------

struct BlockResult {
    std::string label;
    SpectrumPtr spectrum;
    int status = YMH_OK;
    std::string error;
};

std::array<BlockResult, 4> converge_blocks(const RunConfig& cfg, double v)
{
    const ymh_params p = params_for(cfg, v);
    const ymh_convergence_options o = convergence_for(cfg);
    constexpr std::array<ymh_sector, 4> sectors{YMH_SECTOR_EE, YMH_SECTOR_OO, YMH_SECTOR_EO,
                                                YMH_SECTOR_OE};
    std::array<BlockResult, 4> out;
    parallel_for(sectors.size(), [&](std::size_t i) {
        ymh_spectrum* raw = nullptr;
        out[i].label = ymh_sector_label(sectors[i]);
        out[i].status = ymh_spectrum_converge(&p, sectors[i], &o, &raw);
        if (out[i].status != YMH_OK)
            out[i].error = ymh_last_error();
        out[i].spectrum.reset(raw);
    });
    return out;
}

std::string certificate(const RunConfig& cfg, double v, const std::array<BlockResult, 4>& blocks)
{
    std::ostringstream s;
    s << "g=" << num(cfg.g) << "\nv=" << num(v) << "\nn_levels=" << cfg.n_levels
      << "\ndigits=" << cfg.digits << "\nmax_dim=" << cfg.max_dim << "\n";
    for (const auto& b : blocks) {
        if (b.status != YMH_OK) {
            s << b.label << ".status=" << ymh_status_name(b.status) << "\n"
              << b.label << ".error=" << b.error << "\n";
            continue;
        }
        const ymh_spectrum* sp = b.spectrum.get();
        s << b.label << ".status=certified\n"
          << b.label << ".n_max=" << ymh_spectrum_n_max(sp) << "\n"
          << b.label << ".dimension=" << ymh_spectrum_dimension(sp) << "\n"
          << b.label << ".n_converged=" << ymh_spectrum_n_converged(sp) << "\n"
          << b.label << ".converged_digits=" << ymh_spectrum_digits(sp) << "\n"
          << b.label << ".rounds=" << ymh_spectrum_rounds(sp) << "\n";
    }
    return s.str();
}

void write_spectrum_files(const RunConfig& cfg, double v, const std::array<BlockResult, 4>& blocks)
{
    for (const auto& b : blocks) {
        if (b.status != YMH_OK)
            continue;
        const ymh_spectrum* sp = b.spectrum.get();
        std::string text = "# g=" + num(cfg.g) + " v=" + num(v) + " parity=" + b.label
                           + " n_max=" + num(ymh_spectrum_n_max(sp)) + " digits="
                           + num(ymh_spectrum_digits(sp)) + "\n";
        text += cfg.echo();
        text += "index,energy\n";
        const double* levels = ymh_spectrum_levels(sp);
        for (std::size_t i = 0; i < ymh_spectrum_size(sp); ++i)
            text += num(i) + "," + num(levels[i]) + "\n";
        ymhcli::write_file(fs::path(cfg.out) / ("spectrum_v" + num(v) + "_" + b.label + ".csv"), text);
    }
}

// Converges and writes all four blocks for one v; throws on the first failed block
// after writing the partial certificate.
std::array<BlockResult, 4> spectrum_for(const RunConfig& cfg, double v, std::ostream& out)
{
    auto blocks = converge_blocks(cfg, v);
    write_spectrum_files(cfg, v, blocks);
    const std::string cert = certificate(cfg, v, blocks);
    ymhcli::write_file(fs::path(cfg.out) / ("certificate_v" + num(v) + ".txt"), cfg.echo() + cert);
    out << cert;
    for (const auto& b : blocks) {
        if (b.status != YMH_OK)
            throw ApiError(b.status, "spectrum " + b.label + ": " + b.error);
    }
    return blocks;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out)
{
    fs::create_directories(cfg.out);
    for (double v : cfg.sweep())
        spectrum_for(cfg, v, out);
    return Success;
}

// ---- pspacing / pipeline --------------------------------------------------

std::vector<double> read_spectrum_csv(const std::string& path)
{
    std::istringstream in(ymhcli::read_file(path));
    std::vector<double> levels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ApiError(YMH_ERR_INVALID_ARGUMENT, "malformed spectrum row in " + path + ": " + line);
        try {
            levels.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ApiError(YMH_ERR_INVALID_ARGUMENT, "malformed spectrum row in " + path + ": " + line);
        }
    }
    return levels;
}

struct FitResult {
    ymh_brody_fit fit{};
    std::size_t n_blocks = 0;
};

// Writes the histogram, the overlay table and the fit report for one ensemble.
FitResult report_spacings(const RunConfig& cfg, const ymh_ensemble* ensemble, const std::string& tag,
                          std::ostream& out)
{
    FitResult r;
    r.n_blocks = ymh_ensemble_blocks(ensemble);
    check(ymh_fit_brody(ensemble, &r.fit), "brody fit " + tag);

    std::size_t n_bins = 0;
    check(ymh_histogram(ensemble, cfg.bin_width, cfg.s_extent, nullptr, nullptr, nullptr, 0, &n_bins),
          "histogram " + tag);
    std::vector<double> centers(n_bins), densities(n_bins);
    std::vector<std::size_t> counts(n_bins);
    check(ymh_histogram(ensemble, cfg.bin_width, cfg.s_extent, centers.data(), densities.data(),
                        counts.data(), n_bins, &n_bins),
          "histogram " + tag);

    const std::string meta = "# g=" + num(cfg.g) + " " + tag + " bin_width=" + num(cfg.bin_width)
                             + " unfold_degree=" + num(cfg.unfold_degree)
                             + " brody_q=" + num(r.fit.brody_q) + "\n";
    std::string hist = meta + cfg.echo() + "s_bin_center,density,n_samples\n";
    for (std::size_t k = 0; k < n_bins; ++k)
        hist += num(centers[k]) + "," + num(densities[k]) + "," + num(counts[k]) + "\n";
    ymhcli::write_file(fs::path(cfg.out) / ("pspacing_" + tag + ".csv"), hist);

    std::string overlay = meta + cfg.echo() + "s,poisson,wigner,brody_at_fit\n";
    const double ds = 0.02;
    const auto n_grid = static_cast<std::size_t>(std::llround(cfg.s_extent / ds));
    for (std::size_t i = 0; i <= n_grid; ++i) {
        const double s = ds * static_cast<double>(i);
        double po = 0.0, wi = 0.0, br = 0.0;
        check(ymh_poisson_pdf(s, &po), "overlay");
        check(ymh_wigner_pdf(s, &wi), "overlay");
        check(ymh_brody_pdf(s, r.fit.brody_q, &br), "overlay");
        overlay += num(s) + "," + num(po) + "," + num(wi) + "," + num(br) + "\n";
    }
    ymhcli::write_file(fs::path(cfg.out) / ("pspacing_overlay_" + tag + ".csv"), overlay);

    std::ostringstream fit;
    fit << "brody_q=" << num(r.fit.brody_q) << "\n"
        << "stderr=" << num(r.fit.stderr_q) << "\n"
        << "n_spacings=" << r.fit.n_spacings << "\n"
        << "unfold_degree=" << cfg.unfold_degree << "\n"
        << "log_likelihood=" << num(r.fit.log_likelihood) << "\n"
        << "at_boundary=" << r.fit.at_boundary << "\n"
        << "n_blocks=" << r.n_blocks << "\n";
    ymhcli::write_file(fs::path(cfg.out) / ("brody_" + tag + ".txt"), cfg.echo() + fit.str());
    out << "[" << tag << "]\n" << fit.str();
    return r;
}

EnsemblePtr ensemble_from_blocks(const RunConfig& cfg, const std::array<BlockResult, 4>& blocks)
{
    ymh_ensemble* raw = nullptr;
    check(ymh_ensemble_create(&raw), "ensemble");
    EnsemblePtr e(raw);
    for (const auto& b : blocks) {
        check(ymh_ensemble_add_levels(e.get(), ymh_spectrum_levels(b.spectrum.get()),
                                      ymh_spectrum_size(b.spectrum.get()), cfg.unfold_degree,
                                      b.label.c_str()),
              "unfold " + b.label);
    }
    return e;
}

int cmd_pspacing(const RunConfig& cfg, std::ostream& out)
{
    fs::create_directories(cfg.out);
    if (!cfg.spectra.empty()) {
        ymh_ensemble* raw = nullptr;
        check(ymh_ensemble_create(&raw), "ensemble");
        EnsemblePtr e(raw);
        for (const auto& path : cfg.spectra) {
            const auto levels = read_spectrum_csv(path);
            const std::string label = fs::path(path).stem().string();
            check(ymh_ensemble_add_levels(e.get(), levels.data(), levels.size(), cfg.unfold_degree,
                                          label.c_str()),
                  "unfold " + path);
        }
        report_spacings(cfg, e.get(), "files", out);
        return Success;
    }
    for (double v : cfg.sweep()) {
        auto blocks = spectrum_for(cfg, v, out);
        auto e = ensemble_from_blocks(cfg, blocks);
        report_spacings(cfg, e.get(), "v" + num(v), out);
    }
    return Success;
}

// Brody fit over the exchange-resolved sectors ee+, ee-, oo+, oo-, eo.
FitResult exchange_fit(const RunConfig& cfg, double v, std::ostream& out)
{
    const ymh_params p = params_for(cfg, v);
    const ymh_convergence_options o = convergence_for(cfg);
    constexpr std::array<ymh_sector, 5> sectors{YMH_SECTOR_EE_SYM, YMH_SECTOR_EE_ANTI,
                                                YMH_SECTOR_OO_SYM, YMH_SECTOR_OO_ANTI, YMH_SECTOR_EO};
    std::array<SpectrumPtr, 5> spectra;
    std::array<int, 5> status{};
    std::array<std::string, 5> errors;
    parallel_for(sectors.size(), [&](std::size_t i) {
        ymh_spectrum* raw = nullptr;
        status[i] = ymh_spectrum_converge(&p, sectors[i], &o, &raw);
        if (status[i] != YMH_OK)
            errors[i] = ymh_last_error();
        spectra[i].reset(raw);
    });
    ymh_ensemble* raw = nullptr;
    check(ymh_ensemble_create(&raw), "ensemble");
    EnsemblePtr e(raw);
    for (std::size_t i = 0; i < sectors.size(); ++i) {
        if (status[i] != YMH_OK)
            throw ApiError(status[i], std::string("exchange sector ") + ymh_sector_label(sectors[i])
                                          + ": " + errors[i]);
        check(ymh_ensemble_add_levels(e.get(), ymh_spectrum_levels(spectra[i].get()),
                                      ymh_spectrum_size(spectra[i].get()), cfg.unfold_degree,
                                      ymh_sector_label(sectors[i])),
              "unfold exchange sector");
    }
    return report_spacings(cfg, e.get(), "exchange_v" + num(v), out);
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& out)
{
    fs::create_directories(cfg.out);
    std::string summary = cfg.echo() + "v,brody_q,stderr\n";
    std::string exchange = cfg.echo() + "v,brody_q,stderr,n_spacings\n";
    for (double v : cfg.sweep()) {
        auto blocks = spectrum_for(cfg, v, out);
        auto e = ensemble_from_blocks(cfg, blocks);
        const FitResult r = report_spacings(cfg, e.get(), "v" + num(v), out);
        summary += num(v) + "," + num(r.fit.brody_q) + "," + num(r.fit.stderr_q) + "\n";
        if (cfg.exchange_diagnostic) {
            const FitResult x = exchange_fit(cfg, v, out);
            exchange += num(v) + "," + num(x.fit.brody_q) + "," + num(x.fit.stderr_q) + ","
                        + num(x.fit.n_spacings) + "\n";
        }
    }
    ymhcli::write_file(fs::path(cfg.out) / "summary.csv", summary);
    if (cfg.exchange_diagnostic)
        ymhcli::write_file(fs::path(cfg.out) / "summary_exchange.csv", exchange);
    out << "summary=" << (fs::path(cfg.out) / "summary.csv").string() << "\n";
    return Success;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Classical and quantum chaos in the homogeneous Yang-Mills-Higgs model", "ymh"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_config("--config", "", "Flat key=value configuration file; flags override it");
    app.require_subcommand(1, 1);

    RunConfig cfg;
    app.add_option("--g", cfg.g, "Coupling constant g")->capture_default_str();
    auto* v_opt = app.add_option("--v", cfg.v, "Higgs vacuum v")->capture_default_str();
    auto* v_list_opt = app.add_option("--v-list", cfg.v_list, "Sweep of v values")->delimiter(',');
    app.add_option("--E", cfg.energy, "Energy shell / energy for the critical vacuum")
        ->capture_default_str();
    app.add_option("--h", cfg.h, "RK4 step")->capture_default_str();
    app.add_option("--t-max", cfg.t_max, "Integration time")->capture_default_str();
    app.add_option("--drift-tol", cfg.drift_tol, "Relative energy drift tolerance")->capture_default_str();
    app.add_option("--n-crossings", cfg.n_crossings, "Section points per seed")->capture_default_str();
    app.add_option("--seeds", cfg.seeds, "Seed file (`label q2_frac p2_frac`) or 'builtin'")
        ->capture_default_str();
    app.add_flag("--dump-trajectory", cfg.dump_trajectory, "Also write trajectory CSVs");
    app.add_option("--dump-stride", cfg.dump_stride, "Keep every n-th trajectory sample")
        ->capture_default_str();
    app.add_option("--n-levels", cfg.n_levels, "Levels certified per block")->capture_default_str();
    app.add_option("--digits", cfg.digits, "Relative digits for certification")->capture_default_str();
    app.add_option("--max-dim", cfg.max_dim, "Block dimension cap")->capture_default_str();
    app.add_option("--coupling-scale", cfg.coupling_scale, "Scale of the quartic term (0 = harmonic)")
        ->capture_default_str();
    app.add_option("--unfold-degree", cfg.unfold_degree, "Staircase polynomial degree")
        ->capture_default_str();
    app.add_option("--bin-width", cfg.bin_width, "Histogram bin width")->capture_default_str();
    app.add_option("--s-extent", cfg.s_extent, "Minimum histogram / overlay range in s")
        ->capture_default_str();
    app.add_option("--spectra", cfg.spectra, "Spectrum CSVs for pspacing (one block each)")
        ->delimiter(',');
    app.add_flag("--exchange-diagnostic", cfg.exchange_diagnostic,
                 "pipeline: also fit the exchange-resolved sectors");
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();

    const std::vector<std::pair<std::string, std::string>> commands{
        {"curvature", "Critical energy 6 g^2 v^4 and critical vacuum, with a numerical check"},
        {"poincare", "Poincare sections (q1 = 0, dq1/dt > 0) for each seed"},
        {"spectrum", "Certified spectra of the four parity blocks"},
        {"pspacing", "Spacing distribution and Brody fit"},
        {"pipeline", "v sweep: spectrum, unfolding, Brody fit and summary"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->fallthrough()->set_help_flag("--help", "Print help");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Success : InvalidConfig;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.v_given = v_opt->count() > 0;
    cfg.v_list_given = v_list_opt->count() > 0;
    if (cfg.v_list_given && cfg.v_list.empty()) {
        std::cerr << "error: --v-list is empty\n";
        return InvalidConfig;
    }
    if (cfg.command == "pipeline" && !cfg.v_list_given && !cfg.v_given) {
        cfg.v_list = {1.0, 1.1, 1.2};
        cfg.v_list_given = true;
    }

    try {
        if (cfg.command == "curvature")
            return cmd_curvature(cfg, std::cout);
        if (cfg.command == "poincare")
            return cmd_poincare(cfg, std::cout);
        if (cfg.command == "spectrum")
            return cmd_spectrum(cfg, std::cout);
        if (cfg.command == "pspacing")
            return cmd_pspacing(cfg, std::cout);
        return cmd_pipeline(cfg, std::cout);
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.status);
    } catch (const ymhcli::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InvalidConfig;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
}
