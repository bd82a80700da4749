#include "ymh/spectra.hpp"

#include "ymh/error.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ymh {

double UnfoldedSpectrum::mean_spacing() const
{
    if (levels.size() < 2)
        return 0.0;
    return (levels.back() - levels.front()) / static_cast<double>(levels.size() - 1);
}

namespace {

double horner(const Eigen::VectorXd& c, double x)
{
    double y = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 0; --k)
        y = y * x + c[k];
    return y;
}

double horner_derivative(const Eigen::VectorXd& c, double x)
{
    double y = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 1; --k)
        y = y * x + static_cast<double>(k) * c[k];
    return y;
}

} // namespace

UnfoldedSpectrum unfold(std::span<const double> levels, int fit_degree, std::string source_block)
{
    if (fit_degree < 1)
        throw Error(ErrorCode::InvalidArgument, "unfolding degree must be at least 1");
    const std::size_t n = levels.size();
    if (n < static_cast<std::size_t>(fit_degree) + 10) {
        std::ostringstream msg;
        msg << "unfolding with degree " << fit_degree << " needs at least " << fit_degree + 10
            << " levels, got " << n;
        throw Error(ErrorCode::InsufficientData, msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(levels[i]) || (i > 0 && !(levels[i] > levels[i - 1])))
            throw Error(ErrorCode::InvalidArgument, "levels must be finite and strictly ascending");
    }

    // Map onto [-1, 1] to keep the Vandermonde system well conditioned.
    const double lo = levels.front();
    const double hi = levels.back();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto scaled = [&](double e) { return (e - mid) / half; };

    const auto rows = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd design(rows, fit_degree + 1);
    Eigen::VectorXd staircase(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double x = scaled(levels[static_cast<std::size_t>(i)]);
        double p = 1.0;
        for (int k = 0; k <= fit_degree; ++k) {
            design(i, k) = p;
            p *= x;
        }
        staircase[i] = static_cast<double>(i + 1);
    }
    const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(staircase);

    constexpr int probes = 2000;
    for (int i = 0; i <= probes; ++i) {
        const double x = -1.0 + 2.0 * i / probes;
        if (!(horner_derivative(coeffs, x) > 0.0)) {
            std::ostringstream msg;
            msg << "degree-" << fit_degree << " staircase fit is not increasing at E="
                << mid + half * x << "; lower the unfolding degree";
            throw Error(ErrorCode::DegenerateFit, msg.str());
        }
    }

    UnfoldedSpectrum out;
    out.source_block = std::move(source_block);
    out.fit_degree = fit_degree;
    out.levels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.levels[i] = horner(coeffs, scaled(levels[i]));

    // Pin the mean spacing to one; the fit leaves it off by O(1%) at the ends.
    const double first = out.levels.front();
    const double stretch = static_cast<double>(n - 1) / (out.levels.back() - first);
    for (double& e : out.levels)
        e = first + (e - first) * stretch;
    return out;
}

void SpacingEnsemble::add_block(const UnfoldedSpectrum& block)
{
    const auto& e = block.levels;
    std::size_t added = 0;
    for (std::size_t i = 1; i < e.size(); ++i, ++added)
        spacings.push_back(e[i] - e[i - 1]);
    per_block_counts.push_back(added);
    block_labels.push_back(block.source_block);
}

double SpacingEnsemble::mean() const
{
    if (spacings.empty())
        return 0.0;
    return std::accumulate(spacings.begin(), spacings.end(), 0.0)
           / static_cast<double>(spacings.size());
}

SpacingEnsemble spacings(std::span<const UnfoldedSpectrum> blocks)
{
    SpacingEnsemble out;
    for (const auto& b : blocks)
        out.add_block(b);
    return out;
}

double brody_alpha(double q)
{
    return std::exp((q + 1.0) * std::lgamma((q + 2.0) / (q + 1.0)));
}

double brody_pdf(double s, double q)
{
    if (!(q >= 0.0 && q <= 1.0) || !(s >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "brody_pdf needs s >= 0 and q in [0, 1]");
    const double a = brody_alpha(q);
    return a * (q + 1.0) * std::pow(s, q) * std::exp(-a * std::pow(s, q + 1.0));
}

double poisson_pdf(double s)
{
    if (!(s >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "poisson_pdf needs s >= 0");
    return std::exp(-s);
}

double wigner_pdf(double s)
{
    if (!(s >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "wigner_pdf needs s >= 0");
    constexpr double pi = 3.14159265358979323846;
    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double brody_log_likelihood(std::span<const double> spacings, double q)
{
    const double log_a = (q + 1.0) * std::lgamma((q + 2.0) / (q + 1.0));
    const double a = std::exp(log_a);
    constexpr double floor = std::numeric_limits<double>::min();
    double sum = 0.0;
    for (double s : spacings) {
        const double x = std::max(s, floor);
        sum += log_a + std::log1p(q) + q * std::log(x) - a * std::pow(x, q + 1.0);
    }
    return sum;
}

BrodyFit fit_brody(std::span<const double> spacings)
{
    constexpr std::size_t min_spacings = 50;
    if (spacings.size() < min_spacings) {
        std::ostringstream msg;
        msg << "Brody fit needs at least " << min_spacings << " spacings, got " << spacings.size();
        throw Error(ErrorCode::InsufficientData, msg.str());
    }
    for (double s : spacings) {
        if (!(s >= 0.0) || !std::isfinite(s))
            throw Error(ErrorCode::InvalidArgument, "spacings must be finite and non-negative");
    }

    auto nll = [&](double q) { return -brody_log_likelihood(spacings, q); };
    const auto [q_best, f_best] = boost::math::tools::brent_find_minima(nll, 0.0, 1.0, 24);

    BrodyFit fit;
    fit.n_spacings = spacings.size();
    fit.brody_q = q_best;
    fit.log_likelihood = -f_best;

    constexpr double edge = 1e-4;
    for (double bound : {0.0, 1.0}) {
        if (std::abs(q_best - bound) < edge) {
            const double f_bound = nll(bound);
            if (f_bound <= f_best + 1e-12 * std::abs(f_best)) {
                fit.brody_q = bound;
                fit.log_likelihood = -f_bound;
            }
            fit.at_boundary = true;
        }
    }

    // Observed information from a finite-difference second derivative,
    // one-sided when the optimum sits on a bound.
    const double d = 1e-3;
    double curvature = 0.0;
    const double q = fit.brody_q;
    if (q - d < 0.0)
        curvature = (nll(q) - 2.0 * nll(q + d) + nll(q + 2.0 * d)) / (d * d);
    else if (q + d > 1.0)
        curvature = (nll(q) - 2.0 * nll(q - d) + nll(q - 2.0 * d)) / (d * d);
    else
        curvature = (nll(q + d) - 2.0 * nll(q) + nll(q - d)) / (d * d);
    fit.stderr_q = curvature > 0.0 ? 1.0 / std::sqrt(curvature)
                                   : std::numeric_limits<double>::infinity();
    return fit;
}

std::vector<HistogramBin> histogram(std::span<const double> spacings, double bin_width,
                                    double s_extent)
{
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
    if (spacings.empty())
        throw Error(ErrorCode::InsufficientData, "histogram of an empty ensemble");
    double s_max = s_extent;
    for (double s : spacings) {
        if (!(s >= 0.0) || !std::isfinite(s))
            throw Error(ErrorCode::InvalidArgument, "spacings must be finite and non-negative");
        s_max = std::max(s_max, s);
    }
    // The last bin is closed on the right so s == s_max lands inside.
    const auto n_bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(s_max / bin_width)));
    std::vector<HistogramBin> bins(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k)
        bins[k].center = (static_cast<double>(k) + 0.5) * bin_width;
    for (double s : spacings) {
        const auto k = std::min(n_bins - 1, static_cast<std::size_t>(s / bin_width));
        ++bins[k].count;
    }
    const double norm = 1.0 / (static_cast<double>(spacings.size()) * bin_width);
    for (auto& b : bins)
        b.density = static_cast<double>(b.count) * norm;
    return bins;
}

} // namespace ymh
