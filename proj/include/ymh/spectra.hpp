#pragma once

// Level statistics: unfolding, nearest-neighbour spacings and the Brody
// family P(s; q) = alpha (q+1) s^q exp(-alpha s^(q+1)),
// alpha = Gamma((q+2)/(q+1))^(q+1). q = 0 is Poisson, q = 1 is Wigner.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ymh {

struct UnfoldedSpectrum {
    std::vector<double> levels;
    std::string source_block;
    int fit_degree = 0;

    double mean_spacing() const;
};

/// Least-squares polynomial fit of the given degree to the staircase
/// N(E_i) = i + 1, evaluated at the levels and rescaled to unit mean spacing.
/// Requires at least degree + 10 strictly ascending levels. Throws
/// DegenerateFit when the fitted staircase is not increasing over the data.
UnfoldedSpectrum unfold(std::span<const double> levels, int fit_degree,
                        std::string source_block = {});

struct SpacingEnsemble {
    std::vector<double> spacings;
    std::vector<std::size_t> per_block_counts;
    std::vector<std::string> block_labels;

    /// Appends the consecutive differences of one unfolded block.
    void add_block(const UnfoldedSpectrum& block);

    double mean() const;
};

/// Per-block consecutive differences, pooled in input order. Spacings never
/// cross block boundaries.
SpacingEnsemble spacings(std::span<const UnfoldedSpectrum> blocks);

double brody_alpha(double q);
double brody_pdf(double s, double q);
double poisson_pdf(double s);
double wigner_pdf(double s);

/// Sum of log brody_pdf(s_i, q) over the ensemble.
double brody_log_likelihood(std::span<const double> spacings, double q);

struct BrodyFit {
    double brody_q = 0.0;
    double log_likelihood = 0.0;
    double stderr_q = 0.0;
    bool at_boundary = false;
    std::size_t n_spacings = 0;
};

/// Maximum-likelihood Brody parameter on [0, 1]. The standard error comes
/// from the curvature of the log-likelihood at the optimum. Needs at least
/// 50 spacings (InsufficientData).
BrodyFit fit_brody(std::span<const double> spacings);

inline BrodyFit fit_brody(const SpacingEnsemble& ensemble) { return fit_brody(ensemble.spacings); }

struct HistogramBin {
    double center = 0.0;
    double density = 0.0;
    std::size_t count = 0;
};

/// Bins of width bin_width from s = 0, covering [0, max(s_extent, max s)].
/// Densities are count / (N * bin_width), so they integrate to one.
std::vector<HistogramBin> histogram(std::span<const double> spacings, double bin_width,
                                    double s_extent = 0.0);

} // namespace ymh
