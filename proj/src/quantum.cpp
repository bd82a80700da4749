#include "ymh/quantum.hpp"

#include "ymh/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace ymh {

std::string Sector::label() const
{
    std::string out;
    out += parity1 == Parity::Even ? 'e' : 'o';
    out += parity2 == Parity::Even ? 'e' : 'o';
    if (exchange == Exchange::Symmetric)
        out += '+';
    else if (exchange == Exchange::Antisymmetric)
        out += '-';
    return out;
}

std::array<Sector, 4> parity_sectors()
{
    return {Sector{Parity::Even, Parity::Even}, Sector{Parity::Odd, Parity::Odd},
            Sector{Parity::Even, Parity::Odd}, Sector{Parity::Odd, Parity::Even}};
}

Sector parse_sector(const std::string& label)
{
    auto parity = [&](char c) {
        if (c == 'e')
            return Parity::Even;
        if (c == 'o')
            return Parity::Odd;
        throw Error(ErrorCode::InvalidArgument, "unknown sector label '" + label + "'");
    };
    if (label.size() < 2 || label.size() > 3)
        throw Error(ErrorCode::InvalidArgument, "unknown sector label '" + label + "'");
    Sector s{parity(label[0]), parity(label[1]), Exchange::None};
    if (label.size() == 3) {
        if (s.parity1 != s.parity2 || (label[2] != '+' && label[2] != '-'))
            throw Error(ErrorCode::InvalidArgument, "unknown sector label '" + label + "'");
        s.exchange = label[2] == '+' ? Exchange::Symmetric : Exchange::Antisymmetric;
    }
    return s;
}

namespace {

void require_occupations(int a, int b, int c, int d)
{
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw Error(ErrorCode::InvalidArgument, "occupation numbers must be non-negative");
}

// <n'| (a + a+)^2 |n> for a single oscillator.
double ladder_factor(int np, int n)
{
    if (np == n)
        return 2.0 * n + 1.0;
    if (np == n - 2)
        return std::sqrt(static_cast<double>(n) * (n - 1));
    if (np == n + 2)
        return std::sqrt(static_cast<double>(n + 1) * (n + 2));
    return 0.0;
}

int parity_count(Parity p, int n_max)
{
    return p == Parity::Even ? n_max / 2 + 1 : (n_max + 1) / 2;
}

std::size_t sector_dimension(const Sector& s, int n_max)
{
    const auto n1 = static_cast<std::size_t>(parity_count(s.parity1, n_max));
    const auto n2 = static_cast<std::size_t>(parity_count(s.parity2, n_max));
    switch (s.exchange) {
    case Exchange::None: return n1 * n2;
    case Exchange::Symmetric: return n1 * (n1 + 1) / 2;
    case Exchange::Antisymmetric: return n1 * (n1 - 1) / 2;
    }
    return 0;
}

void require_valid(const Sector& s)
{
    if (s.exchange != Exchange::None && s.parity1 != s.parity2)
        throw Error(ErrorCode::InvalidArgument,
                    "exchange sectors exist only for the ee and oo blocks");
}

} // namespace

double h0_element(int n1p, int n2p, int n1, int n2, const ModelParams& params)
{
    require_occupations(n1p, n2p, n1, n2);
    if (n1p != n1 || n2p != n2)
        return 0.0;
    return params.omega() * (n1 + n2 + 1);
}

double v_element(int n1p, int n2p, int n1, int n2, const ModelParams& params)
{
    require_occupations(n1p, n2p, n1, n2);
    const double w = params.omega();
    if (w == 0.0)
        throw Error(ErrorCode::InvalidArgument, "the number basis requires v > 0");
    const double f1 = ladder_factor(n1p, n1);
    if (f1 == 0.0)
        return 0.0;
    return f1 * ladder_factor(n2p, n2) / (4.0 * w * w);
}

std::vector<std::pair<int, int>> sector_basis(const Sector& sector, const BasisTruncation& trunc)
{
    require_valid(sector);
    if (trunc.n_max < 0)
        throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
    const int first1 = static_cast<int>(sector.parity1);
    const int first2 = static_cast<int>(sector.parity2);
    std::vector<std::pair<int, int>> basis;
    basis.reserve(sector_dimension(sector, trunc.n_max));
    for (int n1 = first1; n1 <= trunc.n_max; n1 += 2) {
        for (int n2 = first2; n2 <= trunc.n_max; n2 += 2) {
            if (sector.exchange == Exchange::Symmetric && n2 < n1)
                continue;
            if (sector.exchange == Exchange::Antisymmetric && n2 <= n1)
                continue;
            basis.emplace_back(n1, n2);
        }
    }
    return basis;
}

ParityBlock build_block(const Sector& sector, const BasisTruncation& trunc,
                        const ModelParams& params, const QuantumOptions& options)
{
    require_valid(sector);
    if (params.v() == 0.0)
        throw Error(ErrorCode::InvalidArgument, "the number basis requires v > 0");
    if (trunc.n_max < 0)
        throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
    const std::size_t dim = sector_dimension(sector, trunc.n_max);
    if (dim > options.max_dimension) {
        std::ostringstream msg;
        msg << "block " << sector.label() << " at n_max=" << trunc.n_max << " has dimension " << dim
            << ", above the cap " << options.max_dimension;
        throw Error(ErrorCode::DimensionOverflow, msg.str());
    }

    const auto basis = sector_basis(sector, trunc);
    const double quartic = 0.5 * params.g() * params.g() * options.coupling_scale;
    auto element = [&](int n1p, int n2p, int n1, int n2) {
        return h0_element(n1p, n2p, n1, n2, params) + quartic * v_element(n1p, n2p, n1, n2, params);
    };
    const double sign = sector.exchange == Exchange::Antisymmetric ? -1.0 : 1.0;

    ParityBlock block{sector, trunc, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                           static_cast<Eigen::Index>(dim))};
    for (std::size_t i = 0; i < dim; ++i) {
        const auto [a, b] = basis[i];
        for (std::size_t j = i; j < dim; ++j) {
            const auto [c, d] = basis[j];
            if (std::abs(a - c) > 2 && std::abs(a - d) > 2)
                continue;
            double h = 0.0;
            if (sector.exchange == Exchange::None) {
                h = element(a, b, c, d);
            } else {
                // (|ab> + s|ba>) normalized; uses <ba|H|dc> = <ab|H|cd>.
                h = element(a, b, c, d) + sign * element(a, b, d, c);
                h /= std::sqrt((a == b ? 2.0 : 1.0) * (c == d ? 2.0 : 1.0));
            }
            const auto r = static_cast<Eigen::Index>(i);
            const auto s = static_cast<Eigen::Index>(j);
            block.matrix(r, s) = h;
            block.matrix(s, r) = h;
        }
    }
    return block;
}

SpectrumBlock diagonalize_block(const ParityBlock& block)
{
    SpectrumBlock out;
    out.sector = block.sector;
    out.dimension = block.dimension();
    out.n_max = block.truncation.n_max;
    if (block.dimension() == 0)
        return out;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigenvalue iteration failed for block " << block.sector.label() << " at n_max="
            << block.truncation.n_max;
        throw Error(ErrorCode::ConvergenceFailure, msg.str());
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    out.levels.assign(values.data(), values.data() + values.size());
    std::sort(out.levels.begin(), out.levels.end());
    return out;
}

SpectrumBlock converge_levels(const Sector& sector, const ModelParams& params,
                              const ConvergenceOptions& options)
{
    require_valid(sector);
    if (options.n_levels == 0 || options.digits < 1 || options.n_max_step < 1)
        throw Error(ErrorCode::InvalidArgument,
                    "convergence needs n_levels >= 1, digits >= 1 and a positive n_max step");

    int n_max = options.n_max_start;
    if (n_max <= 0) {
        n_max = 1;
        while (sector_dimension(sector, n_max) < options.n_levels)
            ++n_max;
    }

    const double tol = std::pow(10.0, -options.digits);
    std::vector<std::pair<int, std::vector<double>>> history;
    std::vector<double> previous;
    for (;;) {
        if (sector_dimension(sector, n_max) > options.quantum.max_dimension) {
            std::ostringstream msg;
            msg << "block " << sector.label() << ": first " << options.n_levels
                << " levels not certified to " << options.digits << " digits before dimension cap "
                << options.quantum.max_dimension;
            if (history.empty())
                msg << " (n_max " << n_max << " already has dimension "
                    << sector_dimension(sector, n_max) << ")";
            else
                msg << " (last n_max tried " << history.back().first << ")";
            throw Error(ErrorCode::NoConvergence, msg.str());
        }

        SpectrumBlock current =
            diagonalize_block(build_block(sector, BasisTruncation{n_max}, params, options.quantum));
        const std::size_t keep = std::min(options.n_levels, current.levels.size());
        std::vector<double> leading(current.levels.begin(),
                                    current.levels.begin() + static_cast<std::ptrdiff_t>(keep));

        bool certified = previous.size() == options.n_levels && keep == options.n_levels;
        for (std::size_t i = 0; certified && i < keep; ++i)
            certified = std::abs(previous[i] - leading[i]) < tol * std::abs(leading[i]);

        history.emplace_back(n_max, leading);
        if (certified) {
            current.levels = std::move(leading);
            current.n_converged = options.n_levels;
            current.converged_digits = options.digits;
            current.history = std::move(history);
            return current;
        }
        previous = std::move(leading);
        n_max += options.n_max_step;
    }
}

std::array<SpectrumBlock, 4> converge_parity_blocks(const ModelParams& params,
                                                    const ConvergenceOptions& options)
{
    const auto sectors = parity_sectors();
    std::array<std::future<SpectrumBlock>, 4> jobs;
    for (std::size_t i = 0; i < sectors.size(); ++i)
        jobs[i] = std::async(std::launch::async,
                             [&, i] { return converge_levels(sectors[i], params, options); });
    std::array<SpectrumBlock, 4> out;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        out[i] = jobs[i].get();
    return out;
}

} // namespace ymh
