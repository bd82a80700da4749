#pragma once

// Test-only reference computations. Nothing here calls into the library's
// implementation of the quantity it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

constexpr double pi = 3.14159265358979323846;

// Dense row-major square matrix, enough for the small reference problems.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Cyclic Jacobi rotations; returns ascending eigenvalues of a symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(Matrix m)
{
    const std::size_t n = m.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += m(i, j) * m(i, j);
        if (off < 1e-30)
            break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m(p, q)) < 1e-300)
                    continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0)
                                 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = m(i, i);
    std::sort(out.begin(), out.end());
    return out;
}

// Full unsplit truncated Hamiltonian on 0 <= n1, n2 <= n_max, basis index
// n1 * (n_max + 1) + n2, assembled from operator products: (a + a+)^2 is
// squared in an enlarged one-mode space and then cut back, so the truncation
// matches projecting the exact operator.
inline Matrix full_hamiltonian(int n_max, double g, double v, double coupling_scale = 1.0)
{
    const std::size_t big = static_cast<std::size_t>(n_max) + 3;
    Matrix x(big);
    for (std::size_t k = 0; k + 1 < big; ++k) {
        x(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
        x(k + 1, k) = std::sqrt(static_cast<double>(k + 1));
    }
    Matrix x2(big);
    for (std::size_t i = 0; i < big; ++i)
        for (std::size_t j = 0; j < big; ++j)
            for (std::size_t k = 0; k < big; ++k)
                x2(i, j) += x(i, k) * x(k, j);

    const std::size_t m = static_cast<std::size_t>(n_max) + 1;
    const double omega = std::sqrt(2.0 * g * g * v * v);
    const double quartic = coupling_scale * 0.5 * g * g / (4.0 * omega * omega);
    Matrix h(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t d = 0; d < m; ++d) {
                    double e = quartic * x2(a, c) * x2(b, d);
                    if (a == c && b == d)
                        e += omega * static_cast<double>(a + b + 1);
                    h(a * m + b, c * m + d) = e;
                }
    return h;
}

// Restriction of the full Hamiltonian to n1 % 2 == p1, n2 % 2 == p2.
inline Matrix restrict_parity(const Matrix& full, int n_max, int p1, int p2)
{
    const std::size_t m = static_cast<std::size_t>(n_max) + 1;
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (static_cast<int>(a % 2) == p1 && static_cast<int>(b % 2) == p2)
                keep.push_back(a * m + b);
    Matrix out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            out(i, j) = full(keep[i], keep[j]);
    return out;
}

// Brody CDF is 1 - exp(-alpha s^(q+1)); invert it.
inline double brody_alpha_reference(double q)
{
    return std::pow(std::tgamma((q + 2.0) / (q + 1.0)), q + 1.0);
}

inline std::vector<double> sample_brody(double q, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double alpha = brody_alpha_reference(q);
    std::vector<double> out(n);
    for (auto& s : out)
        s = std::pow(-std::log1p(-u01(rng)) / alpha, 1.0 / (q + 1.0));
    return out;
}

// Composite Simpson on [0, upper] after s = t^2 (removes the s^q cusp at 0).
template <class F>
double integrate_half_line(F f, double upper = 40.0, int panels = 200000)
{
    const double t_max = std::sqrt(upper);
    const double dt = t_max / panels;
    auto g = [&](double t) { return f(t * t) * 2.0 * t; };
    double sum = g(0.0) + g(t_max);
    for (int i = 1; i < panels; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * g(i * dt);
    return sum * dt / 3.0;
}

struct CurveFit {
    double rms = 0.0;  // in units of the per-axis extent
    std::size_t points = 0;
};

// Fits r(theta) about the centroid with `harmonics` Fourier modes after
// scaling each axis by its range; reports the RMS radial residual.
inline CurveFit closed_curve_scatter(const std::vector<std::pair<double, double>>& pts,
                                     int harmonics = 8)
{
    const std::size_t n = pts.size();
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, xc = 0.0, yc = 0.0;
    for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
        xc += x;
        yc += y;
    }
    xc /= static_cast<double>(n);
    yc /= static_cast<double>(n);
    const std::size_t cols = 2 * static_cast<std::size_t>(harmonics) + 1;

    // Normal equations, solved by Gaussian elimination with partial pivoting.
    std::vector<double> ata(cols * cols, 0.0), atb(cols, 0.0), row(cols);
    std::vector<double> r(n);
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (pts[i].first - xc) / (xmax - xmin);
        const double y = (pts[i].second - yc) / (ymax - ymin);
        const double th = std::atan2(y, x);
        r[i] = std::hypot(x, y);
        row[0] = 1.0;
        for (int k = 1; k <= harmonics; ++k) {
            row[2 * k - 1] = std::cos(k * th);
            row[2 * k] = std::sin(k * th);
        }
        rows[i] = row;
        for (std::size_t a = 0; a < cols; ++a) {
            atb[a] += row[a] * r[i];
            for (std::size_t b = 0; b < cols; ++b)
                ata[a * cols + b] += row[a] * row[b];
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = c;
        for (std::size_t k = c + 1; k < cols; ++k)
            if (std::abs(ata[k * cols + c]) > std::abs(ata[piv * cols + c]))
                piv = k;
        for (std::size_t k = 0; k < cols; ++k)
            std::swap(ata[c * cols + k], ata[piv * cols + k]);
        std::swap(atb[c], atb[piv]);
        for (std::size_t k = c + 1; k < cols; ++k) {
            const double f = ata[k * cols + c] / ata[c * cols + c];
            for (std::size_t j = c; j < cols; ++j)
                ata[k * cols + j] -= f * ata[c * cols + j];
            atb[k] -= f * atb[c];
        }
    }
    std::vector<double> coef(cols);
    for (std::size_t c = cols; c-- > 0;) {
        double s = atb[c];
        for (std::size_t j = c + 1; j < cols; ++j)
            s -= ata[c * cols + j] * coef[j];
        coef[c] = s / ata[c * cols + c];
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t a = 0; a < cols; ++a)
            fit += rows[i][a] * coef[a];
        ss += (fit - r[i]) * (fit - r[i]);
    }
    return {std::sqrt(ss / static_cast<double>(n)), n};
}

} // namespace oracle
