#pragma once

// Quantum Hamiltonian in the two-oscillator number basis |n1 n2>:
//
//   H = omega (a1+ a1 + a2+ a2 + 1) + (g^2/2) V,
//   V = (a1 + a1+)^2 (a2 + a2+)^2 / (4 omega^2),
//
// truncated to 0 <= n1, n2 <= n_max and split by the parities of n1 and n2.

#include "ymh/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ymh {

enum class Parity { Even = 0, Odd = 1 };

/// Optional further split of the ee and oo blocks under n1 <-> n2.
enum class Exchange { None = 0, Symmetric = 1, Antisymmetric = 2 };

struct Sector {
    Parity parity1 = Parity::Even;
    Parity parity2 = Parity::Even;
    Exchange exchange = Exchange::None;

    /// "ee", "oo", "eo", "oe", with a "+"/"-" suffix for exchange sectors.
    std::string label() const;

    bool operator==(const Sector&) const = default;
};

/// The four parity blocks in output order: ee, oo, eo, oe.
std::array<Sector, 4> parity_sectors();

/// Parses "ee", "oo", "eo", "oe", "ee+", "ee-", "oo+", "oo-".
Sector parse_sector(const std::string& label);

struct BasisTruncation {
    int n_max = 1;
};

struct QuantumOptions {
    /// Multiplies the quartic term; 0 leaves the bare oscillator (test hook).
    double coupling_scale = 1.0;
    /// Largest block dimension build_block will assemble.
    std::size_t max_dimension = 4096;
};

double h0_element(int n1p, int n2p, int n1, int n2, const ModelParams& params);

/// <n1' n2'| V |n1 n2> exactly as the unscaled quartic operator V; the g^2/2
/// prefactor is applied during block assembly.
double v_element(int n1p, int n2p, int n1, int n2, const ModelParams& params);

/// Basis states (n1, n2) of a sector in lexicographic order. For exchange
/// sectors each entry (n1 <= n2) stands for the (anti)symmetrized pair.
std::vector<std::pair<int, int>> sector_basis(const Sector& sector, const BasisTruncation& trunc);

struct ParityBlock {
    Sector sector;
    BasisTruncation truncation;
    Eigen::MatrixXd matrix;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Assembles the dense symmetric block. Each element is computed once and
/// mirrored. Throws DimensionOverflow past options.max_dimension. Requires
/// v > 0 (the number basis needs omega > 0).
ParityBlock build_block(const Sector& sector, const BasisTruncation& trunc,
                        const ModelParams& params, const QuantumOptions& options = {});

struct SpectrumBlock {
    Sector sector;
    std::vector<double> levels;   // ascending
    std::size_t dimension = 0;    // block dimension the levels came from
    int n_max = 0;
    std::size_t n_converged = 0;
    int converged_digits = 0;
    /// Leading levels at each truncation tried, oldest first (converge_levels only).
    std::vector<std::pair<int, std::vector<double>>> history;
};

/// All eigenvalues of the block, ascending.
SpectrumBlock diagonalize_block(const ParityBlock& block);

struct ConvergenceOptions {
    std::size_t n_levels = 100;
    int digits = 8;
    /// First truncation tried; 0 picks the smallest n_max whose block holds n_levels states.
    int n_max_start = 0;
    int n_max_step = 4;
    QuantumOptions quantum;
};

/// Enlarges n_max until the first n_levels eigenvalues of two successive
/// truncations agree to `digits` relative digits. Returns the larger
/// truncation's spectrum, trimmed to n_levels, with the certificate filled in.
/// Throws NoConvergence once the block would exceed quantum.max_dimension.
SpectrumBlock converge_levels(const Sector& sector, const ModelParams& params,
                              const ConvergenceOptions& options = {});

/// converge_levels over the four parity blocks, run concurrently.
std::array<SpectrumBlock, 4> converge_parity_blocks(const ModelParams& params,
                                                    const ConvergenceOptions& options = {});

} // namespace ymh
