// resonance.hpp — entanglement-resonance prediction from single-qubit
// quasi-energies, first-order coupling elements, parity selection rules,
// and avoided-crossing scans

#pragma once

#include "floqent/entanglement.hpp"
#include "floqent/system.hpp"

#include <functional>

namespace floqent {

struct DegeneracyDeviation {
    int n = 0;              // nearest photon index
    double deviation = 0.0; // min_n |denom mu / omega - n|, dimensionless
};

/// Distance of denom*mu/omega from the nearest integer; denom = 2(i-j) for the
/// targeted level pair (4 for the two-qubit case).
DegeneracyDeviation degeneracy_deviation(double mu, double omega, int denom);

/// First-order coupling element between two Fourier stacks,
///   c_ij = sum_{k,l} <Phi~_i(k)| Hqq~_{l-k} |Phi~_j(l)>,
/// equal to the period-averaged time-domain integral. A static coupling is a
/// FourierBlocks with only the j = 0 block.
Complex coupling_matrix_element(const FloquetState& bra, const FloquetState& ket, const FourierBlocks& hqq);

/// Static-operator convenience overload.
Complex coupling_matrix_element(const FloquetState& bra, const FloquetState& ket, const Matrix& hqq_static);

/// Levels connect across n zones only when the zone-shifted parities match:
/// parity_i (-1)^n == parity_j. Applies only when drive and coupling both
/// commute with the generalized parity.
bool parity_selection(int parity_i, int parity_j, int n);

/// Candidate resonance corridors: true where the unperturbed level gap
/// |eps_i - eps_j - n omega| = deviation * omega is below 2C.
std::vector<bool> corridor_mask(const std::vector<double>& mu_grid, double omega, int denom, double tolerance);

// ------------------------------------------------------------ crossing scans

struct ScanPoint {
    double x = 0.0;
    std::vector<double> quasi_energies;  // tracked order
    std::vector<double> entanglement;    // tracked order
    double pair_gap = 0.0;               // circular distance of the tracked pair
};

struct CrossingScanOptions {
    std::optional<std::pair<int, int>> pair;  // tracked states, by index at the first scan point
    MeasureKind measure = MeasureKind::concurrence;
    int n_samples = 128;
    SolveOptions solve;
    bool use_symmetric_subspace = true;
    bool refine = true;          // golden-section refinement of the gap minimum
    double refine_rel_tol = 1e-6;
};

struct CrossingScanResult {
    std::vector<ScanPoint> points;
    int pair_a = 0, pair_b = 1;
    double x_min_gap = 0.0;
    double min_gap = 0.0;
    double x_peak = 0.0;             // location of the tracked-pair entanglement peak
    double peak_entanglement = 0.0;  // max over the tracked pair and scan points
    Complex c_ij{0.0, 0.0};          // first-order element between the unperturbed pair at the center
    double balance[2] = {0.0, 0.0};  // |<unperturbed|hybrid>|^2 weights at the center
};

/// 1-D scan across a predicted corridor: per-point spectrum and period-averaged
/// entanglement with overlap-tracked state identity, minimal-gap location
/// (golden-section refined), the first-order matrix element of the pair, and
/// the hybridization balance at the center. Throws when no gap minimum lies
/// inside the scan range.
CrossingScanResult crossing_scan(const std::function<QubitSystem(double)>& system_at, double x_lo, double x_hi,
                                 int n_points, const CrossingScanOptions& options = {});

}  // namespace floqent
