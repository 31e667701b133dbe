// floquet.hpp — extended-space Floquet Hamiltonian assembly, quasi-energy
// zone folding, eigensolution, and time-domain state reconstruction

#pragma once

#include "floqent/ops.hpp"

#include <map>
#include <optional>
#include <vector>

namespace floqent {

/// Fold an energy into the centered Floquet zone [-omega/2, omega/2).
double fold_to_zone(double energy, double omega);

/// Circular distance between two quasi-energies (they live modulo omega).
double zone_distance(double a, double b, double omega);

/// Rule-of-thumb Fourier truncation: M = ceil(2 F_total / omega) + margin.
int truncation_rule(double f_total, double omega, int margin = 4);

/// Fourier components H~_j of a time-periodic Hamiltonian, H(t) = sum_j H~_j e^{-i j w t}.
/// Zero blocks are omitted; conjugate consistency H~_{-j} = H~_j^dagger is enforced.
struct FourierBlocks {
    int dim = 0;
    std::map<int, Matrix> blocks;

    const Matrix& at(int j) const;
    bool has(int j) const { return blocks.count(j) != 0; }
    void insert(int j, Matrix block);
    void validate() const;
    int max_index() const;
};

/// The assembled extended-space matrix with Fourier index k in [-M, M]:
/// diagonal blocks H~_0 + k w, off-diagonal blocks H~_{l-k} at (k, l).
struct FloquetMatrix {
    int block_dim = 0;
    int m_max = 0;
    double omega = 0.0;
    std::map<int, Matrix> blocks;
    Matrix assembled;

    int n_blocks() const { return 2 * m_max + 1; }
    Eigen::Index size() const { return assembled.rows(); }
};

FloquetMatrix build_floquet_matrix(const FourierBlocks& blocks, int m_max, double omega);

enum class Backend { fourier, monodromy };

/// One Floquet state as a stack of Fourier components |Phi~(k)>, k in [-M, M],
/// stored column-wise (column k + M). Monodromy-backend states carry a single
/// k = 0 column holding the t = 0 eigenvector.
struct FloquetState {
    double quasi_energy = 0.0;  // folded to [-omega/2, omega/2)
    double residual = 0.0;      // ||H_F v - eps v|| for the reported stack
    int m_max = 0;
    Matrix components;          // dim x (2 m_max + 1)

    int dim() const { return int(components.rows()); }
    Vector component(int k) const;
    Vector at_time(double t, double omega) const;  // sum_k |Phi~(k)> e^{-i k w t}
    Vector at_zero() const;                        // sum_k |Phi~(k)>
    double norm() const { return components.norm(); }
    /// Fourier weight centroid sum_k k ||Phi~(k)||^2 (stack assumed normalized).
    double fourier_centroid() const;
};

/// Extended-space inner product  sum_k <Phi~_a(k)|Phi~_b(k)>.
Complex stack_inner(const FloquetState& a, const FloquetState& b);

/// Rest-class homologue: quasi-energy shifted by n*omega, components reindexed.
/// Components pushed past the stored window are dropped.
FloquetState shift_state(const FloquetState& state, int n, double omega);

/// Apply a (2M+1)-block-diagonal single-period operator: op acts on every
/// Fourier component; optionally weighted by (-1)^k (generalized parity).
FloquetState apply_blockwise(const FloquetState& state, const Matrix& op, bool alternate_sign = false);

struct FloquetSpectrum {
    Backend backend = Backend::fourier;
    double omega = 0.0;
    int dim = 0;
    int m_max = 0;
    std::vector<FloquetState> states;  // exactly dim entries, quasi-energy ascending
    double unitarity_defect = 0.0;     // monodromy only
    double convergence = 0.0;          // monodromy only: quasi-energy drift under step doubling

    // monodromy only: sampled one-period propagators for time-domain evaluation
    std::vector<double> sample_times;
    std::vector<Matrix> sample_props;

    std::vector<double> quasi_energies() const;
    double max_residual() const;
};

/// A symmetry of the extended-space problem: a unitary on the working Hilbert
/// space, optionally dressed with the (-1)^k Fourier sign that implements a
/// half-period time shift (generalized parity).
struct SymmetryOp {
    Matrix op;
    bool alternate_sign = false;
};

struct DiagonalizeOptions {
    /// Symmetries commuting with the extended-space Hamiltonian; used to split
    /// degenerate quasi-energy groups into symmetry sectors.
    std::vector<SymmetryOp> symmetry_ops;
    double degeneracy_tol = 1e-10;  // relative to omega
    double edge_tol = 1e-10;        // zone-boundary tie window, relative to omega
};

/// Full Hermitian eigendecomposition of the assembled matrix; selects exactly
/// block_dim representatives in [-omega/2, omega/2) (boundary ties broken by
/// the Fourier-centroid rule), resolves degenerate groups by symmetry sectors
/// or stable t = 0 orthonormalization, and fixes the global phase gauge so the
/// largest t = 0 amplitude is real positive.
FloquetSpectrum diagonalize_floquet(const FloquetMatrix& matrix, const DiagonalizeOptions& options = {});

/// |Phi_i(t)> with t reduced modulo the period. Monodromy-backend spectra
/// evaluate through their sampled propagator table, snapping to the nearest
/// stored time; request matching state_samples when solving.
Vector floquet_state_at(const FloquetSpectrum& spectrum, int i, double t);

/// ||H_F v - eps v|| of a stack against the assembled matrix, with eps
/// defaulting to the state's stored quasi-energy. Accepts unfolded values,
/// e.g. for rest-class homologues.
double eigen_residual(const FloquetMatrix& matrix, const FloquetState& state,
                      std::optional<double> quasi_energy = {});

/// Quasi-energy sum rule: sum_i eps_i = trace of the time-averaged Hamiltonian
/// (mod omega). Returns the folded defect.
double sum_rule_defect(const FloquetSpectrum& spectrum, const Matrix& static_block);

/// Greedy maximal-overlap assignment: slot r of the result holds the index of
/// the state matching refs[r]. Used to track state identity across parameter
/// scans and between backends.
std::vector<int> assign_by_overlap(const std::vector<FloquetState>& refs, const std::vector<FloquetState>& states);

/// Distance between two equal-size quasi-energy multisets on the circle of
/// circumference omega: minimum over cyclic pairings of the largest member
/// distance.
double circular_set_distance(std::vector<double> a, std::vector<double> b, double omega);

}  // namespace floqent
