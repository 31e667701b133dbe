// system.hpp — N weakly coupled, periodically driven qubits: Hamiltonian
// assembly in the full register or a symmetry-reduced subspace

#pragma once

#include "floqent/drive.hpp"
#include "floqent/floquet.hpp"
#include "floqent/monodromy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace floqent {

enum class CouplingKind { exchange, xx, tilted_dipole, custom };

CouplingKind coupling_kind_from_string(const std::string& name);
std::string coupling_kind_to_string(CouplingKind kind);

/// The 4x4 two-qubit coupling operator for a unit strength:
///   exchange      s+ s- + s- s+
///   xx            sx sx
///   tilted_dipole (sx + sz)(sx + sz) / 2
Matrix coupling_operator(CouplingKind kind);

struct Coupling {
    int a = 0;
    int b = 1;
    CouplingKind kind = CouplingKind::exchange;
    double strength = 0.0;  // C * alpha_ab
    Matrix custom_op;       // 4x4 Hermitian, custom kind only

    Matrix pair_operator() const;
};

struct QubitSystem {
    int n_qubits = 1;
    double omega0 = 1.0;
    std::vector<double> splitting_weights;  // beta_n; empty means all 1
    std::vector<Coupling> couplings;
    PeriodicDrive drive;
    std::vector<double> drive_weights;      // per-qubit drive amplitude scale; empty means all 1

    int dim() const { return 1 << n_qubits; }
    double omega() const { return drive.omega; }
    double splitting(int n) const;
    double drive_weight(int n) const;
    std::vector<double> splittings() const;

    Matrix static_hamiltonian() const;    // splittings + couplings
    Matrix coupling_hamiltonian() const;  // H_qq alone
    Matrix drive_operator() const;        // sum_n drive_weight(n) sigma_x^(n)
    Matrix hamiltonian_at(double t) const;

    /// Total drive amplitude entering the truncation rule:
    /// amplitude_sum * sum_n |drive_weight(n)|.
    double drive_amplitude_total() const;

    bool identical_parameters() const;

    void validate() const;
};

/// All-to-all coupled register with identical parameters (alpha_nm = beta_n = 1).
QubitSystem make_uniform_system(int n_qubits, double omega0, PeriodicDrive drive,
                                CouplingKind kind = CouplingKind::exchange, double strength = 0.0);

/// Fourier components of H(t): the static block at j = 0 and the drive operator
/// scaled by each drive coefficient at j != 0. Rejects delta-kick drives, whose
/// Fourier series does not truncate (use the monodromy backend).
FourierBlocks fourier_components(const QubitSystem& system);

// ----------------------------------------------------------- subspace bases

Vector dicke_state(int n_qubits, int m);

struct CollectiveSpin {
    Matrix jx, jy, jz, j_squared;
};

CollectiveSpin collective_spin_operators(int n_qubits);

struct SubspaceBasis {
    enum class Kind { full, symmetric_dicke, antisymmetric_2q, cyclic_sector };

    Kind kind = Kind::full;
    int n_qubits = 1;
    int sector = 0;      // cyclic_sector: eigenvalue exp(+2 pi i sector / N)
    Matrix vectors;      // 2^N x dim, orthonormal columns

    int dim() const { return int(vectors.cols()); }
    int full_dim() const { return int(vectors.rows()); }

    Vector expand(const Vector& reduced) const { return vectors * reduced; }
    Vector reduce(const Vector& full) const { return vectors.adjoint() * full; }
    Matrix project(const Matrix& full_op) const { return vectors.adjoint() * full_op * vectors; }
};

SubspaceBasis full_basis(int n_qubits);
SubspaceBasis symmetric_dicke_basis(int n_qubits);
SubspaceBasis antisymmetric_2q_basis();
SubspaceBasis cyclic_sector_basis(int n_qubits, int sector);

/// Fourier blocks projected into the subspace. Verifies that every block
/// commutes with the subspace projector (symmetry violation beyond 1e-10
/// throws), so reduced eigenvalues are a subset of the full spectrum.
FourierBlocks build_hamiltonian_blocks(const QubitSystem& system, const SubspaceBasis& subspace);

/// Expand a reduced-basis spectrum back to the full 2^N register.
FloquetSpectrum expand_to_full(const FloquetSpectrum& spectrum, const SubspaceBasis& subspace);

// ------------------------------------------------- non-interacting references

/// Product Fourier stacks  |Phi_s> = prod_n |phi_{s_n}^(n)>  for a sign string s
/// (+1 picks the mu_+ single-qubit state), with quasi-energy sum_n s_n mu^(n)
/// folded. Stacks are convolved in the Fourier index.
FloquetState product_state(const std::vector<const FloquetState*>& factors,
                           const std::vector<double>& quasi_energies, double omega);

/// All 2^N sign-string products for per-qubit single-qubit spectra (each of
/// dimension 2, ordered mu_-, mu_+ ascending). Output order: sign strings by
/// descending quasi-energy sum_n s_n mu^(n) before folding.
std::vector<FloquetState> noninteracting_product_states(const std::vector<FloquetSpectrum>& single_qubit,
                                                        double omega);

/// Symmetrized combinations for identical qubits: state i has N-i plus signs
/// and unfolded quasi-energy (N-2i) mu, i = 0..N.
std::vector<FloquetState> noninteracting_symmetric_states(const FloquetSpectrum& single_qubit, int n_qubits);

// ------------------------------------------------------------- front end

struct SolveOptions {
    std::optional<int> m_max;       // explicit truncation; otherwise the rule below
    int margin = 4;                 // truncation_rule margin
    bool adaptive = false;          // grow the margin until quasi-energies settle
    double adaptive_tol = 1e-9;     // relative to omega
    bool use_parity_symmetry = true;
    bool use_permutation_symmetry = true;
    MonodromyOptions monodromy;
};

/// Symmetries of the system usable for degenerate-group resolution
/// (qubit permutations always; generalized parity when the drive allows it).
std::vector<SymmetryOp> system_symmetries(const QubitSystem& system, const SubspaceBasis& subspace,
                                          const SolveOptions& options);

/// Fourier-backend solve in the given subspace.
FloquetSpectrum solve_fourier(const QubitSystem& system, const SubspaceBasis& subspace,
                              const SolveOptions& options = {});

/// Monodromy-backend solve (midpoint stepping; exact composition for delta kicks).
FloquetSpectrum solve_monodromy(const QubitSystem& system, const SubspaceBasis& subspace,
                                const SolveOptions& options = {});

/// Backend chosen by drive kind: delta kicks go to the exact monodromy
/// composition, everything else to the Fourier eigenproblem.
FloquetSpectrum solve_system(const QubitSystem& system, const SubspaceBasis& subspace,
                             const SolveOptions& options = {});

}  // namespace floqent
