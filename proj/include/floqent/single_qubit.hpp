// single_qubit.hpp — quasi-energy of one driven qubit: numeric backends,
// RWA / Bessel approximations, exact saw-tooth and delta-kick closed forms,
// and generalized-parity classification

#pragma once

#include "floqent/system.hpp"

namespace floqent {

struct SingleQubitParams {
    double omega0 = 1.0;   // level splitting
    double omega = 1.0;    // drive frequency
    double F = 0.0;        // drive amplitude
    double F_prime = 0.0;  // second-harmonic amplitude (bichromatic only)
};

/// Map an energy to the single-qubit convention mu in [0, omega/2].
double fold_single(double energy, double omega);

QubitSystem single_qubit_system(const SingleQubitParams& params, PeriodicDrive::Kind kind);

struct MuOptions {
    int margin = 6;            // Fourier truncation margin
    int steps = 2048;          // monodromy steps (saw-tooth)
    std::optional<int> m_max;  // explicit truncation override
};

/// Folded positive quasi-energy from the backend matched to the drive kind:
/// Fourier eigenproblem for monochromatic/bichromatic, monodromy for
/// saw-tooth, exact composition for delta kicks. mu_+ = -mu_- is enforced by
/// symmetrizing the traceless pair.
double mu_numeric(const SingleQubitParams& params, PeriodicDrive::Kind kind, const MuOptions& options = {});

/// Rotating-wave approximation mu = (omega + sqrt((omega-omega0)^2 + F^2)) / 2,
/// folded. Intended for F << omega0 and omega0 near omega.
double mu_rwa(const SingleQubitParams& params);

/// Strong-drive, small-splitting approximation mu = (omega0/2) J_0(2F/omega), folded.
double mu_bessel(const SingleQubitParams& params);

/// Exact saw-tooth quasi-energy
///   mu = (1/T) arccos[ 2 |1F1(-i omega0^2 T/(16F), 1/2, -i F T/4)|^2 - 1 ].
/// F = 0 falls back to the undriven fold; an arccos argument beyond 1 + 1e-9
/// signals a convergence bug and throws.
double mu_sawtooth(const SingleQubitParams& params);

/// Exact delta-kick quasi-energy mu = (1/T) arccos[cos(omega0 T/2) cos(F T)].
double mu_delta_kick(const SingleQubitParams& params);

// ------------------------------------------------------------ parity

struct ParityLabel {
    int value = 0;       // +1 or -1
    double defect = 0.0; // |<S_P> - value|
};

/// sigma_z^{(1)} ... sigma_z^{(N)} on the full register.
Matrix parity_operator(int n_qubits);

/// Generalized-parity expectation of a Fourier stack: op acts on every
/// component, weighted by (-1)^k. Use parity_operator(N) (or its subspace
/// projection) as op.
ParityLabel parity_classify(const FloquetState& state, const Matrix& op);

/// Single-qubit convenience overload (op = sigma_z).
ParityLabel parity_classify(const FloquetState& state);

}  // namespace floqent
