#include "floqent/single_qubit.hpp"

#include "floqent/kummer.hpp"

#include <cmath>

namespace floqent {

double fold_single(double energy, double omega) {
    return std::abs(fold_to_zone(energy, omega));
}

QubitSystem single_qubit_system(const SingleQubitParams& params, PeriodicDrive::Kind kind) {
    if (!(params.omega > 0.0)) throw std::invalid_argument("single qubit: omega must be positive");
    if (params.F < 0.0 || params.F_prime < 0.0)
        throw std::invalid_argument("single qubit: amplitudes must be non-negative");
    PeriodicDrive drive;
    switch (kind) {
        case PeriodicDrive::Kind::monochromatic:
            drive = PeriodicDrive::monochromatic(params.F, params.omega);
            break;
        case PeriodicDrive::Kind::bichromatic:
            drive = PeriodicDrive::bichromatic(params.F, params.F_prime, params.omega);
            break;
        case PeriodicDrive::Kind::sawtooth:
            drive = PeriodicDrive::sawtooth(params.F, params.omega);
            break;
        case PeriodicDrive::Kind::delta_kick:
            drive = PeriodicDrive::delta_kick(params.F, params.omega);
            break;
        case PeriodicDrive::Kind::custom:
            throw std::invalid_argument("single qubit: custom drives need an explicit QubitSystem");
    }
    return make_uniform_system(1, params.omega0, std::move(drive));
}

double mu_numeric(const SingleQubitParams& params, PeriodicDrive::Kind kind, const MuOptions& options) {
    const QubitSystem system = single_qubit_system(params, kind);
    SolveOptions solve;
    solve.margin = options.margin;
    solve.m_max = options.m_max;
    solve.monodromy.steps = options.steps;

    FloquetSpectrum spec;
    switch (kind) {
        case PeriodicDrive::Kind::monochromatic:
        case PeriodicDrive::Kind::bichromatic:
            spec = solve_fourier(system, full_basis(1), solve);
            break;
        case PeriodicDrive::Kind::sawtooth:
        case PeriodicDrive::Kind::delta_kick:
        case PeriodicDrive::Kind::custom:
            spec = solve_monodromy(system, full_basis(1), solve);
            break;
    }
    // traceless pair: symmetrize |mu_-| and |mu_+|
    const double mu = 0.5 * (std::abs(spec.states[0].quasi_energy) + std::abs(spec.states[1].quasi_energy));
    return std::min(mu, params.omega / 2.0);
}

double mu_rwa(const SingleQubitParams& params) {
    const double raw = 0.5 * (params.omega + std::hypot(params.omega - params.omega0, params.F));
    return fold_single(raw, params.omega);
}

double mu_bessel(const SingleQubitParams& params) {
    const double raw = 0.5 * params.omega0 * std::cyl_bessel_j(0.0, 2.0 * params.F / params.omega);
    return fold_single(raw, params.omega);
}

namespace {

double arccos_guarded(double x) {
    if (std::abs(x) > 1.0 + 1e-9)
        throw std::runtime_error("arccos argument " + std::to_string(x) +
                                 " outside [-1, 1]; closed-form evaluation lost precision");
    return std::acos(std::clamp(x, -1.0, 1.0));
}

}  // namespace

double mu_sawtooth(const SingleQubitParams& params) {
    const double period = kTwoPi / params.omega;
    if (params.F == 0.0) return fold_single(0.5 * params.omega0, params.omega);
    const Complex a = -kI * params.omega0 * params.omega0 * period / (16.0 * params.F);
    const Complex z = -kI * params.F * period / 4.0;
    const double mod = std::abs(kummer_1f1(a, 0.5, z));
    return arccos_guarded(2.0 * mod * mod - 1.0) / period;
}

double mu_delta_kick(const SingleQubitParams& params) {
    const double period = kTwoPi / params.omega;
    return arccos_guarded(std::cos(0.5 * params.omega0 * period) * std::cos(params.F * period)) / period;
}

Matrix parity_operator(int n_qubits) {
    Matrix par = Matrix::Identity(1 << n_qubits, 1 << n_qubits);
    for (int n = 0; n < n_qubits; ++n) par = par * embed_1q(pauli_z(), n, n_qubits);
    return par;
}

ParityLabel parity_classify(const FloquetState& state, const Matrix& op) {
    const FloquetState transformed = apply_blockwise(state, op, true);
    const Complex expectation = stack_inner(state, transformed);
    ParityLabel label;
    label.value = expectation.real() >= 0.0 ? 1 : -1;
    label.defect = std::abs(expectation - Complex(double(label.value), 0.0));
    return label;
}

ParityLabel parity_classify(const FloquetState& state) {
    if (state.dim() != 2)
        throw std::invalid_argument("parity_classify: default overload expects a single-qubit stack");
    return parity_classify(state, pauli_z());
}

}  // namespace floqent
