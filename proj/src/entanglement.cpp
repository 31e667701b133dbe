#include "floqent/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace floqent {

namespace {

void check_normalized(const Vector& psi, Eigen::Index dim, const char* who) {
    if (psi.size() != dim) throw std::invalid_argument(std::string(who) + ": wrong state dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": state must be normalized");
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double concurrence(const Vector& psi) {
    check_normalized(psi, 4, "concurrence");
    // <psi*| sy x sy |psi> = -2 (psi_00 psi_11 - psi_01 psi_10); evaluated as a
    // scale-invariant ratio so rounding in the input normalization cancels
    const Complex det = psi(0) * psi(3) - psi(1) * psi(2);
    return clamp_unit(2.0 * std::abs(det) / psi.squaredNorm());
}

double three_tangle(const Vector& psi) {
    check_normalized(psi, 8, "three_tangle");
    auto a = [&](int i, int j, int k) { return psi(4 * i + 2 * j + k); };
    const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                       a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                       a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                       a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                       a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                       a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                       a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    const double n2 = psi.squaredNorm();
    const double hyperdet = 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3) / (n2 * n2);
    return clamp_unit(hyperdet * hyperdet);
}

double measure(MeasureKind kind, const Vector& psi) {
    switch (kind) {
        case MeasureKind::concurrence: return concurrence(psi);
        case MeasureKind::three_tangle: return three_tangle(psi);
    }
    throw std::invalid_argument("measure: unknown kind");
}

MeasureKind measure_for_qubits(int n_qubits) {
    if (n_qubits == 2) return MeasureKind::concurrence;
    if (n_qubits == 3) return MeasureKind::three_tangle;
    throw std::invalid_argument("measure_for_qubits: measures are defined for 2 or 3 qubits");
}

TimeAverage time_averaged_entanglement(const FloquetSpectrum& spectrum, int i, MeasureKind kind, int n_samples) {
    if (n_samples < 8) throw std::invalid_argument("time_averaged_entanglement: need at least 8 samples");
    const Eigen::Index expected = kind == MeasureKind::concurrence ? 4 : 8;
    if (spectrum.dim != expected)
        throw std::invalid_argument("time_averaged_entanglement: measure does not match the qubit count");
    if (i < 0 || i >= int(spectrum.states.size()))
        throw std::out_of_range("time_averaged_entanglement: state index out of range");

    const double period = kTwoPi / spectrum.omega;
    TimeAverage out;
    out.min = 1.0;
    out.max = 0.0;
    double coarse = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const double t = s * period / n_samples;
        Vector psi = floquet_state_at(spectrum, i, t);
        const double norm = psi.norm();
        if (norm <= 0.0) throw std::runtime_error("time_averaged_entanglement: state reconstruction vanished");
        psi /= norm;
        const double v = measure(kind, psi);
        out.mean += v;
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
        if (s % 2 == 0) coarse += v;
    }
    out.mean /= n_samples;
    coarse /= (n_samples / 2);
    out.error = std::abs(out.mean - coarse);

    for (int j = 0; j < int(spectrum.states.size()); ++j) {
        if (j == i) continue;
        if (zone_distance(spectrum.states[size_t(j)].quasi_energy, spectrum.states[size_t(i)].quasi_energy,
                          spectrum.omega) <= 1e-10 * spectrum.omega)
            out.degenerate_flag = true;
    }
    return out;
}

}  // namespace floqent
