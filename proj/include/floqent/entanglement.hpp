// entanglement.hpp — pure-state entanglement measures and period averages

#pragma once

#include "floqent/floquet.hpp"

namespace floqent {

enum class MeasureKind { concurrence, three_tangle };

/// Two-qubit concurrence |<psi*| sigma_y x sigma_y |psi>| = 2 |psi_00 psi_11 - psi_01 psi_10|.
/// Requires a normalized 4-vector (1e-9); output clamped to [0, 1].
double concurrence(const Vector& psi);

/// Three-qubit GHZ-class measure, normalized so |GHZ> gives 1 and W states give 0.
/// Evaluated as the squared Cayley hyperdeterminant 16 |Det(psi)|^2 of the
/// normalized 8-vector; invariant under local unitaries.
double three_tangle(const Vector& psi);

double measure(MeasureKind kind, const Vector& psi);

MeasureKind measure_for_qubits(int n_qubits);

struct TimeAverage {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double error = 0.0;          // Richardson estimate from halving the sample grid
    bool degenerate_flag = false;  // quasi-energy within 1e-10 omega of a neighbor
};

/// Uniform-grid average of the measure over one period (periodic trapezoid).
/// State samples are renormalized before evaluation.
TimeAverage time_averaged_entanglement(const FloquetSpectrum& spectrum, int i, MeasureKind kind,
                                       int n_samples = 128);

}  // namespace floqent
