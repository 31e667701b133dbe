// kummer.hpp — Kummer's confluent hypergeometric function 1F1 and the
// Landau-Zener propagator built from it

#pragma once

#include "floqent/ops.hpp"

namespace floqent {

/// 1F1(a, b, z) by Taylor series with term-ratio recurrence. Converged when
/// the running term stays below 1e-16 of the partial sum for three consecutive
/// terms. Throws std::invalid_argument when b is a non-positive integer and
/// std::runtime_error when the 10000-term budget is exhausted.
Complex kummer_1f1(Complex a, Complex b, Complex z);

/// Entries of the exact evolution operator U(0,t) = [[a, -b], [b*, a*]] for
/// the linear-sweep Hamiltonian h(t) = (slope*t/2) sigma_z + coupling sigma_x:
///   a(t) = e^{-i slope t^2/4} 1F1(i coupling^2/(2 slope), 1/2, i slope t^2/2)
///   b(t) = i coupling t e^{-i slope t^2/4} 1F1(1/2 + i coupling^2/(2 slope), 3/2, i slope t^2/2)
/// Unitarity |a|^2 + |b|^2 = 1 holds identically.
struct LandauZenerEntries {
    Complex a;
    Complex b;
};

LandauZenerEntries landau_zener_entries(double coupling, double slope, double t);

Matrix landau_zener_propagator(double coupling, double slope, double t);

}  // namespace floqent
