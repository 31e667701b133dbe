// monodromy.hpp — one-period propagator backend: midpoint-exponential stepping
// with Richardson-extrapolated eigenphases, and exact composition for kicked drives

#pragma once

#include "floqent/floquet.hpp"

#include <functional>

namespace floqent {

struct MonodromyOptions {
    int steps = 2048;          // midpoint steps per period (doubled internally for the Richardson pass)
    int state_samples = 0;     // store U(0, t_j) at this many uniform times for state reconstruction
    double tolerance = 1e-6;   // step-doubling drift alarm, relative to omega
    std::vector<Matrix> symmetry_ops;
};

/// U(0,T) by midpoint-exponentiated piecewise-constant propagation.
Matrix monodromy_propagator(const std::function<Matrix(double)>& h_of_t, double omega, int steps);

/// Quasi-energies are Richardson-extrapolated eigenphases of U(0,T) divided by
/// T, folded to the central zone; states are the t = 0 eigenvectors. Throws
/// when doubling the step count shifts any quasi-energy by more than
/// tolerance * omega.
FloquetSpectrum monodromy_solve(const std::function<Matrix(double)>& h_of_t, double omega,
                                const MonodromyOptions& options = {});

/// Exact kicked-drive composition U(0,T) = e^{-i H_static T} e^{-i K}, with the
/// kick generator K applied at the start of each period.
FloquetSpectrum monodromy_kicked(const Matrix& h_static, const Matrix& kick_generator, double omega,
                                 const MonodromyOptions& options = {});

/// Spectrum from an explicitly supplied one-period propagator.
FloquetSpectrum spectrum_from_propagator(const Matrix& u_period, double omega,
                                         const MonodromyOptions& options = {});

}  // namespace floqent
