// Test-only oracle: brute-force one-period propagator by fourth-order
// Runge-Kutta integration of i dU/dt = H(t) U with a fine fixed step.
// Deliberately independent of the library's midpoint-exponential stepper.

#pragma once

#include "floqent/ops.hpp"

#include <functional>

namespace oracle {

inline floqent::Matrix rk4_propagator(const std::function<floqent::Matrix(double)>& h_of_t, double t_final,
                                      int steps = 200000) {
    using floqent::Matrix;
    const floqent::Complex mi(0.0, -1.0);
    const double dt = t_final / steps;
    const Eigen::Index d = h_of_t(0.0).rows();
    Matrix u = Matrix::Identity(d, d);
    for (int i = 0; i < steps; ++i) {
        const double t = i * dt;
        const Matrix k1 = mi * (h_of_t(t) * u);
        const Matrix k2 = mi * (h_of_t(t + 0.5 * dt) * (u + 0.5 * dt * k1));
        const Matrix k3 = mi * (h_of_t(t + 0.5 * dt) * (u + 0.5 * dt * k2));
        const Matrix k4 = mi * (h_of_t(t + dt) * (u + dt * k3));
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

// Folded quasi-energies from a one-period propagator, sorted ascending.
inline std::vector<double> quasi_energies(const floqent::Matrix& u_period, double omega) {
    const double period = 2.0 * M_PI / omega;
    Eigen::ComplexEigenSolver<floqent::Matrix> es(u_period);
    std::vector<double> mus;
    for (Eigen::Index i = 0; i < u_period.rows(); ++i) {
        double mu = -std::arg(es.eigenvalues()(i)) / period;
        mu -= omega * std::floor(mu / omega + 0.5);
        if (mu >= omega / 2.0) mu -= omega;
        mus.push_back(mu);
    }
    std::sort(mus.begin(), mus.end());
    return mus;
}

}  // namespace oracle
