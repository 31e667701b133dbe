// ops.hpp — Pauli matrices, embeddings into N-qubit registers, small helpers

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace floqent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Basis convention: |up> = (1,0), |down> = (0,1); sigma_z |up> = +|up>.
inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline Matrix pauli_plus() {  // |up><down|
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

inline Matrix pauli_minus() {  // |down><up|
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// Embed a single-qubit operator on qubit `site` (0-based) of an N-qubit register.
Matrix embed_1q(const Matrix& op, int site, int n_qubits);

// Embed a two-qubit operator given as op_a on `site_a` and op_b on `site_b`.
Matrix embed_2q(const Matrix& op_a, int site_a, const Matrix& op_b, int site_b, int n_qubits);

// Embed an arbitrary 4x4 operator acting on the ordered pair (site_a, site_b).
Matrix embed_pair(const Matrix& op4, int site_a, int site_b, int n_qubits);

// Operator permuting qubits cyclically: |q_0 q_1 ... q_{N-1}> -> |q_{N-1} q_0 ... q_{N-2}>.
Matrix cyclic_permutation(int n_qubits);

// Swap of two qubits in an N-qubit register.
Matrix swap_qubits(int site_a, int site_b, int n_qubits);

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    const double scale = a.cwiseAbs().maxCoeff();
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(scale, 1.0);
}

}  // namespace floqent
