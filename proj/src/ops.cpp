#include "floqent/ops.hpp"

namespace floqent {

namespace {

void check_site(int site, int n_qubits) {
    if (site < 0 || site >= n_qubits)
        throw std::out_of_range("qubit site index out of range");
}

}  // namespace

Matrix embed_1q(const Matrix& op, int site, int n_qubits) {
    check_site(site, n_qubits);
    if (op.rows() != 2 || op.cols() != 2)
        throw std::invalid_argument("embed_1q: operator must be 2x2");
    Matrix out = Matrix::Identity(1, 1);
    for (int n = 0; n < n_qubits; ++n)
        out = kron(out, n == site ? op : Matrix::Identity(2, 2));
    return out;
}

Matrix embed_2q(const Matrix& op_a, int site_a, const Matrix& op_b, int site_b, int n_qubits) {
    check_site(site_a, n_qubits);
    check_site(site_b, n_qubits);
    if (site_a == site_b)
        throw std::invalid_argument("embed_2q: sites must be distinct");
    Matrix out = Matrix::Identity(1, 1);
    for (int n = 0; n < n_qubits; ++n) {
        if (n == site_a)
            out = kron(out, op_a);
        else if (n == site_b)
            out = kron(out, op_b);
        else
            out = kron(out, Matrix::Identity(2, 2));
    }
    return out;
}

Matrix embed_pair(const Matrix& op4, int site_a, int site_b, int n_qubits) {
    check_site(site_a, n_qubits);
    check_site(site_b, n_qubits);
    if (site_a == site_b)
        throw std::invalid_argument("embed_pair: sites must be distinct");
    if (op4.rows() != 4 || op4.cols() != 4)
        throw std::invalid_argument("embed_pair: operator must be 4x4");
    const int dim = 1 << n_qubits;
    Matrix out = Matrix::Zero(dim, dim);
    auto bit = [n_qubits](int state, int site) { return (state >> (n_qubits - 1 - site)) & 1; };
    for (int col = 0; col < dim; ++col) {
        const int ca = bit(col, site_a);
        const int cb = bit(col, site_b);
        for (int ra = 0; ra < 2; ++ra) {
            for (int rb = 0; rb < 2; ++rb) {
                const Complex v = op4(2 * ra + rb, 2 * ca + cb);
                if (v == Complex{0.0, 0.0}) continue;
                int row = col;
                row &= ~(1 << (n_qubits - 1 - site_a));
                row &= ~(1 << (n_qubits - 1 - site_b));
                row |= ra << (n_qubits - 1 - site_a);
                row |= rb << (n_qubits - 1 - site_b);
                out(row, col) += v;
            }
        }
    }
    return out;
}

Matrix cyclic_permutation(int n_qubits) {
    const int dim = 1 << n_qubits;
    Matrix out = Matrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        // shift bit string right by one with wrap: q_{N-1} becomes the leading qubit
        const int low = s & 1;
        const int t = (s >> 1) | (low << (n_qubits - 1));
        out(t, s) = 1.0;
    }
    return out;
}

Matrix swap_qubits(int site_a, int site_b, int n_qubits) {
    check_site(site_a, n_qubits);
    check_site(site_b, n_qubits);
    const int dim = 1 << n_qubits;
    Matrix out = Matrix::Zero(dim, dim);
    const int pa = n_qubits - 1 - site_a;
    const int pb = n_qubits - 1 - site_b;
    for (int s = 0; s < dim; ++s) {
        const int ba = (s >> pa) & 1;
        const int bb = (s >> pb) & 1;
        int t = s & ~(1 << pa) & ~(1 << pb);
        t |= bb << pa;
        t |= ba << pb;
        out(t, s) = 1.0;
    }
    return out;
}

}  // namespace floqent
