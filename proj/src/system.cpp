#include "floqent/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace floqent {

CouplingKind coupling_kind_from_string(const std::string& name) {
    if (name == "exchange") return CouplingKind::exchange;
    if (name == "xx") return CouplingKind::xx;
    if (name == "tilted_dipole") return CouplingKind::tilted_dipole;
    if (name == "custom") return CouplingKind::custom;
    throw std::invalid_argument("unknown coupling kind: " + name);
}

std::string coupling_kind_to_string(CouplingKind kind) {
    switch (kind) {
        case CouplingKind::exchange: return "exchange";
        case CouplingKind::xx: return "xx";
        case CouplingKind::tilted_dipole: return "tilted_dipole";
        case CouplingKind::custom: return "custom";
    }
    return "?";
}

Matrix coupling_operator(CouplingKind kind) {
    switch (kind) {
        case CouplingKind::exchange:
            return kron(pauli_plus(), pauli_minus()) + kron(pauli_minus(), pauli_plus());
        case CouplingKind::xx:
            return kron(pauli_x(), pauli_x());
        case CouplingKind::tilted_dipole: {
            const Matrix tilted = pauli_x() + pauli_z();
            return 0.5 * kron(tilted, tilted);
        }
        case CouplingKind::custom:
            throw std::invalid_argument("coupling_operator: custom couplings carry their own operator");
    }
    throw std::invalid_argument("coupling_operator: unknown kind");
}

Matrix Coupling::pair_operator() const {
    if (kind == CouplingKind::custom) {
        if (custom_op.rows() != 4 || custom_op.cols() != 4)
            throw std::invalid_argument("Coupling: custom operator must be 4x4");
        if (!is_hermitian(custom_op))
            throw std::invalid_argument("Coupling: custom operator must be Hermitian");
        return custom_op;
    }
    return coupling_operator(kind);
}

double QubitSystem::splitting(int n) const {
    const double beta = splitting_weights.empty() ? 1.0 : splitting_weights.at(size_t(n));
    return beta * omega0;
}

double QubitSystem::drive_weight(int n) const {
    return drive_weights.empty() ? 1.0 : drive_weights.at(size_t(n));
}

std::vector<double> QubitSystem::splittings() const {
    std::vector<double> out;
    for (int n = 0; n < n_qubits; ++n) out.push_back(splitting(n));
    return out;
}

Matrix QubitSystem::static_hamiltonian() const {
    Matrix h = Matrix::Zero(dim(), dim());
    for (int n = 0; n < n_qubits; ++n)
        h += 0.5 * splitting(n) * embed_1q(pauli_z(), n, n_qubits);
    h += coupling_hamiltonian();
    return h;
}

Matrix QubitSystem::coupling_hamiltonian() const {
    Matrix h = Matrix::Zero(dim(), dim());
    for (const auto& c : couplings)
        h += c.strength * embed_pair(c.pair_operator(), c.a, c.b, n_qubits);
    return h;
}

Matrix QubitSystem::drive_operator() const {
    Matrix op = Matrix::Zero(dim(), dim());
    for (int n = 0; n < n_qubits; ++n)
        op += drive_weight(n) * embed_1q(pauli_x(), n, n_qubits);
    return op;
}

Matrix QubitSystem::hamiltonian_at(double t) const {
    return static_hamiltonian() + drive.value(t) * drive_operator();
}

double QubitSystem::drive_amplitude_total() const {
    double w = 0.0;
    for (int n = 0; n < n_qubits; ++n) w += std::abs(drive_weight(n));
    return drive.amplitude_sum() * w;
}

bool QubitSystem::identical_parameters() const {
    for (int n = 0; n < n_qubits; ++n)
        if (std::abs(splitting(n) - splitting(0)) > 1e-14 * std::max(1.0, std::abs(omega0)) ||
            std::abs(drive_weight(n) - drive_weight(0)) > 1e-14)
            return false;
    if (couplings.empty()) return true;
    // all-to-all with identical strength and kind
    const size_t expected = size_t(n_qubits) * (n_qubits - 1) / 2;
    if (couplings.size() != expected) return false;
    std::set<std::pair<int, int>> pairs;
    for (const auto& c : couplings) {
        if (c.kind != couplings.front().kind ||
            std::abs(c.strength - couplings.front().strength) > 1e-14 * std::max(1.0, std::abs(c.strength)))
            return false;
        pairs.insert({std::min(c.a, c.b), std::max(c.a, c.b)});
    }
    return pairs.size() == expected;
}

void QubitSystem::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("QubitSystem: need at least one qubit");
    if (!splitting_weights.empty() && int(splitting_weights.size()) != n_qubits)
        throw std::invalid_argument("QubitSystem: splitting_weights size mismatch");
    if (!drive_weights.empty() && int(drive_weights.size()) != n_qubits)
        throw std::invalid_argument("QubitSystem: drive_weights size mismatch");
    drive.validate();
    for (const auto& c : couplings) {
        if (c.a == c.b || c.a < 0 || c.b < 0 || c.a >= n_qubits || c.b >= n_qubits)
            throw std::invalid_argument("QubitSystem: coupling must act on two distinct qubits in range");
        c.pair_operator();  // validates custom operators
    }
}

QubitSystem make_uniform_system(int n_qubits, double omega0, PeriodicDrive drive, CouplingKind kind,
                                double strength) {
    QubitSystem s;
    s.n_qubits = n_qubits;
    s.omega0 = omega0;
    s.drive = std::move(drive);
    if (strength != 0.0) {
        for (int a = 0; a < n_qubits; ++a)
            for (int b = a + 1; b < n_qubits; ++b) s.couplings.push_back({a, b, kind, strength, {}});
    }
    s.validate();
    return s;
}

FourierBlocks fourier_components(const QubitSystem& system) {
    system.validate();
    if (system.drive.kind == PeriodicDrive::Kind::delta_kick)
        throw std::invalid_argument(
            "fourier_components: delta-kick drives have no truncating Fourier series; use the monodromy backend");
    FourierBlocks blocks;
    blocks.dim = system.dim();
    blocks.insert(0, system.static_hamiltonian());
    const Matrix drive_op = system.drive_operator();
    for (const auto& [k, c] : system.drive.coeffs) {
        if (k == 0) continue;
        blocks.insert(k, c * drive_op);
    }
    blocks.validate();
    return blocks;
}

// ----------------------------------------------------------- subspace bases

namespace {

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

int popcount(unsigned x) {
    int c = 0;
    for (; x; x >>= 1) c += int(x & 1u);
    return c;
}

}  // namespace

Vector dicke_state(int n_qubits, int m) {
    if (n_qubits < 1) throw std::invalid_argument("dicke_state: need at least one qubit");
    if (m < 0 || m > n_qubits) throw std::out_of_range("dicke_state: excitation count out of range");
    const int dim = 1 << n_qubits;
    Vector v = Vector::Zero(dim);
    const double coeff = 1.0 / std::sqrt(binomial(n_qubits, m));
    for (int s = 0; s < dim; ++s) {
        // basis index bit 0 marks |up>, so m up-spins means N - popcount set bits
        if (n_qubits - popcount(unsigned(s)) == m) v(s) = coeff;
    }
    return v;
}

CollectiveSpin collective_spin_operators(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("collective_spin_operators: need at least one qubit");
    const int dim = 1 << n_qubits;
    CollectiveSpin j;
    j.jx = Matrix::Zero(dim, dim);
    j.jy = Matrix::Zero(dim, dim);
    j.jz = Matrix::Zero(dim, dim);
    for (int n = 0; n < n_qubits; ++n) {
        j.jx += 0.5 * embed_1q(pauli_x(), n, n_qubits);
        j.jy += 0.5 * embed_1q(pauli_y(), n, n_qubits);
        j.jz += 0.5 * embed_1q(pauli_z(), n, n_qubits);
    }
    j.j_squared = j.jx * j.jx + j.jy * j.jy + j.jz * j.jz;
    return j;
}

SubspaceBasis full_basis(int n_qubits) {
    SubspaceBasis b;
    b.kind = SubspaceBasis::Kind::full;
    b.n_qubits = n_qubits;
    b.vectors = Matrix::Identity(1 << n_qubits, 1 << n_qubits);
    return b;
}

SubspaceBasis symmetric_dicke_basis(int n_qubits) {
    SubspaceBasis b;
    b.kind = SubspaceBasis::Kind::symmetric_dicke;
    b.n_qubits = n_qubits;
    b.vectors = Matrix(1 << n_qubits, n_qubits + 1);
    for (int m = 0; m <= n_qubits; ++m) b.vectors.col(m) = dicke_state(n_qubits, m);
    return b;
}

SubspaceBasis antisymmetric_2q_basis() {
    SubspaceBasis b;
    b.kind = SubspaceBasis::Kind::antisymmetric_2q;
    b.n_qubits = 2;
    b.vectors = Matrix::Zero(4, 1);
    b.vectors(1, 0) = 1.0 / std::sqrt(2.0);   // |up down>
    b.vectors(2, 0) = -1.0 / std::sqrt(2.0);  // |down up>
    return b;
}

SubspaceBasis cyclic_sector_basis(int n_qubits, int sector) {
    if (sector < 0 || sector >= n_qubits)
        throw std::out_of_range("cyclic_sector_basis: sector out of range");
    const int dim = 1 << n_qubits;
    const Complex lambda = std::exp(kI * kTwoPi * double(sector) / double(n_qubits));
    std::vector<Vector> cols;
    std::vector<bool> seen(size_t(dim), false);
    for (int rep = 0; rep < dim; ++rep) {
        if (seen[size_t(rep)]) continue;
        // orbit of the cyclic shift
        std::vector<int> orbit;
        int s = rep;
        do {
            orbit.push_back(s);
            seen[size_t(s)] = true;
            const int low = s & 1;
            s = (s >> 1) | (low << (n_qubits - 1));
        } while (s != rep);
        const int p = int(orbit.size());
        if ((sector * p) % n_qubits != 0) continue;  // eigenvalue incompatible with the orbit period
        Vector v = Vector::Zero(dim);
        for (int j = 0; j < p; ++j) v(orbit[size_t(j)]) = std::pow(lambda, -double(j)) / std::sqrt(double(p));
        cols.push_back(std::move(v));
    }
    SubspaceBasis b;
    b.kind = SubspaceBasis::Kind::cyclic_sector;
    b.n_qubits = n_qubits;
    b.sector = sector;
    b.vectors = Matrix(dim, Eigen::Index(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) b.vectors.col(Eigen::Index(i)) = cols[i];
    return b;
}

FourierBlocks build_hamiltonian_blocks(const QubitSystem& system, const SubspaceBasis& subspace) {
    const FourierBlocks full = fourier_components(system);
    if (subspace.kind == SubspaceBasis::Kind::full) return full;
    if (subspace.full_dim() != system.dim())
        throw std::invalid_argument("build_hamiltonian_blocks: subspace dimension mismatch");

    const Matrix projector = subspace.vectors * subspace.vectors.adjoint();
    FourierBlocks reduced;
    reduced.dim = subspace.dim();
    for (const auto& [j, b] : full.blocks) {
        const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
        if ((projector * b - b * projector).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw std::invalid_argument(
                "build_hamiltonian_blocks: Hamiltonian does not commute with the subspace symmetry");
        reduced.insert(j, subspace.project(b));
    }
    reduced.validate();
    return reduced;
}

FloquetSpectrum expand_to_full(const FloquetSpectrum& spectrum, const SubspaceBasis& subspace) {
    if (subspace.dim() != spectrum.dim)
        throw std::invalid_argument("expand_to_full: spectrum does not live in this subspace");
    FloquetSpectrum out = spectrum;
    out.dim = subspace.full_dim();
    for (auto& s : out.states) {
        Matrix full(subspace.full_dim(), s.components.cols());
        for (int c = 0; c < s.components.cols(); ++c) full.col(c) = subspace.expand(s.components.col(c));
        s.components = std::move(full);
    }
    for (auto& u : out.sample_props) u = subspace.vectors * u * subspace.vectors.adjoint();
    return out;
}

// ------------------------------------------------- non-interacting references

FloquetState product_state(const std::vector<const FloquetState*>& factors, double omega) {
    if (factors.empty()) throw std::invalid_argument("product_state: need at least one factor");
    FloquetState acc;
    acc.m_max = 0;
    acc.quasi_energy = 0.0;
    acc.components = Matrix::Ones(1, 1);
    for (const FloquetState* f : factors) {
        FloquetState next;
        next.m_max = acc.m_max + f->m_max;
        next.quasi_energy = acc.quasi_energy + f->quasi_energy;
        next.components = Matrix::Zero(acc.components.rows() * f->components.rows(), 2 * next.m_max + 1);
        for (int k1 = -acc.m_max; k1 <= acc.m_max; ++k1) {
            const Vector a = acc.components.col(k1 + acc.m_max);
            if (a.norm() == 0.0) continue;
            for (int k2 = -f->m_max; k2 <= f->m_max; ++k2) {
                const Vector b = f->components.col(k2 + f->m_max);
                if (b.norm() == 0.0) continue;
                next.components.col(k1 + k2 + next.m_max) += kron(a, b);
            }
        }
        acc = std::move(next);
    }
    const int n = int(std::round(acc.quasi_energy / omega - fold_to_zone(acc.quasi_energy, omega) / omega));
    acc = shift_state(acc, -n, omega);
    acc.quasi_energy = fold_to_zone(acc.quasi_energy, omega);
    return acc;
}

std::vector<FloquetState> noninteracting_product_states(const std::vector<FloquetSpectrum>& single_qubit,
                                                        double omega) {
    const int n = int(single_qubit.size());
    if (n < 1) throw std::invalid_argument("noninteracting_product_states: need at least one qubit");
    for (const auto& s : single_qubit)
        if (s.dim != 2) throw std::invalid_argument("noninteracting_product_states: factors must be single-qubit");

    struct Entry {
        double unfolded;
        unsigned string;  // bit n set = minus sign on qubit n
    };
    std::vector<Entry> entries;
    for (unsigned s = 0; s < (1u << n); ++s) {
        double e = 0.0;
        for (int q = 0; q < n; ++q) {
            const bool minus = (s >> q) & 1u;
            // states are quasi-energy ascending: index 0 = mu_-, index 1 = mu_+
            e += single_qubit[size_t(q)].states[minus ? 0 : 1].quasi_energy;
        }
        entries.push_back({e, s});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.unfolded != b.unfolded) return a.unfolded > b.unfolded;
        return a.string < b.string;
    });

    std::vector<FloquetState> out;
    for (const auto& ent : entries) {
        std::vector<const FloquetState*> factors;
        for (int q = 0; q < n; ++q) {
            const bool minus = (ent.string >> q) & 1u;
            factors.push_back(&single_qubit[size_t(q)].states[minus ? 0 : 1]);
        }
        out.push_back(product_state(factors, omega));
    }
    return out;
}

std::vector<FloquetState> noninteracting_symmetric_states(const FloquetSpectrum& single_qubit, int n_qubits) {
    if (single_qubit.dim != 2)
        throw std::invalid_argument("noninteracting_symmetric_states: need a single-qubit spectrum");
    const double omega = single_qubit.omega;
    std::vector<FloquetState> out;
    for (int i = 0; i <= n_qubits; ++i) {  // i = number of minus signs
        FloquetState sym;
        bool first = true;
        int count = 0;
        for (unsigned s = 0; s < (1u << n_qubits); ++s) {
            if (popcount(s) != i) continue;
            std::vector<const FloquetState*> factors;
            for (int q = 0; q < n_qubits; ++q) {
                const bool minus = (s >> q) & 1u;
                factors.push_back(&single_qubit.states[minus ? 0 : 1]);
            }
            FloquetState prod = product_state(factors, omega);
            if (first) {
                sym = prod;
                first = false;
            } else {
                sym.components += prod.components;
            }
            ++count;
        }
        sym.components /= std::sqrt(double(count));
        sym.quasi_energy = fold_to_zone(double(n_qubits - 2 * i) * single_qubit.states[1].quasi_energy, omega);
        out.push_back(std::move(sym));
    }
    return out;
}

// ------------------------------------------------------------- front end

std::vector<SymmetryOp> system_symmetries(const QubitSystem& system, const SubspaceBasis& subspace,
                                          const SolveOptions& options) {
    std::vector<SymmetryOp> out;
    const Matrix projector = subspace.vectors * subspace.vectors.adjoint();

    auto subspace_invariant = [&](const Matrix& full_op) {
        return (full_op * projector - projector * full_op).cwiseAbs().maxCoeff() < 1e-10;
    };
    auto commutes_with_system = [&](const Matrix& full_op, bool alternate) {
        const Matrix h0 = system.static_hamiltonian();
        const Matrix hd = system.drive_operator();
        const double s0 = std::max(1.0, h0.cwiseAbs().maxCoeff());
        const double sd = std::max(1.0, hd.cwiseAbs().maxCoeff());
        if ((full_op * h0 * full_op.adjoint() - h0).cwiseAbs().maxCoeff() > 1e-10 * s0) return false;
        // alternate-sign symmetries must flip odd drive harmonics
        if (alternate) {
            if (!system.drive.half_period_antisymmetric()) return false;
            if ((full_op * hd * full_op.adjoint() + hd).cwiseAbs().maxCoeff() > 1e-10 * sd) return false;
        } else {
            if ((full_op * hd * full_op.adjoint() - hd).cwiseAbs().maxCoeff() > 1e-10 * sd) return false;
        }
        return true;
    };

    if (options.use_permutation_symmetry && system.n_qubits >= 2) {
        std::vector<Matrix> candidates;
        candidates.push_back(cyclic_permutation(system.n_qubits));
        if (system.n_qubits == 2) candidates.pop_back();  // cyclic == swap for two qubits
        candidates.push_back(swap_qubits(0, system.n_qubits - 1, system.n_qubits));
        for (const auto& cand : candidates)
            if (commutes_with_system(cand, false) && subspace_invariant(cand))
                out.push_back({subspace.project(cand), false});
    }
    if (options.use_parity_symmetry) {
        Matrix par = Matrix::Identity(system.dim(), system.dim());
        for (int n = 0; n < system.n_qubits; ++n) par = par * embed_1q(pauli_z(), n, system.n_qubits);
        if (commutes_with_system(par, true) && subspace_invariant(par)) out.push_back({subspace.project(par), true});
    }
    return out;
}

FloquetSpectrum solve_fourier(const QubitSystem& system, const SubspaceBasis& subspace,
                              const SolveOptions& options) {
    const FourierBlocks blocks = build_hamiltonian_blocks(system, subspace);
    const double omega = system.omega();
    DiagonalizeOptions diag;
    diag.symmetry_ops = system_symmetries(system, subspace, options);

    // drive harmonics beyond the window are dropped, which is itself a
    // consistent truncation of the profile (relevant for saw-tooth series)
    int m = options.m_max ? std::max(*options.m_max, 1)
                          : std::max(truncation_rule(system.drive_amplitude_total(), omega, options.margin), 1);

    FloquetSpectrum spec = diagonalize_floquet(build_floquet_matrix(blocks, m, omega), diag);
    if (!options.adaptive) return spec;

    constexpr int kMaxM = 256;
    while (m < kMaxM) {
        const int m_next = m + 4;
        FloquetSpectrum next = diagonalize_floquet(build_floquet_matrix(blocks, m_next, omega), diag);
        double drift = 0.0;
        for (int i = 0; i < spec.dim; ++i)
            drift = std::max(drift, zone_distance(spec.states[size_t(i)].quasi_energy,
                                                  next.states[size_t(i)].quasi_energy, omega));
        spec = std::move(next);
        m = m_next;
        if (drift < options.adaptive_tol * omega) return spec;
    }
    throw std::runtime_error("solve_fourier: adaptive truncation did not settle below the tolerance");
}

FloquetSpectrum solve_monodromy(const QubitSystem& system, const SubspaceBasis& subspace,
                                const SolveOptions& options) {
    system.validate();
    const double omega = system.omega();
    MonodromyOptions mono = options.monodromy;
    for (const auto& sym : system_symmetries(system, subspace, options))
        if (!sym.alternate_sign) mono.symmetry_ops.push_back(sym.op);

    if (system.drive.kind == PeriodicDrive::Kind::delta_kick) {
        const Matrix h_static = system.static_hamiltonian();
        const Matrix kick = system.drive.kick_area * system.drive_operator();
        const Matrix projector = subspace.vectors * subspace.vectors.adjoint();
        for (const Matrix* op : {&h_static, &kick})
            if ((*op * projector - projector * *op).cwiseAbs().maxCoeff() > 1e-10)
                throw std::invalid_argument("solve_monodromy: system does not commute with the subspace symmetry");
        return monodromy_kicked(subspace.project(h_static), subspace.project(kick), omega, mono);
    }

    const Matrix h_static = subspace.project(system.static_hamiltonian());
    const Matrix drive_op = subspace.project(system.drive_operator());
    {
        const Matrix full_static = system.static_hamiltonian();
        const Matrix full_drive = system.drive_operator();
        const Matrix projector = subspace.vectors * subspace.vectors.adjoint();
        for (const Matrix* op : {&full_static, &full_drive})
            if ((*op * projector - projector * *op).cwiseAbs().maxCoeff() > 1e-10)
                throw std::invalid_argument("solve_monodromy: system does not commute with the subspace symmetry");
    }
    const PeriodicDrive drive = system.drive;
    auto h_of_t = [h_static, drive_op, drive](double t) -> Matrix { return h_static + drive.value(t) * drive_op; };
    return monodromy_solve(h_of_t, omega, mono);
}

FloquetSpectrum solve_system(const QubitSystem& system, const SubspaceBasis& subspace, const SolveOptions& options) {
    if (system.drive.kind == PeriodicDrive::Kind::delta_kick) return solve_monodromy(system, subspace, options);
    return solve_fourier(system, subspace, options);
}

}  // namespace floqent
