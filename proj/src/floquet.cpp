#include "floqent/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace floqent {

double fold_to_zone(double energy, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("fold_to_zone: omega must be positive");
    // round-half-up keeps the interval half-open: +omega/2 maps to -omega/2
    double folded = energy - omega * std::floor(energy / omega + 0.5);
    if (folded >= omega / 2.0) folded -= omega;  // guard against floating-point boundary spill
    if (folded < -omega / 2.0) folded += omega;
    return folded;
}

double zone_distance(double a, double b, double omega) {
    return std::abs(fold_to_zone(a - b, omega));
}

int truncation_rule(double f_total, double omega, int margin) {
    if (f_total < 0.0) throw std::invalid_argument("truncation_rule: amplitude must be non-negative");
    if (!(omega > 0.0)) throw std::invalid_argument("truncation_rule: omega must be positive");
    if (margin < 0) throw std::invalid_argument("truncation_rule: margin must be non-negative");
    return int(std::ceil(2.0 * f_total / omega)) + margin;
}

// ---------------------------------------------------------------- FourierBlocks

const Matrix& FourierBlocks::at(int j) const {
    const auto it = blocks.find(j);
    if (it == blocks.end()) throw std::out_of_range("FourierBlocks: no block at this index");
    return it->second;
}

void FourierBlocks::insert(int j, Matrix block) {
    if (dim == 0) dim = int(block.rows());
    if (block.rows() != dim || block.cols() != dim)
        throw std::invalid_argument("FourierBlocks: inconsistent block dimension");
    if (block.cwiseAbs().maxCoeff() == 0.0) return;
    blocks[j] = std::move(block);
}

void FourierBlocks::validate() const {
    if (dim <= 0) throw std::invalid_argument("FourierBlocks: empty");
    for (const auto& [j, b] : blocks) {
        const auto it = blocks.find(-j);
        if (it == blocks.end())
            throw std::invalid_argument("FourierBlocks: missing conjugate block");
        const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
        if ((it->second - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("FourierBlocks: H~_{-j} != H~_j^dagger");
    }
}

int FourierBlocks::max_index() const {
    int m = 0;
    for (const auto& [j, b] : blocks) m = std::max(m, std::abs(j));
    return m;
}

// ---------------------------------------------------------------- assembly

FloquetMatrix build_floquet_matrix(const FourierBlocks& blocks, int m_max, double omega) {
    if (m_max < 1) throw std::invalid_argument("build_floquet_matrix: m_max must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("build_floquet_matrix: omega must be positive");
    blocks.validate();

    const int d = blocks.dim;
    const int nb = 2 * m_max + 1;
    FloquetMatrix out;
    out.block_dim = d;
    out.m_max = m_max;
    out.omega = omega;
    out.blocks = blocks.blocks;
    out.assembled = Matrix::Zero(Eigen::Index(nb) * d, Eigen::Index(nb) * d);

    const Matrix zero = Matrix::Zero(d, d);
    const Matrix& h0 = blocks.has(0) ? blocks.at(0) : zero;
    for (int r = 0; r < nb; ++r) {
        const int k = r - m_max;
        out.assembled.block(Eigen::Index(r) * d, Eigen::Index(r) * d, d, d) =
            h0 + double(k) * omega * Matrix::Identity(d, d);
        for (const auto& [j, b] : blocks.blocks) {
            if (j == 0) continue;
            const int c = r + j;  // block (k, l) holds H~_{l-k}
            if (c < 0 || c >= nb) continue;
            out.assembled.block(Eigen::Index(r) * d, Eigen::Index(c) * d, d, d) = b;
        }
    }
    if (!is_hermitian(out.assembled))
        throw std::runtime_error("build_floquet_matrix: assembled matrix is not Hermitian");
    return out;
}

// ---------------------------------------------------------------- FloquetState

Vector FloquetState::component(int k) const {
    if (std::abs(k) > m_max) return Vector::Zero(components.rows());
    return components.col(k + m_max);
}

Vector FloquetState::at_time(double t, double omega) const {
    Vector out = Vector::Zero(components.rows());
    for (int k = -m_max; k <= m_max; ++k)
        out += components.col(k + m_max) * std::exp(-kI * double(k) * omega * t);
    return out;
}

Vector FloquetState::at_zero() const {
    Vector out = Vector::Zero(components.rows());
    for (int c = 0; c < components.cols(); ++c) out += components.col(c);
    return out;
}

double FloquetState::fourier_centroid() const {
    double acc = 0.0;
    for (int k = -m_max; k <= m_max; ++k)
        acc += double(k) * components.col(k + m_max).squaredNorm();
    return acc;
}

FloquetState shift_state(const FloquetState& state, int n, double omega) {
    FloquetState out = state;
    out.quasi_energy = fold_to_zone(state.quasi_energy + n * omega, omega);
    out.components.setZero();
    for (int k = -state.m_max; k <= state.m_max; ++k) {
        const int src = k + n;
        if (std::abs(src) > state.m_max) continue;
        out.components.col(k + state.m_max) = state.components.col(src + state.m_max);
    }
    return out;
}

FloquetState apply_blockwise(const FloquetState& state, const Matrix& op, bool alternate_sign) {
    if (op.rows() != state.components.rows())
        throw std::invalid_argument("apply_blockwise: dimension mismatch");
    FloquetState out = state;
    for (int k = -state.m_max; k <= state.m_max; ++k) {
        const double sign = alternate_sign && (k % 2 != 0) ? -1.0 : 1.0;
        out.components.col(k + state.m_max) = sign * (op * state.components.col(k + state.m_max));
    }
    return out;
}

// ---------------------------------------------------------------- spectrum

std::vector<double> FloquetSpectrum::quasi_energies() const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.quasi_energy);
    return out;
}

double FloquetSpectrum::max_residual() const {
    double r = 0.0;
    for (const auto& s : states) r = std::max(r, s.residual);
    return r;
}

Complex stack_inner(const FloquetState& a, const FloquetState& b) {
    if (a.components.rows() != b.components.rows())
        throw std::invalid_argument("stack_inner: dimension mismatch");
    Complex acc = 0.0;
    const int m = std::min(a.m_max, b.m_max);
    for (int k = -m; k <= m; ++k)
        acc += Vector(a.components.col(k + a.m_max)).dot(Vector(b.components.col(k + b.m_max)));
    return acc;
}

namespace {

Complex stack_dot(const FloquetState& a, const FloquetState& b) { return stack_inner(a, b); }

double stack_overlap(const FloquetState& a, const FloquetState& b) {
    return std::abs(stack_dot(a, b));
}

// With diagonal H~_0 + k omega and block H~_{l-k} at (k, l), slot row k of the
// assembled matrix holds the stack component Phi~(-k) of the e^{-i k w t}
// expansion; flattening maps between the two orderings.
Vector flatten(const FloquetState& s) {
    const Eigen::Index d = s.components.rows();
    const int m = s.m_max;
    Vector v(s.components.size());
    for (int slot = 0; slot < 2 * m + 1; ++slot) v.segment(Eigen::Index(slot) * d, d) = s.components.col(2 * m - slot);
    return v;
}

void unflatten(const Vector& v, FloquetState& s) {
    const Eigen::Index d = s.components.rows();
    const int m = s.m_max;
    for (int slot = 0; slot < 2 * m + 1; ++slot) s.components.col(2 * m - slot) = v.segment(Eigen::Index(slot) * d, d);
}

void rayleigh_update(const Matrix& assembled, FloquetState& s, double omega) {
    const Vector v = flatten(s);
    const Vector av = assembled * v;
    const double eps = v.dot(av).real();
    s.quasi_energy = fold_to_zone(eps, omega);
    s.residual = (av - eps * v).norm();
}

void fix_gauge(FloquetState& s) {
    const Vector psi0 = s.at_zero();
    Eigen::Index imax = 0;
    psi0.cwiseAbs().maxCoeff(&imax);
    const Complex amp = psi0(imax);
    if (std::abs(amp) > 0.0) s.components *= std::conj(amp) / std::abs(amp);
}

// Split a degenerate group into sectors of a symmetry operator; returns index
// clusters in deterministic order and rotates the states in place.
std::vector<std::vector<int>> split_by_symmetry(std::vector<FloquetState>& group, const SymmetryOp& sym) {
    const int g = int(group.size());
    Matrix gram(g, g);
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            const FloquetState sb = apply_blockwise(group[b], sym.op, sym.alternate_sign);
            gram(a, b) = stack_dot(group[a], sb);
        }
    }
    Eigen::ComplexEigenSolver<Matrix> solver(gram);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_floquet: symmetry-sector eigensolve failed");
    const Vector evs = solver.eigenvalues();
    Matrix vecs = solver.eigenvectors();

    std::vector<int> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(evs(a).real() - evs(b).real()) > 1e-6) return evs(a).real() > evs(b).real();
        return evs(a).imag() > evs(b).imag();
    });

    std::vector<std::vector<int>> clusters;
    for (int pos = 0; pos < g; ++pos) {
        const Complex ev = evs(order[pos]);
        if (!clusters.empty() && std::abs(ev - evs(order[clusters.back().front()] )) < 1e-6)
            clusters.back().push_back(pos);
        else
            clusters.push_back({pos});
    }

    // orthonormalize eigenvector columns within each cluster, then rotate
    Matrix rot(g, g);
    int at = 0;
    for (auto& cl : clusters) {
        Matrix sub(g, int(cl.size()));
        for (size_t j = 0; j < cl.size(); ++j) sub.col(Eigen::Index(j)) = vecs.col(order[cl[j]]);
        Eigen::HouseholderQR<Matrix> qr(sub);
        Matrix q = qr.householderQ() * Matrix::Identity(g, int(cl.size()));
        for (size_t j = 0; j < cl.size(); ++j) rot.col(at + Eigen::Index(j)) = q.col(Eigen::Index(j));
        for (size_t j = 0; j < cl.size(); ++j) cl[j] = at + int(j);
        at += int(cl.size());
    }

    std::vector<FloquetState> rotated(g, group[0]);
    for (int a = 0; a < g; ++a) {
        Vector acc = Vector::Zero(flatten(group[0]).size());
        for (int b = 0; b < g; ++b) acc += rot(b, a) * flatten(group[b]);
        if (acc.norm() > 0.0) acc /= acc.norm();
        unflatten(acc, rotated[a]);
    }
    group = std::move(rotated);
    return clusters;
}

// Gram-Schmidt on the t = 0 reconstructions inside one exactly degenerate cluster.
void orthonormalize_at_zero(std::vector<FloquetState*> cluster) {
    for (size_t i = 0; i < cluster.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            const Vector a0 = cluster[j]->at_zero();
            const Vector b0 = cluster[i]->at_zero();
            const double n2 = a0.squaredNorm();
            if (n2 < 1e-12) continue;
            const Complex coef = a0.dot(b0) / n2;
            cluster[i]->components -= coef * cluster[j]->components;
        }
        const double n = cluster[i]->components.norm();
        if (n > 0.0) cluster[i]->components /= n;
    }
}

}  // namespace

FloquetSpectrum diagonalize_floquet(const FloquetMatrix& matrix, const DiagonalizeOptions& options) {
    const double omega = matrix.omega;
    const int d = matrix.block_dim;
    const int m = matrix.m_max;
    if (!is_hermitian(matrix.assembled))
        throw std::invalid_argument("diagonalize_floquet: matrix must be Hermitian");
    for (const auto& sym : options.symmetry_ops) {
        for (const auto& [j, b] : matrix.blocks) {
            const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
            // an alternate-sign symmetry must send H~_j to (-1)^j H~_j
            const double sgn = sym.alternate_sign && (j % 2 != 0) ? -1.0 : 1.0;
            if ((sym.op * b * sym.op.adjoint() - sgn * b).cwiseAbs().maxCoeff() > 1e-10 * scale)
                throw std::invalid_argument("diagonalize_floquet: symmetry op does not commute with the Hamiltonian");
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix.assembled);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_floquet: eigendecomposition failed");
    const Eigen::VectorXd evs = solver.eigenvalues();
    const Matrix& vecs = solver.eigenvectors();

    auto make_state = [&](Eigen::Index idx) {
        FloquetState s;
        s.m_max = m;
        s.quasi_energy = evs(idx);
        s.components = Matrix(d, 2 * m + 1);
        unflatten(vecs.col(idx), s);
        return s;
    };

    const double edge = options.edge_tol * omega;
    const double half = omega / 2.0;
    std::vector<FloquetState> selected;
    std::vector<Eigen::Index> left_edge, right_edge;
    for (Eigen::Index i = 0; i < evs.size(); ++i) {
        const double e = evs(i);
        if (std::abs(e + half) <= edge)
            left_edge.push_back(i);
        else if (std::abs(e - half) <= edge)
            right_edge.push_back(i);
        else if (e >= -half && e < half)
            selected.push_back(make_state(i));
    }

    // Zone-boundary ties: a right-edge value folds onto the left edge. If both
    // rest-class homologues were computed, keep the one whose Fourier weight
    // centroid is closest to zero; otherwise keep the survivor relabeled into
    // the zone.
    std::vector<bool> left_used(left_edge.size(), false);
    for (const Eigen::Index ri : right_edge) {
        FloquetState rs = make_state(ri);
        const FloquetState rs_in_zone = shift_state(rs, -1, omega);
        int match = -1;
        for (size_t li = 0; li < left_edge.size(); ++li) {
            if (left_used[li]) continue;
            const FloquetState ls = make_state(left_edge[li]);
            if (stack_overlap(rs_in_zone, ls) > 0.5) {
                match = int(li);
                break;
            }
        }
        if (match >= 0) {
            left_used[size_t(match)] = true;
            const FloquetState ls = make_state(left_edge[size_t(match)]);
            if (std::abs(rs.fourier_centroid()) < std::abs(ls.fourier_centroid())) {
                FloquetState kept = rs_in_zone;
                kept.quasi_energy = fold_to_zone(evs(ri), omega);
                selected.push_back(std::move(kept));
            } else {
                selected.push_back(ls);
            }
        } else {
            FloquetState kept = rs_in_zone;
            kept.quasi_energy = fold_to_zone(evs(ri), omega);
            selected.push_back(std::move(kept));
        }
    }
    for (size_t li = 0; li < left_edge.size(); ++li)
        if (!left_used[li]) selected.push_back(make_state(left_edge[li]));

    if (int(selected.size()) != d)
        throw std::runtime_error("diagonalize_floquet: found " + std::to_string(selected.size()) +
                                 " central-zone representatives, expected " + std::to_string(d) +
                                 " (increase m_max or check for pathological degeneracy)");

    std::stable_sort(selected.begin(), selected.end(),
                     [](const FloquetState& a, const FloquetState& b) { return a.quasi_energy < b.quasi_energy; });

    // degenerate groups (circular: the zone boundary wraps)
    const double dtol = options.degeneracy_tol * omega;
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < d; ++i) {
        if (!groups.empty() &&
            zone_distance(selected[i].quasi_energy, selected[groups.back().back()].quasi_energy, omega) <= dtol)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    if (groups.size() > 1 &&
        zone_distance(selected[groups.front().front()].quasi_energy, selected[groups.back().back()].quasi_energy,
                      omega) <= dtol) {
        for (int i : groups.front()) groups.back().push_back(i);
        groups.erase(groups.begin());
    }

    for (const auto& group_idx : groups) {
        if (group_idx.size() < 2) continue;
        std::vector<FloquetState> group;
        for (int i : group_idx) group.push_back(selected[size_t(i)]);

        std::vector<std::vector<int>> clusters{std::vector<int>()};
        for (size_t i = 0; i < group.size(); ++i) clusters[0].push_back(int(i));
        for (const auto& sym : options.symmetry_ops) {
            std::vector<std::vector<int>> next;
            for (const auto& cl : clusters) {
                if (cl.size() < 2) {
                    next.push_back(cl);
                    continue;
                }
                std::vector<FloquetState> sub;
                for (int i : cl) sub.push_back(group[size_t(i)]);
                const auto split = split_by_symmetry(sub, sym);
                for (size_t i = 0; i < cl.size(); ++i) group[size_t(cl[i])] = sub[i];
                for (const auto& scl : split) {
                    std::vector<int> mapped;
                    for (int i : scl) mapped.push_back(cl[size_t(i)]);
                    next.push_back(mapped);
                }
            }
            clusters = std::move(next);
        }
        for (const auto& cl : clusters) {
            if (cl.size() < 2) continue;
            std::vector<FloquetState*> ptrs;
            for (int i : cl) ptrs.push_back(&group[size_t(i)]);
            orthonormalize_at_zero(ptrs);
        }
        for (size_t i = 0; i < group.size(); ++i) selected[size_t(group_idx[i])] = group[i];
    }

    FloquetSpectrum spec;
    spec.backend = Backend::fourier;
    spec.omega = omega;
    spec.dim = d;
    spec.m_max = m;
    for (auto& s : selected) {
        rayleigh_update(matrix.assembled, s, omega);
        fix_gauge(s);
    }
    std::stable_sort(selected.begin(), selected.end(),
                     [](const FloquetState& a, const FloquetState& b) { return a.quasi_energy < b.quasi_energy; });
    spec.states = std::move(selected);
    return spec;
}

Vector floquet_state_at(const FloquetSpectrum& spectrum, int i, double t) {
    if (i < 0 || i >= int(spectrum.states.size()))
        throw std::out_of_range("floquet_state_at: state index out of range");
    const double period = kTwoPi / spectrum.omega;
    t -= period * std::floor(t / period);
    const FloquetState& s = spectrum.states[size_t(i)];
    if (spectrum.backend == Backend::fourier) return s.at_time(t, spectrum.omega);

    if (t == 0.0 || spectrum.sample_times.empty()) {
        if (t != 0.0)
            throw std::runtime_error("floquet_state_at: monodromy spectrum carries no propagator table");
        return s.at_zero();
    }
    size_t best = 0;
    double dist = std::numeric_limits<double>::max();
    for (size_t j = 0; j < spectrum.sample_times.size(); ++j) {
        const double dj = std::abs(spectrum.sample_times[j] - t);
        if (dj < dist) {
            dist = dj;
            best = j;
        }
    }
    const double ts = spectrum.sample_times[best];
    return std::exp(kI * s.quasi_energy * ts) * (spectrum.sample_props[best] * s.at_zero());
}

double eigen_residual(const FloquetMatrix& matrix, const FloquetState& state, std::optional<double> quasi_energy) {
    if (state.m_max != matrix.m_max || state.dim() != matrix.block_dim)
        throw std::invalid_argument("eigen_residual: stack does not match the matrix layout");
    const Vector v = flatten(state);
    const double eps = quasi_energy.value_or(state.quasi_energy);
    return (matrix.assembled * v - eps * v).norm();
}

double sum_rule_defect(const FloquetSpectrum& spectrum, const Matrix& static_block) {
    double sum = 0.0;
    for (const auto& s : spectrum.states) sum += s.quasi_energy;
    return fold_to_zone(sum - static_block.trace().real(), spectrum.omega);
}

std::vector<int> assign_by_overlap(const std::vector<FloquetState>& refs, const std::vector<FloquetState>& states) {
    std::vector<int> order(refs.size(), -1);
    std::vector<bool> used(states.size(), false);
    for (size_t pass = 0; pass < refs.size(); ++pass) {
        double best = -1.0;
        size_t best_slot = 0;
        int best_state = -1;
        for (size_t r = 0; r < refs.size(); ++r) {
            if (order[r] >= 0) continue;
            for (size_t s = 0; s < states.size(); ++s) {
                if (used[s]) continue;
                const double ov = std::abs(stack_inner(refs[r], states[s]));
                if (ov > best) {
                    best = ov;
                    best_slot = r;
                    best_state = int(s);
                }
            }
        }
        if (best_state < 0) throw std::runtime_error("assign_by_overlap: more references than states");
        order[best_slot] = best_state;
        used[size_t(best_state)] = true;
    }
    return order;
}

double circular_set_distance(std::vector<double> a, std::vector<double> b, double omega) {
    if (a.size() != b.size()) throw std::invalid_argument("circular_set_distance: size mismatch");
    if (a.empty()) return 0.0;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const int n = int(a.size());
    double best = std::numeric_limits<double>::max();
    for (int rot = 0; rot < n; ++rot) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, zone_distance(a[size_t(i)], b[size_t((i + rot) % n)], omega));
        best = std::min(best, worst);
    }
    return best;
}

}  // namespace floqent
