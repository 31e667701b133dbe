#include "floqent/resonance.hpp"

#include <algorithm>
#include <cmath>

namespace floqent {

DegeneracyDeviation degeneracy_deviation(double mu, double omega, int denom) {
    if (!(omega > 0.0)) throw std::invalid_argument("degeneracy_deviation: omega must be positive");
    if (denom <= 0) throw std::invalid_argument("degeneracy_deviation: denom must be positive");
    const double ratio = denom * mu / omega;
    DegeneracyDeviation out;
    out.n = int(std::llround(ratio));
    out.deviation = std::abs(ratio - out.n);
    return out;
}

Complex coupling_matrix_element(const FloquetState& bra, const FloquetState& ket, const FourierBlocks& hqq) {
    if (bra.dim() != ket.dim() || bra.dim() != hqq.dim)
        throw std::invalid_argument("coupling_matrix_element: dimension mismatch");
    Complex acc = 0.0;
    for (const auto& [j, block] : hqq.blocks) {
        // H~_{l-k} couples component l of the ket to component k = l - j of the bra
        for (int l = -ket.m_max; l <= ket.m_max; ++l) {
            const int k = l - j;
            if (std::abs(k) > bra.m_max) continue;
            acc += Vector(bra.components.col(k + bra.m_max)).dot(block * ket.components.col(l + ket.m_max));
        }
    }
    return acc;
}

Complex coupling_matrix_element(const FloquetState& bra, const FloquetState& ket, const Matrix& hqq_static) {
    FourierBlocks blocks;
    blocks.dim = int(hqq_static.rows());
    blocks.insert(0, hqq_static);
    return coupling_matrix_element(bra, ket, blocks);
}

bool parity_selection(int parity_i, int parity_j, int n) {
    if (std::abs(parity_i) != 1 || std::abs(parity_j) != 1)
        throw std::invalid_argument("parity_selection: parities must be +1 or -1");
    const int shifted = n % 2 == 0 ? parity_i : -parity_i;
    return shifted == parity_j;
}

std::vector<bool> corridor_mask(const std::vector<double>& mu_grid, double omega, int denom, double tolerance) {
    std::vector<bool> mask;
    mask.reserve(mu_grid.size());
    for (const double mu : mu_grid) {
        const double gap = degeneracy_deviation(mu, omega, denom).deviation * omega;
        mask.push_back(gap < 2.0 * tolerance);
    }
    return mask;
}

// ------------------------------------------------------------ crossing scans

namespace {

struct TrackedSolve {
    FloquetSpectrum spectrum;       // reduced basis
    FloquetSpectrum full;           // expanded to the register
    std::vector<int> order;         // tracked slot -> spectrum state index
};

SubspaceBasis scan_subspace(const QubitSystem& system, const CrossingScanOptions& options) {
    if (options.use_symmetric_subspace && system.identical_parameters())
        return symmetric_dicke_basis(system.n_qubits);
    return full_basis(system.n_qubits);
}

std::vector<int> match_order(const std::vector<FloquetState>& refs, const FloquetSpectrum& spec) {
    return assign_by_overlap(refs, spec.states);
}

}  // namespace

CrossingScanResult crossing_scan(const std::function<QubitSystem(double)>& system_at, double x_lo, double x_hi,
                                 int n_points, const CrossingScanOptions& options) {
    if (n_points < 3) throw std::invalid_argument("crossing_scan: need at least 3 scan points");
    if (!(x_hi > x_lo)) throw std::invalid_argument("crossing_scan: empty scan range");

    const QubitSystem probe_lo = system_at(x_lo);
    const QubitSystem probe_hi = system_at(x_hi);
    const double omega = probe_lo.omega();
    const SubspaceBasis subspace = scan_subspace(probe_lo, options);

    SolveOptions solve = options.solve;
    if (!solve.m_max) {
        const double f_total = std::max(probe_lo.drive_amplitude_total(), probe_hi.drive_amplitude_total());
        solve.m_max = truncation_rule(f_total, omega, solve.margin);
    }

    auto solve_at = [&](double x) {
        TrackedSolve out;
        out.spectrum = solve_system(system_at(x), subspace, solve);
        out.full = subspace.kind == SubspaceBasis::Kind::full ? out.spectrum : expand_to_full(out.spectrum, subspace);
        return out;
    };

    const int d = subspace.dim();
    CrossingScanResult result;
    std::vector<FloquetState> tracked_refs;

    for (int p = 0; p < n_points; ++p) {
        const double x = x_lo + (x_hi - x_lo) * p / (n_points - 1);
        TrackedSolve cur = solve_at(x);
        if (p == 0) {
            cur.order.resize(size_t(d));
            for (int i = 0; i < d; ++i) cur.order[size_t(i)] = i;
        } else {
            cur.order = match_order(tracked_refs, cur.spectrum);
        }
        tracked_refs.clear();
        for (int slot = 0; slot < d; ++slot) tracked_refs.push_back(cur.spectrum.states[size_t(cur.order[size_t(slot)])]);

        ScanPoint pt;
        pt.x = x;
        for (int slot = 0; slot < d; ++slot) {
            const int idx = cur.order[size_t(slot)];
            pt.quasi_energies.push_back(cur.spectrum.states[size_t(idx)].quasi_energy);
            pt.entanglement.push_back(time_averaged_entanglement(cur.full, idx, options.measure, options.n_samples).mean);
        }
        result.points.push_back(std::move(pt));
    }

    // tracked pair: explicit, or the minimum circular gap at the scan midpoint
    if (options.pair) {
        result.pair_a = options.pair->first;
        result.pair_b = options.pair->second;
    } else {
        const ScanPoint& mid = result.points[size_t(n_points / 2)];
        double best = std::numeric_limits<double>::max();
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                const double gap = zone_distance(mid.quasi_energies[size_t(a)], mid.quasi_energies[size_t(b)], omega);
                if (gap < best) {
                    best = gap;
                    result.pair_a = a;
                    result.pair_b = b;
                }
            }
        }
    }

    for (auto& pt : result.points)
        pt.pair_gap = zone_distance(pt.quasi_energies[size_t(result.pair_a)],
                                    pt.quasi_energies[size_t(result.pair_b)], omega);

    int imin = 0;
    for (int p = 1; p < n_points; ++p)
        if (result.points[size_t(p)].pair_gap < result.points[size_t(imin)].pair_gap) imin = p;
    if (imin == 0 || imin == n_points - 1)
        throw std::runtime_error("crossing_scan: no gap minimum inside the scan range");

    // entanglement peak over the tracked pair
    result.peak_entanglement = -1.0;
    for (const auto& pt : result.points) {
        for (int slot : {result.pair_a, result.pair_b}) {
            if (pt.entanglement[size_t(slot)] > result.peak_entanglement) {
                result.peak_entanglement = pt.entanglement[size_t(slot)];
                result.x_peak = pt.x;
            }
        }
    }

    // golden-section refinement of the pair gap around the discrete minimum
    const TrackedSolve center_solve = solve_at(result.points[size_t(imin)].x);
    const auto center_order = match_order(tracked_refs, center_solve.spectrum);
    const FloquetState ref_a = center_solve.spectrum.states[size_t(center_order[size_t(result.pair_a)])];
    const FloquetState ref_b = center_solve.spectrum.states[size_t(center_order[size_t(result.pair_b)])];

    // the hybridized pair spans {ref_a, ref_b}; rank states by their projection
    // onto that span (robust through 50/50 mixing at the crossing center)
    auto span_pair = [&](const FloquetSpectrum& spec) {
        std::vector<std::pair<double, int>> scored;
        for (int i = 0; i < d; ++i) {
            const double w = std::norm(stack_inner(ref_a, spec.states[size_t(i)])) +
                             std::norm(stack_inner(ref_b, spec.states[size_t(i)]));
            scored.push_back({w, i});
        }
        std::sort(scored.begin(), scored.end(), std::greater<>());
        return std::make_pair(scored[0].second, scored[1].second);
    };

    auto pair_gap_at = [&](double x) {
        const TrackedSolve s = solve_at(x);
        const auto [ia, ib] = span_pair(s.spectrum);
        return zone_distance(s.spectrum.states[size_t(ia)].quasi_energy, s.spectrum.states[size_t(ib)].quasi_energy,
                             omega);
    };

    double lo = result.points[size_t(imin - 1)].x;
    double hi = result.points[size_t(imin + 1)].x;
    if (options.refine) {
        const double inv_phi = 0.6180339887498949;
        double c = hi - inv_phi * (hi - lo);
        double e = lo + inv_phi * (hi - lo);
        double fc = pair_gap_at(c), fe = pair_gap_at(e);
        const double x_tol = options.refine_rel_tol * (x_hi - x_lo);
        while (hi - lo > x_tol) {
            if (fc < fe) {
                hi = e;
                e = c;
                fe = fc;
                c = hi - inv_phi * (hi - lo);
                fc = pair_gap_at(c);
            } else {
                lo = c;
                c = e;
                fc = fe;
                e = lo + inv_phi * (hi - lo);
                fe = pair_gap_at(e);
            }
        }
        result.x_min_gap = 0.5 * (lo + hi);
        result.min_gap = pair_gap_at(result.x_min_gap);
    } else {
        result.x_min_gap = result.points[size_t(imin)].x;
        result.min_gap = result.points[size_t(imin)].pair_gap;
    }

    // first-order matrix element and hybridization balance at the located center
    const QubitSystem center_sys = system_at(result.x_min_gap);
    const TrackedSolve hybrid = solve_at(result.x_min_gap);
    const auto [ia, ib] = span_pair(hybrid.spectrum);

    // unperturbed references from the single-qubit problem at the center
    std::vector<FloquetSpectrum> singles;
    SolveOptions single_solve;
    single_solve.margin = solve.margin + 4;
    for (int n = 0; n < center_sys.n_qubits; ++n) {
        QubitSystem one;
        one.n_qubits = 1;
        one.omega0 = center_sys.splitting(n);
        one.drive = center_sys.drive;
        one.drive_weights = {center_sys.drive_weight(n)};
        singles.push_back(solve_system(one, full_basis(1), single_solve));
    }
    std::vector<FloquetState> unperturbed =
        center_sys.identical_parameters()
            ? noninteracting_symmetric_states(singles[0], center_sys.n_qubits)
            : noninteracting_product_states(singles, omega);

    // the hybridized pair peaks exactly at the crossing center
    for (const int idx : {ia, ib}) {
        const double ent = time_averaged_entanglement(hybrid.full, idx, options.measure, options.n_samples).mean;
        if (ent > result.peak_entanglement) {
            result.peak_entanglement = ent;
            result.x_peak = result.x_min_gap;
        }
    }

    const FloquetState hyb_a = hybrid.full.states[size_t(ia)];
    const FloquetState hyb_b = hybrid.full.states[size_t(ib)];
    int ua = 0, ub = 1;
    double best_w = -1.0;
    for (size_t u = 0; u < unperturbed.size(); ++u) {
        for (size_t v = u + 1; v < unperturbed.size(); ++v) {
            const double w = std::norm(stack_inner(unperturbed[u], hyb_a)) +
                             std::norm(stack_inner(unperturbed[v], hyb_a)) +
                             std::norm(stack_inner(unperturbed[u], hyb_b)) +
                             std::norm(stack_inner(unperturbed[v], hyb_b));
            if (w > best_w) {
                best_w = w;
                ua = int(u);
                ub = int(v);
            }
        }
    }
    result.c_ij = coupling_matrix_element(unperturbed[size_t(ua)], unperturbed[size_t(ub)],
                                          center_sys.coupling_hamiltonian());
    result.balance[0] = std::norm(stack_inner(unperturbed[size_t(ua)], hyb_a));
    result.balance[1] = std::norm(stack_inner(unperturbed[size_t(ub)], hyb_a));
    return result;
}

}  // namespace floqent
