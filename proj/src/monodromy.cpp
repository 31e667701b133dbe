#include "floqent/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace floqent {

namespace {

Matrix hermitian_exp(const Matrix& h, double scale) {
    // exp(-i h scale) via spectral decomposition
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_exp: eigensolve failed");
    const Eigen::VectorXd ev = es.eigenvalues();
    Vector phases(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::exp(-kI * ev(i) * scale);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct EigDecomp {
    std::vector<double> mus;            // folded eigenphase / T
    std::vector<Vector> vecs;
};

EigDecomp decompose(const Matrix& u, double omega) {
    const double period = kTwoPi / omega;
    Eigen::ComplexEigenSolver<Matrix> es(u);
    if (es.info() != Eigen::Success) throw std::runtime_error("monodromy: propagator eigensolve failed");
    EigDecomp out;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        out.mus.push_back(fold_to_zone(-std::arg(es.eigenvalues()(i)) / period, omega));
        Vector v = es.eigenvectors().col(i);
        v /= v.norm();
        out.vecs.push_back(std::move(v));
    }
    return out;
}

FloquetSpectrum assemble_spectrum(const Matrix& u, double omega, const MonodromyOptions& options,
                                  double convergence) {
    const int d = int(u.rows());
    EigDecomp dec = decompose(u, omega);

    FloquetSpectrum spec;
    spec.backend = Backend::monodromy;
    spec.omega = omega;
    spec.dim = d;
    spec.m_max = 0;
    spec.unitarity_defect = (u.adjoint() * u - Matrix::Identity(d, d)).norm();
    spec.convergence = convergence;

    for (int i = 0; i < d; ++i) {
        FloquetState s;
        s.m_max = 0;
        s.quasi_energy = dec.mus[size_t(i)];
        s.components = dec.vecs[size_t(i)];
        s.residual = (u * dec.vecs[size_t(i)] -
                      std::exp(-kI * dec.mus[size_t(i)] * kTwoPi / omega) * dec.vecs[size_t(i)])
                         .norm();
        spec.states.push_back(std::move(s));
    }
    std::stable_sort(spec.states.begin(), spec.states.end(),
                     [](const FloquetState& a, const FloquetState& b) { return a.quasi_energy < b.quasi_energy; });

    // resolve degenerate eigenphase groups the same way the Fourier backend does
    const double dtol = 1e-10 * omega;
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < d; ++i) {
        if (!groups.empty() && zone_distance(spec.states[size_t(i)].quasi_energy,
                                             spec.states[size_t(groups.back().back())].quasi_energy, omega) <= dtol)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    for (const auto& g : groups) {
        if (g.size() < 2) continue;
        std::vector<FloquetState> group;
        for (int i : g) group.push_back(spec.states[size_t(i)]);
        std::vector<std::vector<int>> clusters{std::vector<int>()};
        for (size_t i = 0; i < group.size(); ++i) clusters[0].push_back(int(i));
        for (const auto& op : options.symmetry_ops) {
            std::vector<std::vector<int>> next;
            for (const auto& cl : clusters) {
                if (cl.size() < 2) {
                    next.push_back(cl);
                    continue;
                }
                std::vector<FloquetState> sub;
                for (int i : cl) sub.push_back(group[size_t(i)]);
                Matrix gram(int(sub.size()), int(sub.size()));
                for (size_t a = 0; a < sub.size(); ++a)
                    for (size_t b = 0; b < sub.size(); ++b)
                        gram(int(a), int(b)) = Vector(sub[a].components.col(0)).dot(op * sub[b].components.col(0));
                Eigen::ComplexEigenSolver<Matrix> ses(gram);
                std::vector<int> order(sub.size());
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](int x, int y) {
                    const Complex ex = ses.eigenvalues()(x), ey = ses.eigenvalues()(y);
                    if (std::abs(ex.real() - ey.real()) > 1e-6) return ex.real() > ey.real();
                    return ex.imag() > ey.imag();
                });
                std::vector<FloquetState> rot(sub.size(), sub[0]);
                for (size_t a = 0; a < sub.size(); ++a) {
                    Vector acc = Vector::Zero(sub[0].components.rows());
                    for (size_t b = 0; b < sub.size(); ++b)
                        acc += ses.eigenvectors()(int(b), order[a]) * Vector(sub[b].components.col(0));
                    if (acc.norm() > 0.0) acc /= acc.norm();
                    rot[a].components = acc;
                }
                // sub-cluster by symmetry eigenvalue
                std::vector<std::vector<int>> split;
                for (size_t a = 0; a < sub.size(); ++a) {
                    const Complex ev = ses.eigenvalues()(order[a]);
                    if (!split.empty() &&
                        std::abs(ev - ses.eigenvalues()(order[size_t(split.back().front())])) < 1e-6)
                        split.back().push_back(int(a));
                    else
                        split.push_back({int(a)});
                }
                for (size_t a = 0; a < sub.size(); ++a) group[size_t(cl[a])] = rot[a];
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
            // plain Gram-Schmidt on the t=0 vectors
            for (size_t i = 0; i < cl.size(); ++i) {
                Vector v = group[size_t(cl[i])].components.col(0);
                for (size_t j = 0; j < i; ++j) {
                    const Vector w = group[size_t(cl[j])].components.col(0);
                    v -= w.dot(v) * w;
                }
                if (v.norm() > 0.0) v /= v.norm();
                group[size_t(cl[i])].components = v;
            }
        }
        for (size_t i = 0; i < g.size(); ++i) spec.states[size_t(g[i])] = group[i];
    }

    for (auto& s : spec.states) {
        Eigen::Index imax = 0;
        Vector(s.components.col(0)).cwiseAbs().maxCoeff(&imax);
        const Complex amp = s.components(imax, 0);
        if (std::abs(amp) > 0.0) s.components *= std::conj(amp) / std::abs(amp);
    }
    return spec;
}

}  // namespace

Matrix monodromy_propagator(const std::function<Matrix(double)>& h_of_t, double omega, int steps) {
    if (steps < 1) throw std::invalid_argument("monodromy_propagator: steps must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("monodromy_propagator: omega must be positive");
    const double period = kTwoPi / omega;
    const double dt = period / steps;
    const Eigen::Index d = h_of_t(0.0).rows();
    Matrix u = Matrix::Identity(d, d);
    for (int i = 0; i < steps; ++i) {
        const double tm = (i + 0.5) * dt;
        u = hermitian_exp(h_of_t(tm), dt) * u;
    }
    return u;
}

FloquetSpectrum monodromy_solve(const std::function<Matrix(double)>& h_of_t, double omega,
                                const MonodromyOptions& options) {
    int steps = std::max(options.steps, 2);
    if (options.state_samples > 0)
        steps = ((steps + options.state_samples - 1) / options.state_samples) * options.state_samples;

    const double period = kTwoPi / omega;
    const double dt2 = period / (2 * steps);
    const Eigen::Index d = h_of_t(0.0).rows();

    // coarse pass
    const Matrix u1 = monodromy_propagator(h_of_t, omega, steps);

    // fine pass, collecting the optional propagator table along the way
    Matrix u2 = Matrix::Identity(d, d);
    std::vector<double> sample_times;
    std::vector<Matrix> sample_props;
    const int stride = options.state_samples > 0 ? (2 * steps) / options.state_samples : 0;
    for (int i = 0; i < 2 * steps; ++i) {
        if (stride > 0 && i % stride == 0) {
            sample_times.push_back(i * dt2);
            sample_props.push_back(u2);
        }
        const double tm = (i + 0.5) * dt2;
        u2 = hermitian_exp(h_of_t(tm), dt2) * u2;
    }

    EigDecomp c = decompose(u1, omega);
    EigDecomp f = decompose(u2, omega);

    // pair coarse eigenpairs with fine ones by eigenvector overlap
    std::vector<bool> used(c.mus.size(), false);
    double drift = 0.0;
    std::vector<double> extrapolated(f.mus.size());
    for (size_t i = 0; i < f.mus.size(); ++i) {
        size_t best = 0;
        double ov = -1.0;
        for (size_t j = 0; j < c.mus.size(); ++j) {
            if (used[j]) continue;
            const double o = std::abs(f.vecs[i].dot(c.vecs[j]));
            if (o > ov) {
                ov = o;
                best = j;
            }
        }
        used[best] = true;
        const double delta = fold_to_zone(c.mus[best] - f.mus[i], omega);
        drift = std::max(drift, std::abs(delta));
        extrapolated[i] = fold_to_zone(f.mus[i] - delta / 3.0, omega);
    }
    if (drift > options.tolerance * omega)
        throw std::runtime_error("monodromy_solve: quasi-energies moved by " + std::to_string(drift) +
                                 " under step doubling; stepper not converged");

    FloquetSpectrum spec = assemble_spectrum(u2, omega, options, drift);
    // swap in the Richardson-extrapolated quasi-energies (match by eigenvector)
    for (auto& s : spec.states) {
        size_t best = 0;
        double ov = -1.0;
        for (size_t i = 0; i < f.vecs.size(); ++i) {
            const double o = std::abs(f.vecs[i].dot(Vector(s.components.col(0))));
            if (o > ov) {
                ov = o;
                best = i;
            }
        }
        // degenerate clusters share the phase, so unmatched mixing is harmless
        if (ov > 0.999) s.quasi_energy = extrapolated[best];
    }
    std::stable_sort(spec.states.begin(), spec.states.end(),
                     [](const FloquetState& a, const FloquetState& b) { return a.quasi_energy < b.quasi_energy; });
    spec.sample_times = std::move(sample_times);
    spec.sample_props = std::move(sample_props);
    return spec;
}

FloquetSpectrum monodromy_kicked(const Matrix& h_static, const Matrix& kick_generator, double omega,
                                 const MonodromyOptions& options) {
    if (!is_hermitian(h_static) || !is_hermitian(kick_generator))
        throw std::invalid_argument("monodromy_kicked: generators must be Hermitian");
    const double period = kTwoPi / omega;
    const Matrix kick = hermitian_exp(kick_generator, 1.0);
    const Matrix u = hermitian_exp(h_static, period) * kick;
    FloquetSpectrum spec = assemble_spectrum(u, omega, options, 0.0);
    if (options.state_samples > 0) {
        for (int j = 0; j < options.state_samples; ++j) {
            const double t = j * period / options.state_samples;
            spec.sample_times.push_back(t);
            spec.sample_props.push_back(hermitian_exp(h_static, t) * kick);
        }
    }
    return spec;
}

FloquetSpectrum spectrum_from_propagator(const Matrix& u_period, double omega, const MonodromyOptions& options) {
    return assemble_spectrum(u_period, omega, options, 0.0);
}

}  // namespace floqent
