#include "floqent/floquet.hpp"

#include "floqent/monodromy.hpp"
#include "floqent/system.hpp"
#include "oracle_propagator.hpp"

#include <doctest.h>

#include <random>

using namespace floqent;

namespace {

QubitSystem one_qubit(double omega0, double F, double omega = 1.0) {
    return make_uniform_system(1, omega0, PeriodicDrive::monochromatic(F, omega));
}

FourierBlocks random_hermitian_blocks(std::mt19937& rng, int dim, int max_j) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto rand_matrix = [&] {
        Matrix m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = Complex(uni(rng), uni(rng));
        return m;
    };
    FourierBlocks blocks;
    blocks.dim = dim;
    Matrix h0 = rand_matrix();
    blocks.insert(0, (h0 + Matrix(h0.adjoint())) / 2.0);
    for (int j = 1; j <= max_j; ++j) {
        const Matrix hj = rand_matrix();
        blocks.insert(j, hj);
        blocks.insert(-j, hj.adjoint());
    }
    return blocks;
}

}  // namespace

TEST_CASE("fold_to_zone half-open convention") {
    CHECK(fold_to_zone(0.55, 1.0) == doctest::Approx(-0.45).epsilon(1e-14));
    CHECK(fold_to_zone(-0.5, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fold_to_zone(0.5, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fold_to_zone(3.2, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(fold_to_zone(0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(fold_to_zone(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("truncation_rule") {
    CHECK(truncation_rule(0.0, 1.0, 4) == 4);
    CHECK(truncation_rule(2.0, 1.0, 4) == 8);
    CHECK(truncation_rule(0.9, 1.0, 4) == 6);  // ceil
    CHECK_THROWS_AS(truncation_rule(-1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("fourier_components of stock drives") {
    SUBCASE("monochromatic") {
        const auto blocks = fourier_components(one_qubit(1.0, 0.5));
        CHECK((blocks.at(0) - 0.5 * pauli_z()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((blocks.at(1) - 0.25 * pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((blocks.at(-1) - 0.25 * pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(blocks.blocks.size() == 3);
    }
    SUBCASE("undriven keeps only the static block") {
        const auto blocks = fourier_components(one_qubit(0.7, 0.0));
        CHECK(blocks.blocks.size() == 1);
        CHECK(blocks.has(0));
    }
    SUBCASE("bichromatic F = F' = omega") {
        const auto blocks =
            fourier_components(make_uniform_system(1, 0.3, PeriodicDrive::bichromatic(1.0, 1.0, 1.0)));
        CHECK((blocks.at(1) - 0.5 * pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((blocks.at(2) - 0.5 * pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("delta kicks are rejected") {
        CHECK_THROWS_AS(fourier_components(make_uniform_system(1, 1.0, PeriodicDrive::delta_kick(0.3, 1.0))),
                        std::invalid_argument);
    }
}

TEST_CASE("build_floquet_matrix structure") {
    SUBCASE("undriven diagonal carries +-omega0/2 + k omega") {
        const auto blocks = fourier_components(one_qubit(0.6, 0.0));
        const auto fm = build_floquet_matrix(blocks, 1, 1.0);
        CHECK(fm.size() == 6);
        std::vector<double> expect = {0.3 - 1.0, -0.3 - 1.0, 0.3, -0.3, 0.3 + 1.0, -0.3 + 1.0};
        for (int i = 0; i < 6; ++i) CHECK(fm.assembled(i, i).real() == doctest::Approx(expect[size_t(i)]));
        const Matrix off = fm.assembled - Matrix(fm.assembled.diagonal().asDiagonal());
        CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("monochromatic drive gives a block-tridiagonal matrix") {
        const auto blocks = fourier_components(one_qubit(1.0, 0.8));
        const auto fm = build_floquet_matrix(blocks, 3, 1.0);
        for (int r = 0; r < fm.n_blocks(); ++r)
            for (int c = 0; c < fm.n_blocks(); ++c) {
                const double norm = fm.assembled.block(2 * r, 2 * c, 2, 2).cwiseAbs().maxCoeff();
                if (std::abs(r - c) > 1) CHECK(norm == 0.0);
                if (std::abs(r - c) == 1) CHECK(norm > 0.0);
            }
    }
    SUBCASE("assembled matrix is Hermitian for random valid blocks") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 5; ++trial) {
            const auto blocks = random_hermitian_blocks(rng, 3, 2);
            const auto fm = build_floquet_matrix(blocks, 4, 1.3);
            CHECK(is_hermitian(fm.assembled));
        }
    }
    SUBCASE("non-Hermitian input blocks are rejected") {
        FourierBlocks bad;
        bad.dim = 2;
        bad.insert(0, pauli_z());
        bad.insert(1, pauli_x());
        bad.insert(-1, 2.0 * pauli_x());  // breaks the conjugate pairing
        CHECK_THROWS_AS(build_floquet_matrix(bad, 2, 1.0), std::invalid_argument);
    }
}

TEST_CASE("diagonalize_floquet on trivial systems") {
    SUBCASE("undriven splitting") {
        const auto fm = build_floquet_matrix(fourier_components(one_qubit(0.6, 0.0)), 2, 1.0);
        const auto spec = diagonalize_floquet(fm);
        REQUIRE(spec.states.size() == 2);
        CHECK(spec.states[0].quasi_energy == doctest::Approx(-0.3).epsilon(1e-12));
        CHECK(spec.states[1].quasi_energy == doctest::Approx(0.3).epsilon(1e-12));
        // states are |down> and |up> confined to the k = 0 component
        const Vector down = spec.states[0].at_zero();
        CHECK(std::abs(down(1)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(spec.states[0].component(1).norm() < 1e-12);
        CHECK(spec.max_residual() < 1e-12);
    }
    SUBCASE("zero splitting pins both quasi-energies at zero") {
        const auto fm = build_floquet_matrix(fourier_components(one_qubit(0.0, 1.5)), 8, 1.0);
        const auto spec = diagonalize_floquet(fm);
        for (const auto& s : spec.states) CHECK(std::abs(s.quasi_energy) < 1e-10);
    }
    SUBCASE("resonant weak drive folds near 0.45 omega") {
        const auto sys = one_qubit(1.0, 0.1);
        const auto fm = build_floquet_matrix(fourier_components(sys), 6, 1.0);
        const auto spec = diagonalize_floquet(fm);
        // monodromy oracle
        auto h = [&](double t) { return sys.hamiltonian_at(t); };
        const auto mus = oracle::quasi_energies(oracle::rk4_propagator(h, kTwoPi, 100000), 1.0);
        CHECK(std::abs(spec.states[0].quasi_energy - mus[0]) < 1e-8);
        CHECK(std::abs(std::abs(spec.states[1].quasi_energy) - 0.45) < 5e-3);  // RWA cross-check
    }
    SUBCASE("zone boundary: omega0 = omega, F = 0 keeps exactly d representatives") {
        const auto fm = build_floquet_matrix(fourier_components(one_qubit(1.0, 0.0)), 3, 1.0);
        const auto spec = diagonalize_floquet(fm);
        REQUIRE(spec.states.size() == 2);
        for (const auto& s : spec.states) CHECK(s.quasi_energy == doctest::Approx(-0.5).epsilon(1e-12));
    }
}

TEST_CASE("spectrum invariants on a driven two-qubit system") {
    QubitSystem sys = make_uniform_system(2, 0.8, PeriodicDrive::monochromatic(0.6, 1.0), CouplingKind::exchange,
                                          0.05);
    const auto blocks = fourier_components(sys);
    const auto fm = build_floquet_matrix(blocks, 12, 1.0);
    DiagonalizeOptions opts;
    opts.symmetry_ops.push_back({swap_qubits(0, 1, 2), false});
    const auto spec = diagonalize_floquet(fm, opts);
    REQUIRE(spec.states.size() == 4);

    SUBCASE("eigen-residuals") { CHECK(spec.max_residual() < 1e-9); }

    SUBCASE("states orthonormal at t = 0") {
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                const Complex g = Vector(spec.states[i].at_zero()).dot(spec.states[j].at_zero());
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-9);
            }
    }

    SUBCASE("stack normalization") {
        for (const auto& s : spec.states) CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("sum rule") { CHECK(std::abs(sum_rule_defect(spec, blocks.at(0))) < 1e-8); }

    SUBCASE("rest-class shift reproduces an eigenvector one zone up") {
        const auto& s = spec.states[1];
        const FloquetState up = shift_state(s, 1, 1.0);
        CHECK(eigen_residual(fm, up, s.quasi_energy + 1.0) < 1e-8);
    }

    SUBCASE("gauge: largest t = 0 amplitude is real positive") {
        for (const auto& s : spec.states) {
            const Vector psi0 = s.at_zero();
            Eigen::Index imax = 0;
            psi0.cwiseAbs().maxCoeff(&imax);
            CHECK(psi0(imax).imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(psi0(imax).real() > 0.0);
        }
    }

    SUBCASE("time evaluation stays normalized") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> uni(0.0, kTwoPi);
        for (int trial = 0; trial < 64; ++trial) {
            const Vector psi = floquet_state_at(spec, trial % 4, uni(rng));
            CHECK(std::abs(psi.norm() - 1.0) < 1e-6);
        }
    }

    SUBCASE("t = 0 evaluation is the component sum") {
        const Vector a = floquet_state_at(spec, 2, 0.0);
        const Vector b = spec.states[2].at_zero();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("traceless single qubit: mu_+ = -mu_-") {
    for (const double F : {0.2, 0.9, 2.4}) {
        const auto fm = build_floquet_matrix(fourier_components(one_qubit(0.77, F)), truncation_rule(F, 1.0, 6), 1.0);
        const auto spec = diagonalize_floquet(fm);
        CHECK(std::abs(spec.states[0].quasi_energy + spec.states[1].quasi_energy) < 1e-9);
    }
}

TEST_CASE("monodromy backend") {
    SUBCASE("undriven propagator is diagonal with the static phases") {
        const auto sys = one_qubit(0.6, 0.0);
        auto h = [&](double t) { return sys.hamiltonian_at(t); };
        const Matrix u = monodromy_propagator(h, 1.0, 128);
        CHECK(std::abs(u(0, 0) - std::exp(-kI * 0.3 * kTwoPi)) < 1e-10);
        CHECK(std::abs(u(1, 1) - std::exp(kI * 0.3 * kTwoPi)) < 1e-10);
        CHECK(std::abs(u(0, 1)) < 1e-14);

        const auto spec = solve_monodromy(sys, full_basis(1), {});
        CHECK(spec.states[1].quasi_energy == doctest::Approx(0.3).epsilon(1e-10));
        CHECK(spec.unitarity_defect < 1e-12);
    }
    SUBCASE("agrees with the Fourier backend and the RK4 oracle") {
        const auto sys = one_qubit(0.9, 1.3);
        SolveOptions opts;
        opts.margin = 8;
        const auto four = solve_fourier(sys, full_basis(1), opts);
        const auto mono = solve_monodromy(sys, full_basis(1), opts);
        CHECK(circular_set_distance(four.quasi_energies(), mono.quasi_energies(), 1.0) < 1e-8);

        auto h = [&](double t) { return sys.hamiltonian_at(t); };
        const auto oracle_mus = oracle::quasi_energies(oracle::rk4_propagator(h, kTwoPi, 100000), 1.0);
        CHECK(circular_set_distance(mono.quasi_energies(), oracle_mus, 1.0) < 1e-8);
    }
    SUBCASE("non-convergence is signaled") {
        const auto sys = one_qubit(0.9, 2.0);
        SolveOptions opts;
        opts.monodromy.steps = 4;
        opts.monodromy.tolerance = 1e-12;
        CHECK_THROWS_AS(solve_monodromy(sys, full_basis(1), opts), std::runtime_error);
    }
}

TEST_CASE("adaptive truncation settles at the rule-of-thumb order") {
    const auto sys = one_qubit(0.5, 3.0);
    SolveOptions adaptive;
    adaptive.margin = 4;
    adaptive.adaptive = true;
    adaptive.adaptive_tol = 1e-9;
    const auto spec = solve_fourier(sys, full_basis(1), adaptive);

    SolveOptions big;
    big.m_max = 40;
    const auto ref = solve_fourier(sys, full_basis(1), big);
    CHECK(circular_set_distance(spec.quasi_energies(), ref.quasi_energies(), 1.0) < 1e-9);
}

TEST_CASE("diagonalize_floquet rejects a zone with the wrong representative count") {
    const auto blocks = fourier_components(one_qubit(0.6, 0.0));
    CHECK_THROWS_AS(build_floquet_matrix(blocks, 0, 1.0), std::invalid_argument);

    FloquetMatrix fm = build_floquet_matrix(blocks, 1, 1.0);
    fm.assembled(0, 0) = 0.1;  // drag an edge eigenvalue into the central zone
    CHECK_THROWS_AS(diagonalize_floquet(fm), std::runtime_error);
}

TEST_CASE("floquet_state_at reduces time modulo the period") {
    const auto sys = one_qubit(0.8, 0.7);
    SolveOptions opts;
    opts.margin = 6;
    const auto spec = solve_fourier(sys, full_basis(1), opts);
    const Vector a = floquet_state_at(spec, 0, 0.37);
    const Vector b = floquet_state_at(spec, 0, 0.37 + kTwoPi);
    const Vector c = floquet_state_at(spec, 0, 0.37 - kTwoPi);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("circular utilities") {
    CHECK(zone_distance(0.49, -0.49, 1.0) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(circular_set_distance({0.49, 0.1}, {-0.49, 0.1}, 1.0) == doctest::Approx(0.02).epsilon(1e-10));
    CHECK_THROWS_AS(circular_set_distance({0.1}, {0.1, 0.2}, 1.0), std::invalid_argument);
}
