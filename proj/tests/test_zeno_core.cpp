#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_support.hpp"
#include "zeno/spaces.hpp"
#include "zeno/zeno_core.hpp"

using namespace zeno;
using core::DensityMatrix;
using core::ZenoPartition;
using num::Complex;
using num::Matrix;
using num::Vector;
using test_support::dist;

namespace {
const Complex I1(0.0, 1.0);

Matrix tau1_3() { return spaces::coupling(3, 1, 2); }
Matrix sigma1_3() { return spaces::coupling(3, 0, 1); }

// two-level system watched through its own level populations
ZenoPartition level_partition_2() {
    Matrix n = Matrix::Zero(2, 2);
    n(1, 1) = 1.0;
    return core::spectral_partition(n);
}
}  // namespace

// ------------------------------ spectral_partition -------------------------------

TEST_CASE("spectral_partition: the three eigenspaces of tau1") {
    const auto part = core::spectral_partition(tau1_3());
    REQUIRE(part.sectors() == 3);
    CHECK(std::abs(part.eigenvalues[0] + 1.0) < 1e-12);
    CHECK(std::abs(part.eigenvalues[1]) < 1e-12);
    CHECK(std::abs(part.eigenvalues[2] - 1.0) < 1e-12);

    Matrix P0 = Matrix::Zero(3, 3);
    P0(0, 0) = 1.0;
    CHECK(dist(part.projectors[1], P0) < 1e-12);

    Vector plus(3), minus(3);
    plus << 0.0, 1.0, 1.0;
    minus << 0.0, 1.0, -1.0;
    plus /= std::sqrt(2.0);
    minus /= std::sqrt(2.0);
    CHECK(dist(part.projectors[2], plus * plus.adjoint()) < 1e-12);
    CHECK(dist(part.projectors[0], minus * minus.adjoint()) < 1e-12);
}

TEST_CASE("spectral_partition: identity collapses to one sector") {
    const auto part = core::spectral_partition(Matrix::Identity(4, 4));
    REQUIRE(part.sectors() == 1);
    CHECK(dist(part.projectors[0], Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("spectral_partition: watchdog coupling of the four-level chain") {
    const Matrix tau34 = spaces::coupling(4, 2, 3);
    const auto part = core::spectral_partition(tau34);
    REQUIRE(part.sectors() == 3);
    // eta = 0 sector spans levels |1>, |2>
    Matrix P0 = Matrix::Zero(4, 4);
    P0(0, 0) = P0(1, 1) = 1.0;
    CHECK(dist(part.projectors[1], P0) < 1e-12);
    CHECK(part.sector_dim(1) == 2);
    CHECK(part.sector_dim(0) == 1);
    CHECK(part.sector_dim(2) == 1);
}

TEST_CASE("spectral_partition: non-Hermitian input is rejected toward the kernel path") {
    Matrix A = Matrix::Zero(2, 2);
    A(0, 1) = 1.0;
    CHECK_THROWS_WITH(core::spectral_partition(A),
                      Catch::Matchers::ContainsSubstring("zero_sector_projector"));
}

TEST_CASE("spectral_partition: invariants hold on random Hermitian operators") {
    auto gen = test_support::make_rng(515);
    for (int trial = 0; trial < 50; ++trial) {
        const num::Index n = 2 + static_cast<num::Index>(gen() % 11);
        const auto part = core::spectral_partition(test_support::random_hermitian(gen, n));
        CHECK_NOTHROW(part.validate(1e-10));
    }
}

TEST_CASE("spectral_partition: engineered degeneracies become multidimensional sectors") {
    auto gen = test_support::make_rng(616);
    const auto basis = num::hermitian_eig(test_support::random_hermitian(gen, 5)).vectors;
    num::RealVector spec(5);
    spec << -2.0, -2.0, 0.5, 0.5, 0.5;
    const Matrix H = basis * spec.asDiagonal().toDenseMatrix().cast<Complex>() * basis.adjoint();
    const auto part = core::spectral_partition((H + H.adjoint()) / 2.0);
    REQUIRE(part.sectors() == 2);
    CHECK(part.sector_dim(0) == 2);
    CHECK(part.sector_dim(1) == 3);
}

// ------------------------------ diag_part ----------------------------------------

TEST_CASE("diag_part: the three-level drive has no diagonal part") {
    const auto part = core::spectral_partition(tau1_3());
    CHECK(core::diag_part(sigma1_3(), part).norm() < 1e-12);
}

TEST_CASE("diag_part: the watchdog kills the K coupling, restoring the Omega drive") {
    const double omega = 1.0, K = 20.0;
    const Matrix H = omega * spaces::coupling(4, 0, 1) + K * spaces::coupling(4, 1, 2);
    const auto part = core::spectral_partition(spaces::coupling(4, 2, 3));
    CHECK(dist(core::diag_part(H, part), omega * spaces::coupling(4, 0, 1)) < 1e-12);
}

TEST_CASE("diag_part: block-diagonal operators are fixed points") {
    auto gen = test_support::make_rng(717);
    const auto part = core::spectral_partition(test_support::random_hermitian(gen, 6));
    const Matrix H = test_support::random_hermitian(gen, 6);
    const Matrix D = core::diag_part(H, part);
    CHECK(dist(core::diag_part(D, part), D) < 1e-12);
    for (std::size_t m = 0; m < part.sectors(); ++m)
        for (std::size_t n = 0; n < part.sectors(); ++n)
            if (m != n)
                CHECK((part.projectors[m] * D * part.projectors[n]).norm() < 1e-12);
    CHECK_THROWS_AS(core::diag_part(Matrix::Identity(5, 5), part), std::invalid_argument);
}

// ------------------------------ prepare and diagnostics ---------------------------

TEST_CASE("prepare: block-diagonal states are unchanged, coherences are removed") {
    const auto part = level_partition_2();
    Vector plus(2);
    plus << 1.0, 1.0;
    const auto rho_plus = DensityMatrix::pure(plus);

    const auto prepared = core::prepare(rho_plus, part);
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = expected(1, 1) = 0.5;
    CHECK(dist(prepared.rho, expected) < 1e-14);
    CHECK(core::coherence_norm(prepared, part) < 1e-12);

    const auto again = core::prepare(prepared, part);
    CHECK(dist(again.rho, prepared.rho) < 1e-14);
}

TEST_CASE("prepare: idempotent, trace preserving, and positive on random states") {
    auto gen = test_support::make_rng(818);
    for (int trial = 0; trial < 40; ++trial) {
        const num::Index n = 2 + static_cast<num::Index>(gen() % 11);
        const auto part = core::spectral_partition(test_support::random_hermitian(gen, n));
        const DensityMatrix rho{test_support::random_density(gen, n)};
        const auto prepared = core::prepare(rho, part);
        CHECK(std::abs(prepared.trace_real() - rho.trace_real()) < 1e-12);
        CHECK(dist(core::prepare(prepared, part).rho, prepared.rho) < 1e-12);
        CHECK(core::coherence_norm(prepared, part) < 1e-12);
        const auto es = num::hermitian_eig((prepared.rho + prepared.rho.adjoint()) / 2.0);
        CHECK(es.values(0) > -1e-10);
    }
}

TEST_CASE("sector_probabilities: three-level populations by eigenvalue") {
    const auto part = core::spectral_partition(tau1_3());  // etas -1, 0, +1

    const auto p1 = core::sector_probabilities(
        DensityMatrix::pure(spaces::basis_vector(3, 0)), part);
    CHECK(std::abs(p1[1] - 1.0) < 1e-12);  // |1> lives in the eta = 0 sector
    CHECK(std::abs(p1[0]) < 1e-12);
    CHECK(std::abs(p1[2]) < 1e-12);

    const auto mixed = core::sector_probabilities(
        DensityMatrix{Matrix::Identity(3, 3) / 3.0}, part);
    for (double p : mixed) CHECK(std::abs(p - 1.0 / 3.0) < 1e-12);

    const auto p2 = core::sector_probabilities(
        DensityMatrix::pure(spaces::basis_vector(3, 1)), part);
    CHECK(std::abs(p2[0] - 0.5) < 1e-12);
    CHECK(std::abs(p2[1]) < 1e-12);
    CHECK(std::abs(p2[2] - 0.5) < 1e-12);
    CHECK(std::abs(p2[0] + p2[1] + p2[2] - 1.0) < 1e-10);
}

TEST_CASE("coherence_norm: equal superposition across two one-dim sectors") {
    Vector plus(2);
    plus << 1.0, 1.0;
    const auto rho = DensityMatrix::pure(plus);
    CHECK(std::abs(core::coherence_norm(rho, level_partition_2()) - 1.0 / std::sqrt(2.0)) <
          1e-12);
}

// ------------------------------ pulsed evolution ----------------------------------

TEST_CASE("pulsed_evolve: two-level survival composes to cos^2N(Omega t / N)") {
    const Matrix H = spaces::coupling(2, 0, 1);  // Omega = 1
    const auto part = level_partition_2();
    const Vector psi0 = spaces::basis_vector(2, 0);
    const double t = 1.0;

    for (int N : {1, 4, 64, 1024}) {
        const auto res = core::pulsed_evolve(H, part, psi0, t, N);
        const double expected = std::pow(std::cos(t / N), 2 * N);
        REQUIRE(res.trajectory.survival.size() == static_cast<std::size_t>(N) + 1);
        CHECK(std::abs(res.trajectory.survival.back() - expected) < 1e-10);
    }
}

TEST_CASE("pulsed_evolve: quarter-period rotation is fully transferred at N = 1") {
    const Matrix H = spaces::coupling(2, 0, 1);
    const auto res = core::pulsed_evolve(H, level_partition_2(),
                                         spaces::basis_vector(2, 0), M_PI / 2.0, 1);
    CHECK(res.trajectory.survival.back() < 1e-20);
}

TEST_CASE("pulsed_evolve: superoperator populations follow the two-level Markov chain") {
    // with sum-over-paths evolution the end population is (1 + cos^N(2 theta)) / 2
    const Matrix H = spaces::coupling(2, 0, 1);
    const auto part = level_partition_2();
    const Vector psi0 = spaces::basis_vector(2, 0);
    const double t = 1.0;
    for (int N : {1, 2, 4, 16}) {
        const auto res = core::pulsed_evolve(H, part, psi0, t, N);
        const double theta = t / N;
        const double expected = 0.5 * (1.0 + std::pow(std::cos(2.0 * theta), N));
        CHECK(std::abs(res.state.rho(0, 0).real() - expected) < 1e-12);
    }
}

TEST_CASE("pulsed_evolve: t = 0 reduces to preparation") {
    auto gen = test_support::make_rng(919);
    const auto part = core::spectral_partition(test_support::random_hermitian(gen, 4));
    const DensityMatrix rho0{test_support::random_density(gen, 4)};
    const auto res = core::pulsed_evolve(test_support::random_hermitian(gen, 4), part,
                                         rho0, 0.0, 8);
    CHECK(dist(res.state.rho, core::prepare(rho0, part).rho) < 1e-12);
}

TEST_CASE("pulsed_evolve: trivial partition gives free unitary evolution") {
    auto gen = test_support::make_rng(920);
    const Matrix H = test_support::random_hermitian(gen, 4);
    const DensityMatrix rho0{test_support::random_density(gen, 4)};
    const double t = 0.7;
    const auto res = core::pulsed_evolve(H, ZenoPartition::trivial(4), rho0, t, 16);
    const Matrix U = num::propagator(H, t);
    CHECK(dist(res.state.rho, U * rho0.rho * U.adjoint()) < 1e-12);
}

TEST_CASE("pulsed_evolve: argument validation") {
    const Matrix H = spaces::coupling(2, 0, 1);
    const auto part = level_partition_2();
    const DensityMatrix rho0 = DensityMatrix::pure(spaces::basis_vector(2, 0));
    CHECK_THROWS_AS(core::pulsed_evolve(H, part, rho0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(core::pulsed_evolve(H, part, rho0, -1.0, 4), std::invalid_argument);
}

TEST_CASE("pulsed trajectory: coherence is recorded before each projection and shrinks with N") {
    const Matrix H = sigma1_3() + tau1_3();  // three-level model at Omega = K = 1
    const auto part = core::spectral_partition(tau1_3());
    const Vector psi0 = spaces::basis_vector(3, 0);
    auto max_coherence = [&](int N) {
        const auto res = core::pulsed_evolve(H, part, psi0, 1.0, N);
        double mx = 0.0;
        for (double c : res.trajectory.coherence_norm) mx = std::max(mx, c);
        return mx;
    };
    const double c64 = max_coherence(64);
    const double c1024 = max_coherence(1024);
    CHECK(c1024 < c64);
    CHECK(c64 > 1e-4);  // genuinely nonzero before the projections
}

// ------------------------------ pulsed limit --------------------------------------

TEST_CASE("pulsed_limit: one-dimensional sectors freeze (original Zeno effect)") {
    // partition {|1>} + {|2>,|3>}: survival of |1> stays exactly 1
    Matrix n1 = Matrix::Zero(3, 3);
    n1(1, 1) = n1(2, 2) = 1.0;
    const auto part = core::spectral_partition(n1);
    const auto rho0 = DensityMatrix::pure(spaces::basis_vector(3, 0));
    for (double t : {0.3, 1.0, 10.0}) {
        const auto rho = core::pulsed_limit(sigma1_3(), part, rho0, t);
        CHECK(dist(rho.rho, rho0.rho) < 1e-12);
    }
}

TEST_CASE("pulsed_limit: t = 0 is preparation; sector probabilities conserved") {
    auto gen = test_support::make_rng(121);
    const auto part = core::spectral_partition(test_support::random_hermitian(gen, 5));
    const Matrix H = test_support::random_hermitian(gen, 5);
    const DensityMatrix rho0{test_support::random_density(gen, 5)};

    CHECK(dist(core::pulsed_limit(H, part, rho0, 0.0).rho,
               core::prepare(rho0, part).rho) < 1e-12);

    const auto p0 = core::sector_probabilities(core::prepare(rho0, part), part);
    for (double t : {0.5, 2.0, 20.0}) {
        const auto pt = core::sector_probabilities(core::pulsed_limit(H, part, rho0, t), part);
        for (std::size_t n = 0; n < pt.size(); ++n) CHECK(std::abs(pt[n] - p0[n]) < 1e-10);
    }
}

TEST_CASE("pulsed_evolve converges to pulsed_limit at order 1/N") {
    const Matrix H = sigma1_3() + tau1_3();
    Matrix n1 = Matrix::Zero(3, 3);
    n1(1, 1) = n1(2, 2) = 1.0;
    const auto part = core::spectral_partition(n1);
    Vector psi0(3);
    psi0 << 1.0, 1.0, 0.0;
    const auto rho0 = DensityMatrix::pure(psi0);

    const auto rep = core::pulsed_convergence_scan(H, part, rho0, 1.0, {64, 256, 1024, 4096});
    CHECK(rep.fitted_order > -1.3);
    CHECK(rep.fitted_order < -0.7);
    CHECK(rep.errors.back() < 1e-4);
    for (std::size_t k = 1; k < rep.errors.size(); ++k)
        CHECK(rep.errors[k] < rep.errors[k - 1]);
}

// ------------------------------ continuous measurement ----------------------------

TEST_CASE("continuous_propagator: K = 0 decouples the apparatus") {
    const Matrix H = sigma1_3();
    CHECK(dist(core::continuous_propagator(H, tau1_3(), 0.0, 0.8),
               num::propagator(H, 0.8)) < 1e-12);
}

TEST_CASE("continuous_propagator: unitary for Hermitian inputs, rejects bad arguments") {
    auto gen = test_support::make_rng(222);
    const Matrix H = test_support::random_hermitian(gen, 5);
    const Matrix Hm = test_support::random_hermitian(gen, 5);
    const Matrix U = core::continuous_propagator(H, Hm, 7.0, 1.3);
    CHECK(dist(U.adjoint() * U, Matrix::Identity(5, 5)) < 1e-10);
    CHECK_THROWS_AS(core::continuous_propagator(H, Matrix::Identity(4, 4), 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::continuous_propagator(H, Hm, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("zeno_limit_propagator: three-level survival is exactly one") {
    // H_diag = 0, so U(t) = exp(-i K tau1 t) and |1> is stationary
    for (double K : {4.0, 64.0}) {
        const Matrix U = core::zeno_limit_propagator(sigma1_3(), tau1_3(), K, 1.7);
        CHECK(dist(U, num::propagator(K * tau1_3(), 1.7)) < 1e-12);
        CHECK(std::abs(std::abs(U(0, 0)) - 1.0) < 1e-12);
    }
}

TEST_CASE("zeno_limit_propagator: restored Rabi oscillations in the four-level chain") {
    const double omega = 1.0;
    const Matrix H = omega * spaces::coupling(4, 0, 1) + 20.0 * spaces::coupling(4, 1, 2);
    const Matrix Hm = spaces::coupling(4, 2, 3);
    for (double t : {0.2, 0.9, 2.5}) {
        const Matrix U = core::zeno_limit_propagator(H, Hm, 400.0, t);
        const double pop = std::norm(U(0, 0));
        CHECK(std::abs(pop - std::cos(omega * t) * std::cos(omega * t)) < 1e-12);
    }
}

TEST_CASE("zeno_limit_propagator: t = 0 is the identity and U commutes with every sector") {
    const Matrix H = sigma1_3();
    const Matrix Hm = tau1_3();
    CHECK(dist(core::zeno_limit_propagator(H, Hm, 9.0, 0.0), Matrix::Identity(3, 3)) < 1e-12);

    const auto part = core::spectral_partition(Hm);
    for (double t : {0.1, 1.0, 10.0}) {
        const Matrix U = core::zeno_limit_propagator(H, Hm, 9.0, t);
        for (const Matrix& P : part.projectors)
            CHECK((U * P - P * U).norm() < 1e-10);
    }
}

TEST_CASE("continuous_evolve: density-matrix conjugation matches the propagator") {
    auto gen = test_support::make_rng(525);
    const Matrix H = test_support::random_hermitian(gen, 4);
    const Matrix Hm = test_support::random_hermitian(gen, 4);
    const DensityMatrix rho0{test_support::random_density(gen, 4)};
    const Matrix U = core::continuous_propagator(H, Hm, 3.0, 0.6);
    const auto rho = core::continuous_evolve(H, Hm, 3.0, 0.6, rho0);
    CHECK(dist(rho.rho, U * rho0.rho * U.adjoint()) < 1e-13);
    CHECK_NOTHROW(rho.validate());
}

TEST_CASE("continuous_trajectory: ascending times and conserved norm for Hermitian runs") {
    const auto part = core::spectral_partition(tau1_3());
    const auto traj = core::continuous_trajectory(sigma1_3(), tau1_3(), 4.0,
                                                  spaces::basis_vector(3, 0), 5.0, 50, &part);
    REQUIRE(traj.times.size() == 50);
    for (std::size_t j = 1; j < traj.times.size(); ++j)
        CHECK(traj.times[j] > traj.times[j - 1]);
    for (double n : traj.total_norm) CHECK(std::abs(n - 1.0) < 1e-9);
    for (const auto& row : traj.sector_probs) {
        double sum = 0.0;
        for (double p : row) sum += p;
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(core::continuous_trajectory(sigma1_3(), tau1_3(), 4.0,
                                                spaces::basis_vector(3, 0), 5.0, 1),
                    std::invalid_argument);
}

// ------------------------------ leakage -------------------------------------------

TEST_CASE("leakage: full Rabi transfer without measurement, none in the strong limit") {
    std::vector<double> grid;
    for (int j = 0; j <= 100; ++j) grid.push_back(j * M_PI / 100.0);
    const auto part = core::spectral_partition(tau1_3());
    const Vector psi0 = spaces::basis_vector(3, 0);

    CHECK(core::leakage(sigma1_3(), tau1_3(), 0.0, grid, psi0, part) > 1.0 - 1e-12);
    CHECK(core::leakage(sigma1_3(), tau1_3(), 1000.0, grid, psi0, part) < 1e-5);
}

TEST_CASE("leakage: stationary states never leak; spread states are rejected") {
    // commuting H and H_meas: |1> is an eigenvector of H_K and sector-pure
    Matrix H = Matrix::Zero(3, 3);
    H.diagonal() << 1.0, 2.0, 3.0;
    Matrix Hm = Matrix::Zero(3, 3);
    Hm.diagonal() << 0.0, 1.0, 1.0;
    const auto part = core::spectral_partition(Hm);
    const std::vector<double> grid{0.5, 1.0, 2.0};
    CHECK(core::leakage(H, Hm, 5.0, grid, spaces::basis_vector(3, 0), part) < 1e-12);

    Vector spread(3);
    spread << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(core::leakage(H, Hm, 5.0, grid, spread, part), std::invalid_argument);
}

// ------------------------------ convergence scans ---------------------------------

TEST_CASE("fit_power_law: exact power laws and flat lines") {
    std::vector<double> xs{8.0, 16.0, 32.0, 64.0, 128.0};
    std::vector<double> flat(5, 0.37);
    auto rep = core::fit_power_law("K", xs, flat);
    CHECK(std::abs(rep.fitted_order) < 1e-12);
    CHECK(rep.fit_residual < 1e-12);

    std::vector<double> quad;
    for (double x : xs) quad.push_back(3.0 / (x * x));
    rep = core::fit_power_law("K", xs, quad);
    CHECK(std::abs(rep.fitted_order + 2.0) < 1e-12);
}

TEST_CASE("fit_power_law: refuses short or unsorted input") {
    CHECK_THROWS_AS(core::fit_power_law("K", {1, 2, 4}, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(core::fit_power_law("K", {1, 4, 2, 8}, {1, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(core::fit_power_law("K", {1, 2, 4, 8}, {1, 1, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("coupling scan: three-level errors halve per doubling of K") {
    const auto rep = core::coupling_convergence_scan(
        sigma1_3(), tau1_3(), {8.0, 16.0, 32.0, 64.0, 128.0}, 1.0);
    CHECK(rep.fitted_order > -1.2);
    CHECK(rep.fitted_order < -0.8);
    CHECK(rep.fit_residual < 0.1);
    for (std::size_t k = 1; k < rep.errors.size(); ++k) {
        const double ratio = rep.errors[k] / rep.errors[k - 1];
        CHECK(ratio > 0.35);
        CHECK(ratio < 0.65);
    }
}

TEST_CASE("coupling scan: four-level errors halve per doubling of the watchdog") {
    const Matrix H = spaces::coupling(4, 0, 1) + 4.0 * spaces::coupling(4, 1, 2);
    const auto rep = core::coupling_convergence_scan(
        H, spaces::coupling(4, 2, 3), {8.0, 16.0, 32.0, 64.0, 128.0}, 1.0);
    CHECK(rep.fitted_order > -1.2);
    CHECK(rep.fitted_order < -0.8);
    CHECK(rep.fit_residual < 0.1);
    for (std::size_t k = 1; k < rep.errors.size(); ++k) {
        const double ratio = rep.errors[k] / rep.errors[k - 1];
        CHECK(ratio > 0.35);
        CHECK(ratio < 0.65);
    }
}

// ------------------------------ interaction picture --------------------------------

TEST_CASE("interaction picture: conjugated propagator matches stepwise integration") {
    // i dU/dt = K Hm^I(t) U with Hm^I(t) = e^{iHt} Hm e^{-iHt}; midpoint product
    // formula vs e^{iHt} U_K(t)
    const double omega = 1.0, K = 4.0, t = 1.0;
    const Matrix H = omega * sigma1_3();
    const Matrix Hm = tau1_3();

    const Matrix direct = num::propagator(H, -t) * core::continuous_propagator(H, Hm, K, t);

    const int steps = 50000;
    const double dt = t / steps;
    const auto es = num::hermitian_eig(H);
    const Matrix W = num::propagator(Hm, K * dt);  // exp(-i K Hm dt)
    Matrix U = Matrix::Identity(3, 3);
    for (int k = 0; k < steps; ++k) {
        const double tk = (k + 0.5) * dt;
        const Matrix E = num::propagator(es, -tk);  // e^{+i H tk}
        U = E * W * E.adjoint() * U;
    }
    CHECK(dist(U, direct) < 1e-8);
}

// ------------------------------ value types ---------------------------------------

TEST_CASE("DensityMatrix: validation catches bad states") {
    auto gen = test_support::make_rng(323);
    CHECK_NOTHROW(DensityMatrix{test_support::random_density(gen, 6)}.validate());

    CHECK_THROWS_AS(DensityMatrix::from_matrix(2.0 * test_support::random_density(gen, 3)),
                    std::runtime_error);

    Matrix not_herm(2, 2);
    not_herm << 0.5, 0.5, 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(not_herm), std::runtime_error);

    Matrix indefinite = Matrix::Zero(2, 2);
    indefinite.diagonal() << 1.5, -0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(indefinite), std::runtime_error);
}

TEST_CASE("ZenoPartition: from_projectors validates the resolution of the identity") {
    Matrix P0 = Matrix::Zero(2, 2), P1 = Matrix::Zero(2, 2);
    P0(0, 0) = 1.0;
    P1(1, 1) = 1.0;
    CHECK_NOTHROW(ZenoPartition::from_projectors({P0, P1}, {0.0, 1.0}));
    CHECK_THROWS_AS(ZenoPartition::from_projectors({P0, P0}, {0.0, 1.0}),
                    std::runtime_error);
    CHECK_THROWS_AS(ZenoPartition::from_projectors({P0}, {0.0}), std::runtime_error);
}
