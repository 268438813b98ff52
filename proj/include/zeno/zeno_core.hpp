// zeno_core.hpp — Zeno dynamics with multiple projectors: pulsed-measurement
// superoperator evolution, strong-coupling continuous measurement, the limit
// propagator exp(-i(H_diag + K H_meas)t), and the diagnostics that verify the
// superselection structure (sector probabilities, coherence, leakage,
// convergence order).

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/numkernel.hpp"

namespace zeno::core {

using num::Complex;
using num::Index;
using num::Matrix;
using num::RealVector;
using num::Vector;

// ------------------------------ ZenoPartition ----------------------------------

// Orthogonal spectral projectors {P_n} with their distinct eigenvalues eta_n,
// ordered by ascending eta. P_n P_m = delta_nm P_n and sum_n P_n = 1.
struct ZenoPartition {
    std::vector<Matrix> projectors;
    std::vector<double> eigenvalues;
    std::optional<Matrix> source;  // the H_meas the partition was derived from

    std::size_t sectors() const { return projectors.size(); }

    Index dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }

    Index sector_dim(std::size_t n) const {
        return static_cast<Index>(std::lround(projectors.at(n).trace().real()));
    }

    void validate(double tol = 1e-10) const {
        if (projectors.empty())
            throw std::runtime_error("ZenoPartition: no projectors");
        if (projectors.size() != eigenvalues.size())
            throw std::runtime_error("ZenoPartition: projector/eigenvalue count mismatch");
        const Index d = dim();
        Matrix sum = Matrix::Zero(d, d);
        for (std::size_t n = 0; n < projectors.size(); ++n) {
            const Matrix& P = projectors[n];
            if (P.rows() != d || P.cols() != d)
                throw std::runtime_error("ZenoPartition: inconsistent dimensions");
            if ((P * P - P).norm() > tol)
                throw std::runtime_error("ZenoPartition: projector not idempotent");
            for (std::size_t m = n + 1; m < projectors.size(); ++m)
                if ((P * projectors[m]).norm() > tol)
                    throw std::runtime_error("ZenoPartition: projectors not orthogonal");
            sum += P;
        }
        if ((sum - Matrix::Identity(d, d)).norm() > tol)
            throw std::runtime_error("ZenoPartition: projectors do not resolve the identity");
    }

    static ZenoPartition from_projectors(std::vector<Matrix> projectors,
                                         std::vector<double> eigenvalues,
                                         double tol = 1e-10) {
        ZenoPartition part{std::move(projectors), std::move(eigenvalues), std::nullopt};
        part.validate(tol);
        return part;
    }

    static ZenoPartition trivial(Index dim) {
        return ZenoPartition{{Matrix::Identity(dim, dim)}, {0.0}, std::nullopt};
    }
};

// One projector per eigenvalue cluster of a Hermitian H_meas:
// P_n = sum_{k in cluster n} v_k v_k^dagger, ordered by ascending eta_n.
inline ZenoPartition spectral_partition(const Matrix& H_meas, double rel_tol = 1e-8) {
    if (!num::is_hermitian(H_meas))
        throw std::invalid_argument(
            "spectral_partition: H_meas is not Hermitian; only the eta = 0 sector of a "
            "non-Hermitian operator is supported (use zero_sector_projector)");
    const num::Eigensystem es = num::hermitian_eig(H_meas);
    const num::EigenvalueClusters clusters = num::cluster_eigenvalues(es.values, rel_tol);

    ZenoPartition part;
    part.source = H_meas;
    for (std::size_t n = 0; n < clusters.groups.size(); ++n) {
        Matrix P = Matrix::Zero(H_meas.rows(), H_meas.cols());
        for (Index k : clusters.groups[n])
            P += es.vectors.col(k) * es.vectors.col(k).adjoint();
        part.projectors.push_back(std::move(P));
        part.eigenvalues.push_back(clusters.representatives[n]);
    }
    part.validate();
    return part;
}

// eta = 0 sector of a (possibly non-Hermitian) operator, via the numerical kernel
inline Matrix zero_sector_projector(const Matrix& A, double abs_tol = 1e-9) {
    const Matrix kernel = num::null_space(A, abs_tol);
    return kernel * kernel.adjoint();
}

// H_diag = sum_n P_n H P_n, the block-diagonal part of H with respect to the
// measurement eigenspaces; generates the intra-sector dynamics.
inline Matrix diag_part(const Matrix& H, const ZenoPartition& part) {
    if (H.rows() != part.dim() || H.cols() != part.dim())
        throw std::invalid_argument("diag_part: dimension mismatch");
    Matrix out = Matrix::Zero(H.rows(), H.cols());
    for (const Matrix& P : part.projectors) out += P * H * P;
    return out;
}

// ------------------------------ DensityMatrix ----------------------------------

struct DensityMatrix {
    Matrix rho;

    Index dim() const { return rho.rows(); }
    double trace_real() const { return rho.trace().real(); }

    void validate(double tol = 1e-10) const {
        if (rho.rows() != rho.cols())
            throw std::runtime_error("DensityMatrix: not square");
        if (!num::is_hermitian(rho, tol))
            throw std::runtime_error("DensityMatrix: not Hermitian");
        if (std::abs(trace_real() - 1.0) > tol)
            throw std::runtime_error("DensityMatrix: trace != 1");
        const num::Eigensystem es = num::hermitian_eig((rho + rho.adjoint()) / 2.0);
        if (es.values(0) < -tol)
            throw std::runtime_error("DensityMatrix: negative eigenvalue");
    }

    static DensityMatrix from_matrix(Matrix m, double tol = 1e-10) {
        DensityMatrix dm{std::move(m)};
        dm.validate(tol);
        return dm;
    }

    // |psi><psi| from a state vector (normalized here)
    static DensityMatrix pure(const Vector& psi) {
        const double n = psi.norm();
        if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
        const Vector u = psi / n;
        return DensityMatrix{u * u.adjoint()};
    }
};

// ------------------------------ Measurement maps --------------------------------

// Nonselective measurement superoperator P^ rho = sum_n P_n rho P_n
inline Matrix project_blocks(const Matrix& rho, const ZenoPartition& part) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& P : part.projectors) out += P * rho * P;
    return out;
}

inline DensityMatrix prepare(const DensityMatrix& rho, const ZenoPartition& part) {
    if (rho.dim() != part.dim())
        throw std::invalid_argument("prepare: dimension mismatch");
    return DensityMatrix{project_blocks(rho.rho, part)};
}

// p_n = Tr(rho P_n), ascending-eta order
inline std::vector<double> sector_probabilities(const DensityMatrix& rho,
                                                const ZenoPartition& part) {
    if (rho.dim() != part.dim())
        throw std::invalid_argument("sector_probabilities: dimension mismatch");
    std::vector<double> probs;
    probs.reserve(part.sectors());
    for (const Matrix& P : part.projectors)
        probs.push_back((rho.rho * P).trace().real());
    return probs;
}

inline std::vector<double> sector_probabilities(const Vector& psi,
                                                const ZenoPartition& part) {
    std::vector<double> probs;
    probs.reserve(part.sectors());
    for (const Matrix& P : part.projectors) probs.push_back((P * psi).squaredNorm());
    return probs;
}

// Frobenius norm of the off-block part rho - sum_n P_n rho P_n; zero iff the
// state carries no interference between sectors.
inline double coherence_norm(const DensityMatrix& rho, const ZenoPartition& part) {
    if (rho.dim() != part.dim())
        throw std::invalid_argument("coherence_norm: dimension mismatch");
    return (rho.rho - project_blocks(rho.rho, part)).norm();
}

// ------------------------------ Trajectory --------------------------------------

// Sampled diagnostics of one run. For pulsed runs the rows sit at measurement
// times; coherence_norm is recorded just before each projection (the projection
// itself zeroes it), and survival is the joint probability that every
// measurement so far found the state in its initial sector.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> sector_probs;  // ascending-eta order
    std::vector<double> survival;                   // empty unless a pure initial state is set
    std::vector<double> coherence_norm;
    std::vector<double> total_norm;                 // Tr rho, or <psi|psi>
};

// ------------------------------ Pulsed evolution --------------------------------

struct PulsedResult {
    DensityMatrix state;
    Trajectory trajectory;
};

namespace detail {

// Shared pulsed loop: prepare, then N x [evolve by t/N, project], recording at
// every measurement. If psi0 is given, the joint same-sector survival
// ||(P_n0 U)^k psi0||^2 is tracked alongside the superoperator evolution.
inline PulsedResult pulsed_run(const Matrix& H, const ZenoPartition& part,
                               const DensityMatrix& rho0, const Vector* psi0,
                               double t, int N) {
    if (N < 1) throw std::invalid_argument("pulsed_evolve: N must be >= 1");
    if (t < 0.0) throw std::invalid_argument("pulsed_evolve: t must be >= 0");
    if (H.rows() != part.dim())
        throw std::invalid_argument("pulsed_evolve: dimension mismatch");

    const Matrix U = num::expm(Complex(0.0, -1.0) * (t / N) * H);

    Matrix rho = project_blocks(rho0.rho, part);
    Vector phi;
    std::size_t home = 0;
    if (psi0) {
        const Vector psi_n = *psi0 / psi0->norm();
        const auto probs = sector_probabilities(psi_n, part);
        home = static_cast<std::size_t>(
            std::max_element(probs.begin(), probs.end()) - probs.begin());
        phi = part.projectors[home] * psi_n;
    }

    Trajectory traj;
    auto record = [&](double time, const Matrix& state, double coherence) {
        traj.times.push_back(time);
        traj.sector_probs.push_back(sector_probabilities(DensityMatrix{state}, part));
        if (psi0) traj.survival.push_back(phi.squaredNorm());
        traj.coherence_norm.push_back(coherence);
        traj.total_norm.push_back(state.trace().real());
    };
    record(0.0, rho, 0.0);

    for (int k = 1; k <= N; ++k) {
        const Matrix evolved = U * rho * U.adjoint();
        const double coherence = (evolved - project_blocks(evolved, part)).norm();
        rho = project_blocks(evolved, part);
        if (psi0) phi = part.projectors[home] * (U * phi);
        record(k * (t / N), rho, coherence);
    }
    return PulsedResult{DensityMatrix::from_matrix(std::move(rho)), std::move(traj)};
}

}  // namespace detail

inline PulsedResult pulsed_evolve(const Matrix& H, const ZenoPartition& part,
                                  const DensityMatrix& rho0, double t, int N) {
    return detail::pulsed_run(H, part, rho0, nullptr, t, N);
}

inline PulsedResult pulsed_evolve(const Matrix& H, const ZenoPartition& part,
                                  const Vector& psi0, double t, int N) {
    return detail::pulsed_run(H, part, DensityMatrix::pure(psi0), &psi0, t, N);
}

// N -> infinity limit of the pulsed evolution: each sector evolves under its own
// block of H_diag, so rho(t) = e^{-i H_diag t} (P^ rho0) e^{+i H_diag t}.
inline DensityMatrix pulsed_limit(const Matrix& H, const ZenoPartition& part,
                                  const DensityMatrix& rho0, double t) {
    const Matrix U = num::expm(Complex(0.0, -1.0) * t * diag_part(H, part));
    const Matrix prepared = project_blocks(rho0.rho, part);
    return DensityMatrix{U * prepared * U.adjoint()};
}

// ------------------------------ Continuous measurement --------------------------

// U_K(t) = exp(-i (H + K H_meas) t)
inline Matrix continuous_propagator(const Matrix& H, const Matrix& H_meas,
                                    double K, double t) {
    if (H.rows() != H_meas.rows() || H.cols() != H_meas.cols())
        throw std::invalid_argument("continuous_propagator: dimension mismatch");
    if (K < 0.0) throw std::invalid_argument("continuous_propagator: K must be >= 0");
    return num::expm(Complex(0.0, -1.0) * t * (H + K * H_meas));
}

inline Vector continuous_evolve(const Matrix& H, const Matrix& H_meas, double K,
                                double t, const Vector& psi0) {
    return continuous_propagator(H, H_meas, K, t) * psi0;
}

inline DensityMatrix continuous_evolve(const Matrix& H, const Matrix& H_meas, double K,
                                       double t, const DensityMatrix& rho0) {
    const Matrix U = continuous_propagator(H, H_meas, K, t);
    return DensityMatrix{U * rho0.rho * U.adjoint()};
}

// K -> infinity limit propagator U(t) = exp(-i (H_diag + K H_meas) t), which
// commutes with every P_n of the H_meas partition.
inline Matrix zeno_limit_propagator(const Matrix& H, const Matrix& H_meas,
                                    double K, double t,
                                    double rel_tol = 1e-8) {
    const ZenoPartition part = spectral_partition(H_meas, rel_tol);
    const Matrix H_diag = diag_part(H, part);
    return num::expm(Complex(0.0, -1.0) * t * (H_diag + K * H_meas));
}

// ------------------------------ Trajectories ------------------------------------

namespace detail {

inline Trajectory sampled_trajectory(const Matrix& G, const Vector& psi0,
                                     double t_max, int samples,
                                     const ZenoPartition* part) {
    if (samples < 2) throw std::invalid_argument("trajectory: samples must be >= 2");
    if (t_max <= 0.0) throw std::invalid_argument("trajectory: t_max must be > 0");
    num::require_finite(G, "trajectory");

    // Spectral path when the generator is Hermitian, per-sample Pade otherwise
    const bool hermitian = num::is_hermitian(G);
    std::optional<num::Eigensystem> es;
    if (hermitian) es = num::hermitian_eig(G);

    const Vector psi_n = psi0 / psi0.norm();
    Trajectory traj;
    for (int j = 0; j < samples; ++j) {
        const double t = t_max * j / (samples - 1);
        const Matrix U = hermitian ? num::propagator(*es, t)
                                   : num::expm_pade(Complex(0.0, -1.0) * t * G);
        const Vector psi = U * psi_n;
        traj.times.push_back(t);
        traj.survival.push_back(std::norm(psi_n.dot(psi)));
        traj.total_norm.push_back(psi.squaredNorm());
        if (part) {
            traj.sector_probs.push_back(sector_probabilities(psi, *part));
            const Matrix rho = psi * psi.adjoint();
            traj.coherence_norm.push_back((rho - project_blocks(rho, *part)).norm());
        } else {
            traj.coherence_norm.push_back(0.0);
        }
    }
    return traj;
}

}  // namespace detail

// Pure-state trajectory under H + K H_meas; survival is |<psi0|psi(t)>|^2 and
// total_norm tracks <psi|psi> (decays for non-Hermitian generators).
inline Trajectory continuous_trajectory(const Matrix& H, const Matrix& H_meas,
                                        double K, const Vector& psi0, double t_max,
                                        int samples,
                                        const ZenoPartition* part = nullptr) {
    if (K < 0.0) throw std::invalid_argument("continuous_trajectory: K must be >= 0");
    const Matrix G = H + K * H_meas;
    return detail::sampled_trajectory(G, psi0, t_max, samples, part);
}

// Trajectory under the limit generator H_diag + K H_meas
inline Trajectory limit_trajectory(const Matrix& H, const Matrix& H_meas, double K,
                                   const Vector& psi0, double t_max, int samples,
                                   double rel_tol = 1e-8) {
    const ZenoPartition part = spectral_partition(H_meas, rel_tol);
    const Matrix G = diag_part(H, part) + K * H_meas;
    return detail::sampled_trajectory(G, psi0, t_max, samples, &part);
}

// ------------------------------ Leakage -----------------------------------------

// Maximum probability found outside the initial sector over a time grid.
// psi0 must lie in a single sector.
inline double leakage(const Matrix& H, const Matrix& H_meas, double K,
                      const std::vector<double>& t_grid, const Vector& psi0,
                      const ZenoPartition& part) {
    const Vector psi_n = psi0 / psi0.norm();
    const auto probs = sector_probabilities(psi_n, part);
    const std::size_t home = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (probs[home] < 1.0 - 1e-10)
        throw std::invalid_argument("leakage: psi0 is not confined to one sector");

    const Matrix G = H + K * H_meas;
    const bool hermitian = num::is_hermitian(G);
    std::optional<num::Eigensystem> es;
    if (hermitian) es = num::hermitian_eig(G);

    double worst = 0.0;
    for (double t : t_grid) {
        const Matrix U = hermitian ? num::propagator(*es, t)
                                   : num::expm_pade(Complex(0.0, -1.0) * t * G);
        const Vector psi = U * psi_n;
        worst = std::max(worst, 1.0 - (part.projectors[home] * psi).squaredNorm());
    }
    return worst;
}

// ------------------------------ Convergence scans --------------------------------

struct ConvergenceReport {
    std::string parameter_name;            // "K" or "N"
    std::vector<double> parameter_values;  // ascending
    std::vector<double> errors;
    double fitted_order{0.0};   // least-squares slope of ln(error) vs ln(parameter)
    double fit_residual{0.0};   // RMS residual of that fit, in ln space
};

// Least-squares power-law fit; refuses fewer than 4 points.
inline ConvergenceReport fit_power_law(std::string parameter_name,
                                       std::vector<double> parameter_values,
                                       std::vector<double> errors) {
    const std::size_t n = parameter_values.size();
    if (n < 4) throw std::invalid_argument("fit_power_law: need at least 4 points");
    if (errors.size() != n)
        throw std::invalid_argument("fit_power_law: value/error size mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        if (parameter_values[k] <= 0.0 || errors[k] <= 0.0)
            throw std::invalid_argument("fit_power_law: values and errors must be > 0");
        if (k > 0 && parameter_values[k] <= parameter_values[k - 1])
            throw std::invalid_argument("fit_power_law: parameter values must be ascending");
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = std::log(parameter_values[k]);
        const double y = std::log(errors[k]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::log(errors[k]) -
                         (slope * std::log(parameter_values[k]) + intercept);
        ss += r * r;
    }

    ConvergenceReport rep;
    rep.parameter_name = std::move(parameter_name);
    rep.parameter_values = std::move(parameter_values);
    rep.errors = std::move(errors);
    rep.fitted_order = slope;
    rep.fit_residual = std::sqrt(ss / n);
    return rep;
}

// Error of U_K against the limit propagator at coupling K, taken as the maximum
// over sampled times s in (0, t] of op_norm(U_K(s) U_lim(s)^dagger - 1). The sup
// over the horizon removes the oscillating phase of the pointwise difference and
// exposes the clean 1/K adiabatic rate.
inline double coupling_limit_error(const Matrix& H, const Matrix& H_meas, double K,
                                   double t, int samples = 200,
                                   double rel_tol = 1e-8) {
    if (samples < 1) throw std::invalid_argument("coupling_limit_error: samples >= 1");
    num::require_hermitian(H, "coupling_limit_error");
    const ZenoPartition part = spectral_partition(H_meas, rel_tol);
    const num::Eigensystem es_full = num::hermitian_eig(H + K * H_meas);
    const num::Eigensystem es_lim =
        num::hermitian_eig(diag_part(H, part) + K * H_meas);
    const Matrix I = Matrix::Identity(H.rows(), H.cols());

    double worst = 0.0;
    for (int j = 1; j <= samples; ++j) {
        const double s = t * j / samples;
        const Matrix M = num::propagator(es_full, s) *
                             num::propagator(es_lim, s).adjoint() - I;
        worst = std::max(worst, num::op_norm(M));
    }
    return worst;
}

inline ConvergenceReport coupling_convergence_scan(const Matrix& H, const Matrix& H_meas,
                                                   std::vector<double> couplings,
                                                   double t, int samples = 200) {
    std::vector<double> errors;
    errors.reserve(couplings.size());
    for (double K : couplings)
        errors.push_back(coupling_limit_error(H, H_meas, K, t, samples));
    return fit_power_law("K", std::move(couplings), std::move(errors));
}

// Pulsed convergence toward the N -> infinity limit, in Frobenius norm on states
inline ConvergenceReport pulsed_convergence_scan(const Matrix& H, const ZenoPartition& part,
                                                 const DensityMatrix& rho0, double t,
                                                 std::vector<int> steps) {
    const DensityMatrix limit = pulsed_limit(H, part, rho0, t);
    std::vector<double> values, errors;
    values.reserve(steps.size());
    errors.reserve(steps.size());
    for (int N : steps) {
        values.push_back(static_cast<double>(N));
        const PulsedResult res = pulsed_evolve(H, part, rho0, t, N);
        errors.push_back((res.state.rho - limit.rho).norm());
    }
    return fit_power_law("N", std::move(values), std::move(errors));
}

}  // namespace zeno::core
