// models.hpp — The four worked examples: a two-level system watched by a third
// level, a four-level chain with a watchdog on the far end, two Lambda atoms in
// a lossy cavity (decoherence-free subspace), and decay protection of a level
// coupled to a continuum. Includes their analytic oracles and decay-rate fits.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/spaces.hpp"
#include "zeno/zeno_core.hpp"

namespace zeno::models {

using num::Complex;
using num::Index;
using num::Matrix;
using num::Vector;

// ------------------------------ ModelInstance -----------------------------------

// A concrete model: system Hamiltonian, measurement operator, and the default
// strength `coupling` that multiplies meas_H in H_K = system_H + K meas_H.
struct ModelInstance {
    std::string name;
    Matrix system_H;
    Matrix meas_H;
    Vector initial_state;
    spaces::SpaceSpec space;
    std::map<std::string, double> parameters;
    double coupling{0.0};

    Index dim() const { return system_H.rows(); }

    Matrix total_hamiltonian() const { return system_H + coupling * meas_H; }
    Matrix total_hamiltonian(double K) const { return system_H + K * meas_H; }

    bool meas_is_hermitian() const { return num::is_hermitian(meas_H); }
};

// ------------------------------ Three-level model --------------------------------

// Two levels |1>,|2> driven at Omega; |2> is watched through a Rabi coupling K
// to the apparatus level |3>:
//   H = Omega (|1><2| + h.c.),   H_meas = |2><3| + h.c.
inline ModelInstance three_level(double omega, double K) {
    ModelInstance m;
    m.name = "three-level";
    m.system_H = omega * spaces::coupling(3, 0, 1);
    m.meas_H = spaces::coupling(3, 1, 2);
    m.initial_state = spaces::basis_vector(3, 0);
    m.space = spaces::SpaceSpec({{"level", 3}});
    m.parameters = {{"omega", omega}, {"K", K}};
    m.coupling = K;
    return m;
}

// Closed-form survival of |1> under the three-level model:
//   p(t) = [K^2 + Omega^2 cos(K1 t)]^2 / K1^4,  K1 = sqrt(K^2 + Omega^2).
// For Omega = K = 0 the state is stationary and p = 1.
inline double survival_analytic(double omega, double K, double t) {
    const double k1sq = K * K + omega * omega;
    if (k1sq == 0.0) return 1.0;
    const double num = K * K + omega * omega * std::cos(std::sqrt(k1sq) * t);
    return (num * num) / (k1sq * k1sq);
}

// ------------------------------ Four-level model ---------------------------------

// Chain |1> -Omega- |2> -K- |3> -K'- |4>; level |4> watches whether |3> is
// populated. H = Omega tau(1,2) + K tau(2,3), H_meas = tau(3,4), strength K'.
inline ModelInstance four_level(double omega, double K, double K_prime) {
    ModelInstance m;
    m.name = "four-level";
    m.system_H = omega * spaces::coupling(4, 0, 1) + K * spaces::coupling(4, 1, 2);
    m.meas_H = spaces::coupling(4, 2, 3);
    m.initial_state = spaces::basis_vector(4, 0);
    m.space = spaces::SpaceSpec({{"level", 4}});
    m.parameters = {{"omega", omega}, {"K", K}, {"K_prime", K_prime}};
    m.coupling = K_prime;
    return m;
}

// ------------------------------ Lambda-cavity model ------------------------------

// Two three-level Lambda atoms (levels 0,1 ground, 2 excited) coupled to one
// lossy cavity mode resonant with the 1-2 transition:
//   H_meas = i g sum_i [ b |2>_i<1| - h.c. ] - i kappa b^dagger b
// Basis order: photon number slowest, then atom 1, then atom 2.
inline ModelInstance lambda_cavity(double g, double kappa, int n_max) {
    if (g <= 0.0 || kappa <= 0.0)
        throw std::invalid_argument("lambda_cavity: g and kappa must be > 0");
    if (n_max < 2)
        throw std::invalid_argument("lambda_cavity: n_max must be >= 2");

    ModelInstance m;
    m.name = "cavity";
    m.space = spaces::SpaceSpec({{"photon", n_max + 1}, {"atom1", 3}, {"atom2", 3}});

    const Matrix b = spaces::annihilator(n_max);
    const Matrix raise_atom = spaces::transition(3, 2, 1);  // |2><1|
    const Matrix B = spaces::embed(b, m.space, "photon");
    const Matrix X = B * (spaces::embed(raise_atom, m.space, "atom1") +
                          spaces::embed(raise_atom, m.space, "atom2"));
    m.meas_H = Complex(0.0, g) * (X - X.adjoint()) -
               Complex(0.0, kappa) * (B.adjoint() * B);
    m.system_H = Matrix::Zero(m.space.total_dim(), m.space.total_dim());
    m.initial_state = spaces::basis_vector(m.space.total_dim(), 0);  // |000>
    m.parameters = {{"g", g}, {"kappa", kappa}, {"n_max", static_cast<double>(n_max)}};
    m.coupling = 1.0;
    return m;
}

// Orthonormal basis of the eta = 0 eigenspace of meas_H (the decoherence-free
// subspace of the dissipative cavity), as matrix columns.
inline Matrix dark_space(const ModelInstance& m, double abs_tol = 1e-9) {
    return num::null_space(m.meas_H, abs_tol);
}

// ------------------------------ Decay-protection model ---------------------------

// Spontaneous emission |1> -> |2> into a flat continuum (width 2/(tau_Z^2 gamma)
// folded into a non-Hermitian level shift), with |2> Rabi-coupled to |3> at K:
//   H = ( 0        1/tau_Z            0 )
//       ( 1/tau_Z  -2i/(tau_Z^2 g)    K )
//       ( 0        K                  0 )
// All rates in units of 1/tau_Z; lost norm is the decay probability and is
// reported, never renormalized.
inline ModelInstance decay_model(double tau_Z, double gamma, double K) {
    if (tau_Z <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("decay_model: tau_Z and gamma must be > 0");
    if (K < 0.0) throw std::invalid_argument("decay_model: K must be >= 0");

    ModelInstance m;
    m.name = "decay";
    m.system_H = (1.0 / tau_Z) * spaces::coupling(3, 0, 1);
    m.system_H(1, 1) = Complex(0.0, -2.0 / (tau_Z * tau_Z * gamma));
    m.meas_H = spaces::coupling(3, 1, 2);
    m.initial_state = spaces::basis_vector(3, 0);
    m.space = spaces::SpaceSpec({{"level", 3}});
    m.parameters = {{"tau_Z", tau_Z}, {"gamma", gamma}, {"K", K}};
    m.coupling = K;
    return m;
}

// ------------------------------ Decay-rate fit -----------------------------------

struct DecayFit {
    double gamma_eff{0.0};  // -slope of ln(survival) over the window
    double t_start{0.0};
    double t_end{0.0};
    double residual{0.0};   // RMS residual of the linear fit in ln space
};

// Least-squares exponential fit of the survival column over [t_start, t_end]
inline DecayFit fit_decay(const core::Trajectory& traj, double t_start, double t_end) {
    if (traj.survival.size() != traj.times.size() || traj.times.empty())
        throw std::invalid_argument("fit_decay: trajectory has no survival data");

    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        if (t < t_start || t > t_end) continue;
        if (traj.survival[k] <= 0.0)
            throw std::invalid_argument("fit_decay: nonpositive survival in window");
        ts.push_back(t);
        ys.push_back(std::log(traj.survival[k]));
    }
    if (ts.size() < 3)
        throw std::invalid_argument("fit_decay: window covers fewer than 3 samples");

    const double n = static_cast<double>(ts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sx += ts[k]; sy += ys[k]; sxx += ts[k] * ts[k]; sxy += ts[k] * ys[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;

    double ss = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double r = ys[k] - (slope * ts[k] + intercept);
        ss += r * r;
    }
    return DecayFit{-slope, t_start, t_end, std::sqrt(ss / n)};
}

// Default window [5, 50]/gamma_hat (first estimate from the endpoint decay),
// clipped to the trajectory and skipping the short-time quadratic region; falls
// back to the second half of the run when the estimate gives no usable window.
inline DecayFit fit_decay(const core::Trajectory& traj) {
    if (traj.survival.size() != traj.times.size() || traj.times.size() < 3)
        throw std::invalid_argument("fit_decay: trajectory has no survival data");
    const double T = traj.times.back();
    const double p_end = traj.survival.back();
    const double p_0 = traj.survival.front();

    double t0 = 0.5 * T, t1 = T;
    if (p_end > 0.0 && p_0 > 0.0 && p_end < p_0) {
        const double gamma_hat = -std::log(p_end / p_0) / T;
        const double w0 = 5.0 / gamma_hat, w1 = 50.0 / gamma_hat;
        if (w0 < T) {
            t0 = w0;
            t1 = std::min(w1, T);
        }
    }
    // need >= 3 samples inside; widen to the fallback window otherwise
    std::size_t inside = 0;
    for (double t : traj.times) inside += (t >= t0 && t <= t1);
    if (inside < 3) { t0 = 0.5 * T; t1 = T; }
    return fit_decay(traj, t0, t1);
}

}  // namespace zeno::models
