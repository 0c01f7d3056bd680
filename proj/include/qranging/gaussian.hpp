// gaussian.hpp — Gaussian bosonic states and the symplectic operations on them.
//
// Conventions (used throughout the library):
//   * quadratures x = a + a†, p = -i(a - a†), interleaved (x1,p1,...,xn,pn)
//   * vacuum covariance = identity; thermal state of mean N has (2N+1)·I
//   * a symplectic transform S acts as mean -> S·mean, cov -> S·cov·Sᵀ and
//     satisfies S·Ω·Sᵀ = Ω with Ω block-diagonal in [[0,1],[-1,0]]

#pragma once

#include "qranging/linalg.hpp"

#include <vector>

namespace qranging::gaussian {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Block-diagonal symplectic form, per-mode blocks [[0,1],[-1,0]].
Matrix symplectic_form(int n_modes);

class GaussianState {
public:
    // Vacuum state of n modes.
    explicit GaussianState(int n_modes);

    // Validates dimensions, symmetrizes the covariance (asymmetry beyond
    // 1e-12 is rejected) and checks physicality: every symplectic
    // eigenvalue must be >= 1 - 1e-9.
    GaussianState(Vector mean, Matrix cov);

    int n_modes() const { return n_modes_; }
    const Vector& mean() const { return mean_; }
    const Matrix& cov() const { return cov_; }

    bool has_zero_mean(double tol = 0.0) const;

private:
    int n_modes_;
    Vector mean_;
    Matrix cov_;
};

// ---------------------------------------------------------------- states ---

// Product of identical thermal states, mean photon number N per mode.
GaussianState thermal_state(double mean_photons, int n_modes = 1);

// Two-mode squeezed vacuum with N_S signal photons per arm: diagonal blocks
// (2N_S+1)·I2, off-diagonal 2·Cp·Z2 with Cp = sqrt(N_S(N_S+1)).
GaussianState tmsv(double signal_photons);

// ------------------------------------------------------------ operations ---

// Thermal-loss channel L_{kappa,N_B} on one mode: a -> sqrt(kappa)·a +
// sqrt(1-kappa)·e with e thermal of mean N_B/(1-kappa).  Covariance block
// V -> kappa·V + (2·N_B + 1 - kappa)·I2, cross blocks scaled by
// sqrt(kappa), mean scaled by sqrt(kappa).  kappa = 1 requires N_B = 0.
GaussianState apply_thermal_loss(const GaussianState& state, int mode,
                                 double kappa, double noise_photons);

// Two-mode squeezer: a_i -> sqrt(G)·a_i + sqrt(G-1)·a_j†, and the same with
// i and j swapped.  G >= 1.
GaussianState two_mode_squeeze(const GaussianState& state, int i, int j,
                               double gain);

// Beamsplitter: a_i -> sqrt(tau)·a_i + sqrt(1-tau)·a_j,
//               a_j -> -sqrt(1-tau)·a_i + sqrt(tau)·a_j.
GaussianState beamsplitter(const GaussianState& state, int i, int j,
                           double transmissivity);

// Phase shift a -> e^{-i·theta}·a, i.e. a rotation by theta in the (x,p)
// plane of one mode.
GaussianState phase_shift(const GaussianState& state, int mode, double theta);

// Drop all modes except `keep` (in the given order).
GaussianState partial_trace_keep(const GaussianState& state,
                                 const std::vector<int>& keep);

// ------------------------------------------------------------ inspection ---

// Symplectic eigenvalues: moduli of the eigenvalues of i·Ω·V, one per mode,
// sorted descending.  Values below 1 by less than 1e-9 are clipped to 1.
std::vector<double> williamson_eigenvalues(const GaussianState& state);

// Mean photon number of one mode: (Vxx + Vpp - 2)/4 + (mux² + mup²)/4.
double mean_photon(const GaussianState& state, int mode);

// Symplectic matrices of the elementary transforms, embedded in n modes.
Matrix beamsplitter_symplectic(int n_modes, int i, int j, double transmissivity);
Matrix squeezer_symplectic(int n_modes, int i, int j, double gain);
Matrix phase_symplectic(int n_modes, int mode, double theta);

}  // namespace qranging::gaussian
