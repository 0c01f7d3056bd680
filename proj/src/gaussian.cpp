#include "qranging/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qranging::gaussian {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalityTol = 1e-9;

void check_mode(const GaussianState& state, int mode, const char* who) {
    if (mode < 0 || mode >= state.n_modes())
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}

// Applies a symplectic transform supported on modes i (and optionally j < 0
// for single-mode) given as per-mode 2x2 blocks.
GaussianState apply_symplectic(const GaussianState& state, const Matrix& s) {
    return GaussianState(s * state.mean(), s * state.cov() * s.transpose());
}

}  // namespace

Matrix symplectic_form(int n_modes) {
    if (n_modes <= 0) throw std::invalid_argument("symplectic_form: n_modes must be positive");
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState::GaussianState(int n_modes)
    : n_modes_(n_modes),
      mean_(Vector::Zero(2 * n_modes)),
      cov_(Matrix::Identity(2 * n_modes, 2 * n_modes)) {
    if (n_modes <= 0) throw std::invalid_argument("GaussianState: n_modes must be positive");
}

GaussianState::GaussianState(Vector mean, Matrix cov)
    : n_modes_(static_cast<int>(mean.size()) / 2), mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() < 2 || mean_.size() % 2 != 0)
        throw std::invalid_argument("GaussianState: mean must have even length >= 2");
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size())
        throw std::invalid_argument("GaussianState: covariance dimension mismatch");
    const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol)
        throw std::invalid_argument("GaussianState: covariance asymmetric beyond 1e-12");
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();

    // Physicality: moduli of the eigenvalues of Ω·V are the symplectic
    // eigenvalues (they come in ± pairs).
    Eigen::EigenSolver<Matrix> solver(symplectic_form(n_modes_) * cov_, false);
    const double nu_min = solver.eigenvalues().cwiseAbs().minCoeff();
    if (nu_min < 1.0 - kPhysicalityTol)
        throw std::invalid_argument("GaussianState: unphysical covariance (symplectic eigenvalue " +
                                    std::to_string(nu_min) + " < 1)");
}

bool GaussianState::has_zero_mean(double tol) const {
    return mean_.cwiseAbs().maxCoeff() <= tol;
}

GaussianState thermal_state(double mean_photons, int n_modes) {
    if (mean_photons < 0.0) throw std::invalid_argument("thermal_state: negative mean photon number");
    if (n_modes <= 0) throw std::invalid_argument("thermal_state: n_modes must be positive");
    return GaussianState(Vector::Zero(2 * n_modes),
                         (2.0 * mean_photons + 1.0) * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState tmsv(double signal_photons) {
    if (signal_photons < 0.0) throw std::invalid_argument("tmsv: negative signal photon number");
    const double d = 2.0 * signal_photons + 1.0;
    const double c = 2.0 * std::sqrt(signal_photons * (signal_photons + 1.0));
    Matrix cov = d * Matrix::Identity(4, 4);
    cov(0, 2) = cov(2, 0) = c;
    cov(1, 3) = cov(3, 1) = -c;
    return GaussianState(Vector::Zero(4), cov);
}

GaussianState apply_thermal_loss(const GaussianState& state, int mode, double kappa,
                                 double noise_photons) {
    check_mode(state, mode, "apply_thermal_loss");
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("apply_thermal_loss: kappa must lie in [0,1]");
    if (noise_photons < 0.0)
        throw std::invalid_argument("apply_thermal_loss: negative noise photon number");
    if (kappa == 1.0 && noise_photons > 0.0)
        throw std::invalid_argument(
            "apply_thermal_loss: kappa = 1 with N_B > 0 has divergent environment occupancy");

    const int d = 2 * state.n_modes();
    const double root = std::sqrt(kappa);
    Vector mean = state.mean();
    Matrix cov = state.cov();
    mean.segment<2>(2 * mode) *= root;
    // Cross-correlation rows/columns scale by sqrt(kappa), hence the mode's
    // own block by kappa; the environment term is added on top.
    cov.block(2 * mode, 0, 2, d) *= root;
    cov.block(0, 2 * mode, d, 2) *= root;
    cov.block<2, 2>(2 * mode, 2 * mode) +=
        (2.0 * noise_photons + 1.0 - kappa) * Matrix::Identity(2, 2);
    return GaussianState(std::move(mean), std::move(cov));
}

Matrix beamsplitter_symplectic(int n_modes, int i, int j, double transmissivity) {
    if (i == j) throw std::invalid_argument("beamsplitter: modes must differ");
    if (transmissivity < 0.0 || transmissivity > 1.0)
        throw std::invalid_argument("beamsplitter: transmissivity must lie in [0,1]");
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    s.block<2, 2>(2 * i, 2 * i) = t * Matrix::Identity(2, 2);
    s.block<2, 2>(2 * i, 2 * j) = r * Matrix::Identity(2, 2);
    s.block<2, 2>(2 * j, 2 * i) = -r * Matrix::Identity(2, 2);
    s.block<2, 2>(2 * j, 2 * j) = t * Matrix::Identity(2, 2);
    return s;
}

Matrix squeezer_symplectic(int n_modes, int i, int j, double gain) {
    if (i == j) throw std::invalid_argument("two_mode_squeeze: modes must differ");
    if (gain < 1.0) throw std::invalid_argument("two_mode_squeeze: gain must be >= 1");
    const double g = std::sqrt(gain);
    const double h = std::sqrt(gain - 1.0);
    Matrix z = Matrix::Identity(2, 2);
    z(1, 1) = -1.0;
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    s.block<2, 2>(2 * i, 2 * i) = g * Matrix::Identity(2, 2);
    s.block<2, 2>(2 * i, 2 * j) = h * z;
    s.block<2, 2>(2 * j, 2 * i) = h * z;
    s.block<2, 2>(2 * j, 2 * j) = g * Matrix::Identity(2, 2);
    return s;
}

Matrix phase_symplectic(int n_modes, int mode, double theta) {
    Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    s(2 * mode, 2 * mode) = c;
    s(2 * mode, 2 * mode + 1) = sn;
    s(2 * mode + 1, 2 * mode) = -sn;
    s(2 * mode + 1, 2 * mode + 1) = c;
    return s;
}

GaussianState two_mode_squeeze(const GaussianState& state, int i, int j, double gain) {
    check_mode(state, i, "two_mode_squeeze");
    check_mode(state, j, "two_mode_squeeze");
    return apply_symplectic(state, squeezer_symplectic(state.n_modes(), i, j, gain));
}

GaussianState beamsplitter(const GaussianState& state, int i, int j, double transmissivity) {
    check_mode(state, i, "beamsplitter");
    check_mode(state, j, "beamsplitter");
    return apply_symplectic(state, beamsplitter_symplectic(state.n_modes(), i, j, transmissivity));
}

GaussianState phase_shift(const GaussianState& state, int mode, double theta) {
    check_mode(state, mode, "phase_shift");
    return apply_symplectic(state, phase_symplectic(state.n_modes(), mode, theta));
}

GaussianState partial_trace_keep(const GaussianState& state, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace_keep: no modes kept");
    for (int m : keep) check_mode(state, m, "partial_trace_keep");
    const int n = static_cast<int>(keep.size());
    Vector mean(2 * n);
    Matrix cov(2 * n, 2 * n);
    for (int a = 0; a < n; ++a) {
        mean.segment<2>(2 * a) = state.mean().segment<2>(2 * keep[a]);
        for (int b = 0; b < n; ++b)
            cov.block<2, 2>(2 * a, 2 * b) = state.cov().block<2, 2>(2 * keep[a], 2 * keep[b]);
    }
    return GaussianState(std::move(mean), std::move(cov));
}

std::vector<double> williamson_eigenvalues(const GaussianState& state) {
    Eigen::EigenSolver<Matrix> solver(symplectic_form(state.n_modes()) * state.cov(), false);
    Eigen::VectorXd moduli = solver.eigenvalues().cwiseAbs();
    std::vector<double> all(moduli.data(), moduli.data() + moduli.size());
    std::sort(all.begin(), all.end(), std::greater<double>());
    // Eigenvalues come in ± pairs with equal moduli; keep one per mode.
    std::vector<double> nu;
    nu.reserve(state.n_modes());
    for (int k = 0; k < state.n_modes(); ++k) {
        double v = all[2 * k];
        if (v < 1.0 && v > 1.0 - kPhysicalityTol) v = 1.0;
        nu.push_back(v);
    }
    return nu;
}

double mean_photon(const GaussianState& state, int mode) {
    check_mode(state, mode, "mean_photon");
    const double vxx = state.cov()(2 * mode, 2 * mode);
    const double vpp = state.cov()(2 * mode + 1, 2 * mode + 1);
    const double mx = state.mean()(2 * mode);
    const double mp = state.mean()(2 * mode + 1);
    return (vxx + vpp - 2.0) / 4.0 + (mx * mx + mp * mp) / 4.0;
}

}  // namespace qranging::gaussian
