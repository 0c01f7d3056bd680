#include "qranging/distinguish.hpp"

#include <algorithm>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qranging::distinguish {

namespace {

constexpr double kPureTol = 1e-12;       // nu - 1 below this counts as pure
constexpr double kEndpointS = 1e-12;     // proxy for the s -> 0+ / 1- limits
constexpr double kSearchLo = 1e-6;
constexpr double kSearchTol = 1e-6;      // |Δs| refinement target

// ln[(nu+1)^s - (nu-1)^s], computed with expm1 so that s ~ 1e-12 keeps full
// relative precision.
double log_power_gap(double nu, double s) {
    const double excess = nu - 1.0;
    if (excess <= kPureTol) return s * std::log(nu + 1.0);
    const double gap = s * (std::log(nu + 1.0) - std::log(excess));
    return s * std::log(excess) + std::log(std::expm1(gap));
}

// ln G_s(nu) with G_s(nu) = 2^s / [(nu+1)^s - (nu-1)^s]; ln Tr[rho^s] for a
// thermal mode of symplectic eigenvalue nu.
double log_g(double nu, double s) {
    return s * std::numbers::ln2 - log_power_gap(nu, s);
}

// Λ_s(nu) = [(nu+1)^s + (nu-1)^s] / [(nu+1)^s - (nu-1)^s]: the symplectic
// eigenvalue of the renormalized s-power.
double lambda_power(double nu, double s) {
    const double excess = nu - 1.0;
    if (excess <= kPureTol) return 1.0;
    const double gap = s * (std::log(nu + 1.0) - std::log(excess));
    // (x+1)/(x-1) with x = ((nu+1)/(nu-1))^s, via expm1 for small gaps.
    return 1.0 + 2.0 / std::expm1(gap);
}

struct Prepared {
    WilliamsonDecomposition w;
    Vector mean;
    int n_modes;
};

Prepared prepare(const GaussianState& state) {
    return Prepared{williamson(state.cov()), state.mean(), state.n_modes()};
}

// Covariance of the renormalized s-power: same Williamson basis, spectrum
// mapped through Λ_s.
Matrix power_cov(const Prepared& p, double s) {
    Vector d(2 * p.n_modes);
    for (int k = 0; k < p.n_modes; ++k) {
        const double lam = lambda_power(p.w.nu(k), s);
        d(2 * k) = lam;
        d(2 * k + 1) = lam;
    }
    return p.w.symplectic * d.asDiagonal() * p.w.symplectic.transpose();
}

double log_overlap(const Prepared& a, const Prepared& b, double s) {
    double log_q = a.n_modes * std::numbers::ln2;
    for (int k = 0; k < a.n_modes; ++k) log_q += log_g(a.w.nu(k), s);
    for (int k = 0; k < b.n_modes; ++k) log_q += log_g(b.w.nu(k), 1.0 - s);

    const Matrix combined = power_cov(a, s) + power_cov(b, 1.0 - s);
    Eigen::LDLT<Matrix> ldlt(combined);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("gaussian_overlap: combined covariance not factorizable");
    log_q -= 0.5 * ldlt.vectorD().array().log().sum();

    const Vector delta = a.mean - b.mean;
    if (delta.cwiseAbs().maxCoeff() > 0.0)
        log_q -= 0.5 * delta.dot(ldlt.solve(delta));
    return log_q;
}

void check_pair(const GaussianState& s1, const GaussianState& s2, const char* who) {
    if (s1.n_modes() != s2.n_modes())
        throw std::invalid_argument(std::string(who) + ": mode number mismatch");
}

}  // namespace

WilliamsonDecomposition williamson(const Matrix& cov) {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("williamson: covariance not symmetric");
    const int dim = static_cast<int>(cov.rows());
    const int n = dim / 2;

    Eigen::SelfAdjointEigenSolver<Matrix> cov_eig(cov);
    if (cov_eig.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("williamson: covariance not positive definite");
    const Matrix root = cov_eig.operatorSqrt();
    const Matrix root_inv = cov_eig.operatorInverseSqrt();

    // A = V^{-1/2} Ω V^{-1/2} is antisymmetric, so iA is Hermitian with
    // eigenvalue pairs ±kappa and kappa = 1/nu.
    const Matrix a = root_inv * gaussian::symplectic_form(n) * root_inv;
    Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);

    // For an eigenvector u = (x + i y)/sqrt(2) of eigenvalue kappa > 0 the
    // real columns (y, x) satisfy Qᵀ A Q = ⊕ kappa·[[0,1],[-1,0]].
    WilliamsonDecomposition out;
    out.nu.resize(n);
    Matrix q(dim, dim);
    Vector scale(dim);
    int slot = 0;
    for (int idx = 0; idx < dim; ++idx) {
        const double kappa = eig.eigenvalues()(idx);
        if (kappa <= 0.0) continue;
        const Eigen::VectorXcd u = eig.eigenvectors().col(idx);
        q.col(2 * slot) = std::sqrt(2.0) * u.imag();
        q.col(2 * slot + 1) = std::sqrt(2.0) * u.real();
        // Physicality is enforced upstream; only rounding can push nu below 1.
        out.nu(slot) = std::max(1.0 / kappa, 1.0);
        scale(2 * slot) = scale(2 * slot + 1) = std::sqrt(kappa);
        ++slot;
    }
    if (slot != n) throw std::runtime_error("williamson: eigenvalue pairing failed");
    out.symplectic = root * q * scale.asDiagonal();
    return out;
}

double gaussian_overlap(const GaussianState& state1, const GaussianState& state2, double s) {
    check_pair(state1, state2, "gaussian_overlap");
    if (s <= 0.0 || s >= 1.0)
        throw std::invalid_argument("gaussian_overlap: s must lie in (0,1)");
    return std::exp(log_overlap(prepare(state1), prepare(state2), s));
}

OverlapResult chernoff_exponent(const GaussianState& state1, const GaussianState& state2,
                                bool symmetric) {
    check_pair(state1, state2, "chernoff_exponent");
    const Prepared a = prepare(state1);
    const Prepared b = prepare(state2);
    const auto exponent_at = [&](double s) { return -log_overlap(a, b, s); };

    if (symmetric) {
        const double e = exponent_at(0.5);
        return OverlapResult{0.5, std::exp(-e), std::max(e, 0.0)};
    }

    // -ln Q_s is concave in s; ternary search plus the two endpoint limits.
    double lo = kSearchLo, hi = 1.0 - kSearchLo;
    while (hi - lo > kSearchTol) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (exponent_at(m1) < exponent_at(m2))
            lo = m1;
        else
            hi = m2;
    }
    double s_star = (lo + hi) / 2.0;
    double best = exponent_at(s_star);
    const double at_zero = exponent_at(kEndpointS);
    const double at_one = exponent_at(1.0 - kEndpointS);
    if (at_zero > best) {
        best = at_zero;
        s_star = 0.0;
    }
    if (at_one > best) {
        best = at_one;
        s_star = 1.0;
    }
    if (best < 0.0) best = 0.0;  // identical states accumulate -1e-16-level noise
    return OverlapResult{s_star, std::exp(-best), best};
}

double gaussian_fidelity_zero_mean(const GaussianState& state1, const GaussianState& state2) {
    check_pair(state1, state2, "gaussian_fidelity_zero_mean");
    if (!state1.has_zero_mean(0.0) || !state2.has_zero_mean(0.0))
        throw std::invalid_argument("gaussian_fidelity_zero_mean: nonzero mean unsupported");

    // Fidelity of zero-mean Gaussian states from the auxiliary matrix
    // V_aux = Ωᵀ (V1+V2)^{-1} (Ω/4 + V2 Ω V1) in the vacuum = I/2
    // normalization.  The eigenvalues of V_aux·Ω come in ±i·w pairs with
    // w >= 1/2 (w = 1/2 on pure directions) and
    //   F^4 = [Π_k (2 w_k + sqrt(4 w_k² - 1))]² / det(V1+V2).
    // This spectral form stays finite for pure states, where the textbook
    // matrix-square-root expression degenerates to 0/0.
    const int n = state1.n_modes();
    const int dim = 2 * n;
    const Matrix v1 = state1.cov() / 2.0;
    const Matrix v2 = state2.cov() / 2.0;
    const Matrix omega = gaussian::symplectic_form(n);

    Eigen::LDLT<Matrix> ldlt(v1 + v2);
    const Matrix v_aux =
        omega.transpose() * ldlt.solve(omega / 4.0 + v2 * omega * v1);

    Eigen::EigenSolver<Matrix> eig(v_aux * omega, false);
    Eigen::VectorXd moduli = eig.eigenvalues().cwiseAbs();
    std::vector<double> all(moduli.data(), moduli.data() + moduli.size());
    std::sort(all.begin(), all.end(), std::greater<double>());

    double log_f4 = -ldlt.vectorD().array().log().sum();
    for (int k = 0; k < n; ++k) {
        const double w = all[2 * k];
        const double root = std::sqrt(std::max(4.0 * w * w - 1.0, 0.0));
        log_f4 += 2.0 * std::log(2.0 * w + root);
    }
    return std::min(std::exp(0.25 * log_f4), 1.0);
}

double multihypothesis_exponent(std::span<const GaussianState> states, bool symmetric) {
    if (states.size() < 2)
        throw std::invalid_argument("multihypothesis_exponent: need at least 2 states");
    if (symmetric) return chernoff_exponent(states[0], states[1], true).exponent;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            best = std::min(best, chernoff_exponent(states[i], states[j]).exponent);
    return best;
}

}  // namespace qranging::distinguish
