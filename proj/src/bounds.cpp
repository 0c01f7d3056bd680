#include "qranging/bounds.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <stdexcept>

namespace qranging::bounds {

namespace {

double prefactor(int m) { return static_cast<double>(m - 1) / m; }

double coupling(const RangingScenario& sc) {
    // Off-diagonal return-idler element 2 sqrt(kappa) C_p.
    return 2.0 * std::sqrt(sc.reflectivity * sc.signal_photons * (sc.signal_photons + 1.0));
}

}  // namespace

void RangingScenario::validate() const {
    if (num_slices < 2) throw std::invalid_argument("RangingScenario: need m >= 2 slices");
    if (modes_per_pulse < 1) throw std::invalid_argument("RangingScenario: need M >= 1 modes");
    if (!(signal_photons >= 0.0) || !std::isfinite(signal_photons))
        throw std::invalid_argument("RangingScenario: N_S must be finite and >= 0");
    if (!(noise_photons >= 0.0) || !std::isfinite(noise_photons))
        throw std::invalid_argument("RangingScenario: N_B must be finite and >= 0");
    if (!(reflectivity >= 0.0) || reflectivity > 1.0)
        throw std::invalid_argument("RangingScenario: kappa must lie in [0,1]");
    if (slice_width < 0.0) throw std::invalid_argument("RangingScenario: negative slice width");
}

double slice_time(int ell, double slice_width_m) {
    if (ell < 0) throw std::invalid_argument("slice_time: negative slice index");
    return 2.0 * ell * slice_width_m / kSpeedOfLight;
}

double classical_qcb_exponent(const RangingScenario& sc) {
    const double nb = sc.noise_photons;
    return 2.0 * sc.reflectivity * sc.signal_photons /
           (1.0 + 2.0 * nb + 2.0 * std::sqrt(nb * (1.0 + nb)));
}

double classical_qcb(const RangingScenario& sc) {
    sc.validate();
    return prefactor(sc.num_slices) *
           std::exp(-static_cast<double>(sc.modes_per_pulse) * classical_qcb_exponent(sc));
}

double classical_qcb_high_noise(const RangingScenario& sc) {
    sc.validate();
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("classical_qcb_high_noise: requires N_B > 0");
    return prefactor(sc.num_slices) *
           std::exp(-static_cast<double>(sc.modes_per_pulse) * sc.reflectivity *
                    sc.signal_photons / (2.0 * sc.noise_photons));
}

double classical_lower_bound_exponent(const RangingScenario& sc) {
    return 2.0 * sc.signal_photons * sc.reflectivity / (1.0 + 2.0 * sc.noise_photons);
}

double classical_lower_bound(const RangingScenario& sc) {
    sc.validate();
    return prefactor(sc.num_slices) / 2.0 *
           std::exp(-static_cast<double>(sc.modes_per_pulse) * classical_lower_bound_exponent(sc));
}

double classical_dd(const RangingScenario& sc) {
    sc.validate();
    using Real = boost::multiprecision::cpp_dec_float_50;
    const Real v = Real(sc.noise_photons) / (Real(sc.noise_photons) + 1);
    const Real energy =
        Real(sc.reflectivity) * Real(sc.modes_per_pulse) * Real(sc.signal_photons);
    return detail::ppm_dd_error<Real>(sc.num_slices, v, energy).convert_to<double>();
}

GaussianState build_hypothesis_state(const RangingScenario& sc, int h, bool passive_signature) {
    sc.validate();
    if (h < 0 || h >= sc.num_slices)
        throw std::out_of_range("build_hypothesis_state: slice index out of range");
    const int n = sc.num_slices + 1;  // m returns + idler (last mode)
    gaussian::Matrix cov =
        (2.0 * sc.noise_photons + 1.0) * gaussian::Matrix::Identity(2 * n, 2 * n);
    cov.bottomRightCorner(2, 2) =
        (2.0 * sc.signal_photons + 1.0) * gaussian::Matrix::Identity(2, 2);
    if (passive_signature)
        cov.block<2, 2>(2 * h, 2 * h) +=
            2.0 * sc.reflectivity * sc.signal_photons * gaussian::Matrix::Identity(2, 2);
    const double c = coupling(sc);
    cov(2 * h, 2 * (n - 1)) = cov(2 * (n - 1), 2 * h) = c;
    cov(2 * h + 1, 2 * (n - 1) + 1) = cov(2 * (n - 1) + 1, 2 * h + 1) = -c;
    return GaussianState(gaussian::Vector::Zero(2 * n), std::move(cov));
}

std::pair<GaussianState, GaussianState> build_three_mode_covariances(const RangingScenario& sc,
                                                                     bool passive_signature) {
    // The multiary problem reduces to the first two slices regardless of m.
    RangingScenario two = sc;
    two.num_slices = 2;
    return {build_hypothesis_state(two, 0, passive_signature),
            build_hypothesis_state(two, 1, passive_signature)};
}

double entangled_chernoff_exponent(const RangingScenario& sc, bool passive_signature) {
    const auto pair = build_three_mode_covariances(sc, passive_signature);
    // The pair is swap-related (exchange of the two return modes), so the
    // Chernoff optimum sits at s = 1/2 exactly.
    return distinguish::chernoff_exponent(pair.first, pair.second, true).exponent;
}

double entangled_qcb_full(const RangingScenario& sc, bool passive_signature) {
    return prefactor(sc.num_slices) *
           std::exp(-static_cast<double>(sc.modes_per_pulse) *
                    entangled_chernoff_exponent(sc, passive_signature));
}

double entangled_qcb_asymptotic_exponent(const RangingScenario& sc) {
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("entangled_qcb_asymptotic: N_B = 0 invalidates the asymptotic form");
    return 2.0 * sc.reflectivity * sc.signal_photons / sc.noise_photons;
}

double entangled_qcb_asymptotic(const RangingScenario& sc) {
    sc.validate();
    return prefactor(sc.num_slices) *
           std::exp(-static_cast<double>(sc.modes_per_pulse) *
                    entangled_qcb_asymptotic_exponent(sc));
}

double pair_fidelity(const RangingScenario& sc, bool passive_signature) {
    const auto pair = build_three_mode_covariances(sc, passive_signature);
    return distinguish::gaussian_fidelity_zero_mean(pair.first, pair.second);
}

double entangled_upper_bound(const RangingScenario& sc, bool passive_signature) {
    const double f = pair_fidelity(sc, passive_signature);
    const double value =
        (sc.num_slices - 1) *
        std::exp(static_cast<double>(sc.modes_per_pulse) * std::log(std::max(f, 1e-300)));
    return std::min(value, 1.0);  // degenerate below F^M ~ 1/(m-1), e.g. kappa -> 0
}

double entangled_upper_bound_approx(const RangingScenario& sc) {
    sc.validate();
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("entangled_upper_bound_approx: requires N_B > 0");
    const double value =
        (sc.num_slices - 1) * std::exp(-static_cast<double>(sc.modes_per_pulse) *
                                       sc.reflectivity * sc.signal_photons / sc.noise_photons);
    return std::min(value, 1.0);
}

ReducedClassical reduce_classical_to_single_mode(const RangingScenario& sc) {
    sc.validate();
    return ReducedClassical{
        static_cast<double>(sc.modes_per_pulse) * sc.reflectivity * sc.signal_photons,
        sc.modes_per_pulse - 1};
}

double gus_helstrom(int m, double zeta) {
    if (m < 2) throw std::invalid_argument("gus_helstrom: need m >= 2");
    if (zeta < 0.0 || zeta > 1.0) throw std::invalid_argument("gus_helstrom: zeta must lie in [0,1]");
    const double root = std::sqrt(1.0 + (m - 1) * zeta) - std::sqrt(1.0 - zeta);
    return static_cast<double>(m - 1) / (static_cast<double>(m) * m) * root * root;
}

double gus_helstrom_asymptotic(int m, double zeta) {
    if (m < 2) throw std::invalid_argument("gus_helstrom_asymptotic: need m >= 2");
    return 0.25 * (m - 1) * zeta * zeta;
}

NoiselessOverlaps noiseless_overlaps(double signal_photons, long long modes) {
    if (signal_photons < 0.0 || modes < 1)
        throw std::invalid_argument("noiseless_overlaps: invalid parameters");
    const double m = static_cast<double>(modes);
    return NoiselessOverlaps{std::exp(-m * std::log1p(signal_photons)),
                             std::exp(-m * signal_photons)};
}

BoundsReport bounds_report(const RangingScenario& sc, bool passive_signature) {
    sc.validate();
    BoundsReport r{};
    r.p_c_qcb = classical_qcb(sc);
    r.p_c_lb = classical_lower_bound(sc);
    r.p_c_dd = classical_dd(sc);
    r.p_e_qcb_full = entangled_qcb_full(sc, passive_signature);
    r.p_e_qcb_asymptotic = entangled_qcb_asymptotic(sc);
    r.p_e_ub = entangled_upper_bound(sc, passive_signature);
    r.exp_c_qcb = classical_qcb_exponent(sc);
    r.exp_c_lb = classical_lower_bound_exponent(sc);
    r.exp_e_qcb_full = entangled_chernoff_exponent(sc, passive_signature);
    r.exp_e_qcb_asymptotic = entangled_qcb_asymptotic_exponent(sc);
    r.exp_e_ub = -std::log(pair_fidelity(sc, passive_signature));
    return r;
}

}  // namespace qranging::bounds
