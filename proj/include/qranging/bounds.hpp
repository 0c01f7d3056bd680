// bounds.hpp — Ranging scenarios and the closed-form error-probability
// bounds: classical QCB and lower bound, coherent-state direct detection,
// the entangled three-mode QCB (full and asymptotic), the fidelity-based
// upper bound, the classical concentration reduction, and the noiseless
// GUS results.

#pragma once

#include "qranging/distinguish.hpp"
#include "qranging/gaussian.hpp"

#include <utility>

namespace qranging::bounds {

using gaussian::GaussianState;

// Exact by definition.
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct RangingScenario {
    int num_slices = 2;            // m >= 2 range slices
    long long modes_per_pulse = 1; // M >= 1 signal modes per pulse
    double signal_photons = 0.0;   // N_S per mode
    double noise_photons = 0.0;    // N_B per mode
    double reflectivity = 0.0;     // kappa in [0,1]
    double slice_width = 0.0;      // Delta in meters, metadata only

    void validate() const;
};

// All probabilities clamped to [0,1] only where noted; exponents are the
// per-copy error exponents (the coefficient of -M).
struct BoundsReport {
    double p_c_qcb, p_c_lb, p_c_dd, p_e_qcb_full, p_e_qcb_asymptotic, p_e_ub;
    double exp_c_qcb, exp_c_lb, exp_e_qcb_full, exp_e_qcb_asymptotic, exp_e_ub;
};

// Arrival time 2*ell*Delta/c of the slice-ell return.
double slice_time(int ell, double slice_width_m);

// (m-1)/m · exp[-2 M kappa N_S / (1 + 2 N_B + 2 sqrt(N_B(1+N_B)))].
double classical_qcb(const RangingScenario& sc);
// The N_B >> 1 simplification (m-1)/m · exp[-M kappa N_S / (2 N_B)].
double classical_qcb_high_noise(const RangingScenario& sc);
double classical_qcb_exponent(const RangingScenario& sc);

// (m-1)/(2m) · exp[-2 M N_S kappa / (1 + 2 N_B)].
double classical_lower_bound(const RangingScenario& sc);
double classical_lower_bound_exponent(const RangingScenario& sc);

// Coherent-state direct detection, evaluated in 50-decimal-digit arithmetic
// (the alternating binomial sum cancels catastrophically for m beyond ~20).
double classical_dd(const RangingScenario& sc);

// The two three-mode zero-mean hypothesis states (return_1, return_2, idler).
// With passive_signature off the correlated return keeps the plain 2N_B+1
// diagonal; with it on the kappa·N_S brightness is restored.  Low-noise
// passive_signature-off scenarios can be unphysical and are rejected by the
// state constructor.
std::pair<GaussianState, GaussianState> build_three_mode_covariances(const RangingScenario& sc,
                                                                     bool passive_signature);

// General (m returns + idler) hypothesis state with the correlated slice h.
GaussianState build_hypothesis_state(const RangingScenario& sc, int h, bool passive_signature);

// (m-1)/m · exp[-M C] with C the pairwise Chernoff exponent of the
// three-mode pair.
double entangled_qcb_full(const RangingScenario& sc, bool passive_signature = false);
double entangled_chernoff_exponent(const RangingScenario& sc, bool passive_signature = false);

// (m-1)/m · exp[-2 M kappa N_S / N_B]; rejects N_B = 0.
double entangled_qcb_asymptotic(const RangingScenario& sc);
double entangled_qcb_asymptotic_exponent(const RangingScenario& sc);

// (m-1) F^M with F the fidelity of the three-mode pair, clamped to 1, and
// its high-noise approximation (m-1) exp(-M kappa N_S / N_B).
double entangled_upper_bound(const RangingScenario& sc, bool passive_signature = false);
double entangled_upper_bound_approx(const RangingScenario& sc);
double pair_fidelity(const RangingScenario& sc, bool passive_signature = false);

// Concentration of the M-mode coherent-state problem onto a single signal
// mode per slice: |alpha|^2 = M kappa N_S plus M-1 thermal remainder modes.
struct ReducedClassical {
    double amplitude_squared;
    long long residual_thermal_modes;
};
ReducedClassical reduce_classical_to_single_mode(const RangingScenario& sc);

// Noiseless GUS Helstrom limit for m pure states of real pairwise overlap
// zeta, and its small-(m zeta) expansion (m-1) zeta^2 / 4.
double gus_helstrom(int m, double zeta);
double gus_helstrom_asymptotic(int m, double zeta);

// Pure-state overlaps of the noiseless (N_B=0, kappa=1) protocols:
// zeta_E = (1+N_S)^{-M}, zeta_C = exp(-M N_S).  The paper's comparison of
// the two shows no entanglement advantage in this regime.
struct NoiselessOverlaps {
    double entangled;
    double classical;
};
NoiselessOverlaps noiseless_overlaps(double signal_photons, long long modes);

BoundsReport bounds_report(const RangingScenario& sc, bool passive_signature = false);

namespace detail {

// P_{C,DD} for PPM direct detection with v = N_B/(N_B+1) and
// energy = kappa M N_S, templated over the arithmetic type so tests can
// re-evaluate at higher precision:
//   (1/m) Σ_{k=2}^m (-1)^k C(m,k) exp[-(1-v)(1-v^{k-1}) E / (1-v^k)].
template <typename Real>
Real ppm_dd_error(int m, Real v, Real energy) {
    using std::exp;
    Real sum = 0;
    Real binom = Real(m) * Real(m - 1) / Real(2);  // C(m,2), then recurrence
    Real v_pow_km1 = v;                            // v^{k-1}
    const Real one = Real(1);
    for (int k = 2; k <= m; ++k) {
        const Real v_pow_k = v_pow_km1 * v;
        const Real arg = (one - v) * (one - v_pow_km1) * energy / (one - v_pow_k);
        const Real term = binom * exp(-arg);
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * Real(m - k) / Real(k + 1);
        v_pow_km1 = v_pow_k;
    }
    return sum / Real(m);
}

}  // namespace detail

}  // namespace qranging::bounds
