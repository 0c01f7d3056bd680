// comm.hpp — Pulse-position-modulated entanglement-assisted communication:
// PPM mutual information, per-mode rates from the entangled QCB, slice-count
// optimization, and the classical / EA capacity benchmarks of the
// thermal-loss channel.

#pragma once

#include <utility>

namespace qranging::comm {

struct CommPoint {
    double photons_per_mode;   // n_S per mode per slice
    double reflectivity;       // kappa
    double noise_photons;      // N_B
    long long modes_per_pulse; // M
    int optimal_slices;        // m*
    double optimal_rate;       // R* in bits per channel use per mode
    double classical_cap;      // C
    double ea_cap;             // C_E
};

// log2(m) + (1-p) log2(1-p) + p log2(p/(m-1)), with 0·log 0 = 0.
double mutual_info_ppm(double p, int m);

// Thermal entropy g(n) = (n+1) log2(n+1) - n log2 n, g(0) = 0.
double g_entropy(double n);

// HSW capacity g(kappa n_S + N_B) - g(N_B) and its low-brightness form
// kappa n_S / (ln 2 · N_B).
double classical_capacity(double kappa, double noise_photons, double photons_per_mode);
double classical_capacity_low_brightness(double kappa, double noise_photons,
                                         double photons_per_mode);

// EA capacity g(n_S) + g(n_S') - g(A+) - g(A-) with n_S' = kappa n_S + N_B.
double ea_capacity(double kappa, double noise_photons, double photons_per_mode);

// Rate I(P_{E,H}) / (M m) of m-slice PPM with N_S = m n_S photons per mode;
// P_{E,H} uses the passive-signature covariances, or the asymptotic
// closed form when `asymptotic` is set.
double rate(int slices, long long modes_per_pulse, double photons_per_mode, double kappa,
            double noise_photons, bool asymptotic = false);

// Maximizes the rate over the integer slice count on a logarithmic grid
// centred at the asymptotic guide m = N_B / (2 M kappa n_S), then refines
// locally.
CommPoint optimal_rate(long long modes_per_pulse, double photons_per_mode, double kappa,
                       double noise_photons);

}  // namespace qranging::comm
