// receiver.hpp — The cascaded-OPA receiver: gain solution, conditional
// photon-counting statistics, exact and Gaussian-approximate error
// probabilities for m = 2, and seeded Monte Carlo simulators for the OPA
// and direct-detection receivers.
//
// For m >= 3 only the phase-vector machinery is provided; the decision rule
// is an open problem and the m = 2 entry points reject larger m.

#pragma once

#include "qranging/bounds.hpp"

#include <cstdint>
#include <vector>

namespace qranging::receiver {

using bounds::RangingScenario;

struct OpaConfig {
    int num_slices = 2;
    double total_gain = 1.0;           // G, product of the cascade gains
    std::vector<double> cascade_gains; // {G_l}, each >= 1
    std::vector<double> phases;        // {theta_l} applied before the cascade
};

// Per-copy photon-count model: the total count over M copies is negative
// binomial with per-copy mean N̄ and sigma = sqrt(N̄(N̄+1)).
struct CountModel {
    long long copies = 1;
    double mean_photons = 0.0;
    double sigma = 0.0;
};

// G = 1 + m sqrt(N_S)/N_B; rejects N_B = 0 (divergent gain).
double default_gain(const RangingScenario& sc);

// Backward substitution for {(G_l - 1) Π_{k>l} G_k = (G-1)/m}: makes every
// cascade step contribute the same sqrt((G-1)/m) Bogoliubov coefficient.
std::vector<double> cascade_gains(double total_gain, int num_slices);

// Config with the default phases: (0, pi) for m = 2, uniform 2*pi*l/m otherwise.
OpaConfig make_opa_config(const RangingScenario& sc, double total_gain);

// N̄(theta_h) = G N_S + (G-1)(N_B+1) + 2 sqrt(G(G-1) kappa/m) cos(theta_h) C_p.
double conditional_mean_photon(const RangingScenario& sc, double gain, double theta_h);

CountModel count_model(const RangingScenario& sc, double gain, double theta_h);

// Negative-binomial pmf of the M-copy total count.
double count_pmf(long long n, const CountModel& model);

// Maximum-likelihood decision between the theta = 0 and theta = pi count
// distributions; the likelihood ratio is monotone, so the rule is an integer
// threshold with ties going to the larger-mean hypothesis.
double opa_error_exact_m2(const RangingScenario& sc, double gain);

// The same decision problem stated directly on the two per-copy means.
double opa_error_exact_counts(long long copies, double mean_high, double mean_low);

// Gaussian approximation (1/2) erfc[ sqrt(M/2) (N̄(0)-N̄(pi)) / (sigma(0)+sigma(pi)) ].
double opa_error_gaussian_m2(const RangingScenario& sc, double gain);

struct MonteCarloResult {
    double error;
    double std_error;
    long long trials;
};

// Single-mode direct-detection receiver on the concentrated classical
// description: true slice = Poisson(|beta|^2) with beta complex Gaussian of
// mean sqrt(M kappa N_S) and per-quadrature variance N_B/2; other slices
// single thermal-mode counts NB(1, N_B); argmax decision with uniform
// tie-breaking.  The M-1 residual modes of the concentration are identical
// thermals under every hypothesis and are not counted.  Deterministic for a
// fixed seed, independent of worker count.
MonteCarloResult dd_monte_carlo(const RangingScenario& sc, long long trials, std::uint64_t seed);

// Samples the two count distributions and applies the same ML threshold.
MonteCarloResult opa_monte_carlo_m2(const RangingScenario& sc, double gain, long long trials,
                                    std::uint64_t seed);

}  // namespace qranging::receiver
