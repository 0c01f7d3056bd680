#include "qranging/receiver.hpp"

#include "qranging/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qranging::receiver {

namespace {

constexpr long long kBlockTrials = 1 << 14;

void require_m2(const RangingScenario& sc, const char* who) {
    if (sc.num_slices != 2)
        throw std::invalid_argument(std::string(who) + ": not implemented: adaptive receiver for m > 2");
}

double nb_log_pmf(long long n, long long copies, double nbar) {
    const double m = static_cast<double>(copies);
    return std::lgamma(static_cast<double>(n) + m) - std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(m) + static_cast<double>(n) * (std::log(nbar) - std::log1p(nbar)) -
           m * std::log1p(nbar);
}

// P(X <= n_hi) summed downward from the anchor; valid when n_hi is at or
// below the distribution mode.
double nb_tail_below(long long n_hi, long long copies, double nbar) {
    if (n_hi < 0) return 0.0;
    const double r = nbar / (1.0 + nbar);
    const double anchor = nb_log_pmf(n_hi, copies, nbar);
    double relative = 1.0, total = 1.0;
    for (long long n = n_hi; n > 0; --n) {
        relative *= static_cast<double>(n) / ((static_cast<double>(n) + copies - 1.0) * r);
        total += relative;
        if (relative < 1e-18 * total) break;
    }
    return std::exp(anchor) * total;
}

// P(X >= n_lo) summed upward from the anchor; valid at or above the mode.
double nb_tail_above(long long n_lo, long long copies, double nbar) {
    if (n_lo <= 0) return 1.0;
    const double r = nbar / (1.0 + nbar);
    const double anchor = nb_log_pmf(n_lo, copies, nbar);
    double relative = 1.0, total = 1.0;
    for (long long n = n_lo;; ++n) {
        relative *= (static_cast<double>(n) + copies) / static_cast<double>(n + 1) * r;
        total += relative;
        if (relative < 1e-18 * total) break;
    }
    return std::exp(anchor) * total;
}

double nb_cdf_lower(long long n_hi, long long copies, double nbar) {
    if (n_hi < 0) return 0.0;
    if (nbar <= 0.0) return 1.0;  // point mass at zero
    const double mode = (static_cast<double>(copies) - 1.0) * nbar;
    if (static_cast<double>(n_hi) <= mode) return nb_tail_below(n_hi, copies, nbar);
    return 1.0 - nb_tail_above(n_hi + 1, copies, nbar);
}

double nb_cdf_upper(long long n_lo, long long copies, double nbar) {
    if (n_lo <= 0) return 1.0;
    if (nbar <= 0.0) return 0.0;
    const double mode = (static_cast<double>(copies) - 1.0) * nbar;
    if (static_cast<double>(n_lo) >= mode) return nb_tail_above(n_lo, copies, nbar);
    return 1.0 - nb_tail_below(n_lo - 1, copies, nbar);
}

// Smallest count at which the likelihood ratio favours the larger-mean
// hypothesis (ties included).  Requires high > low > 0.
long long ml_threshold(long long copies, double high, double low) {
    const double num = static_cast<double>(copies) * std::log1p((high - low) / (1.0 + low));
    const double den = std::log(high / low) - std::log1p((high - low) / (1.0 + low));
    return static_cast<long long>(std::ceil(num / den - 1e-12));
}

// Deterministic block-parallel Monte Carlo: per-block RNG streams keyed by
// (seed, block), integer error counts summed across blocks.
MonteCarloResult run_trials(long long trials, std::uint64_t seed,
                            const std::function<bool(std::mt19937_64&)>& trial_errs) {
    if (trials < 1) throw std::invalid_argument("monte carlo: trials must be >= 1");
    const std::size_t blocks = static_cast<std::size_t>((trials + kBlockTrials - 1) / kBlockTrials);
    std::atomic<long long> errors{0};
    parallel::parallel_for(blocks, [&](std::size_t b) {
        std::mt19937_64 rng(parallel::block_seed(seed, b));
        const long long lo = static_cast<long long>(b) * kBlockTrials;
        const long long hi = std::min(trials, lo + kBlockTrials);
        long long local = 0;
        for (long long t = lo; t < hi; ++t)
            if (trial_errs(rng)) ++local;
        errors.fetch_add(local);
    });
    const double p = static_cast<double>(errors.load()) / static_cast<double>(trials);
    return MonteCarloResult{p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials)),
                            trials};
}

long long sample_negative_binomial(std::mt19937_64& rng, long long copies, double nbar) {
    if (copies <= 0 || nbar <= 0.0) return 0;
    std::gamma_distribution<double> gamma(static_cast<double>(copies), nbar);
    std::poisson_distribution<long long> poisson(gamma(rng));
    return poisson(rng);
}

}  // namespace

double default_gain(const RangingScenario& sc) {
    sc.validate();
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("default_gain: N_B = 0 makes the gain diverge");
    return 1.0 + sc.num_slices * std::sqrt(sc.signal_photons) / sc.noise_photons;
}

std::vector<double> cascade_gains(double total_gain, int num_slices) {
    if (total_gain < 1.0) throw std::invalid_argument("cascade_gains: total gain must be >= 1");
    if (num_slices < 1) throw std::invalid_argument("cascade_gains: need at least one slice");
    std::vector<double> gains(num_slices);
    double tail_product = 1.0;  // Π_{k>l} G_k
    for (int l = num_slices - 1; l >= 0; --l) {
        gains[l] = 1.0 + (total_gain - 1.0) / (num_slices * tail_product);
        tail_product *= gains[l];
    }
    return gains;
}

OpaConfig make_opa_config(const RangingScenario& sc, double total_gain) {
    OpaConfig config;
    config.num_slices = sc.num_slices;
    config.total_gain = total_gain;
    config.cascade_gains = cascade_gains(total_gain, sc.num_slices);
    config.phases.resize(sc.num_slices);
    if (sc.num_slices == 2) {
        config.phases = {0.0, std::numbers::pi};
    } else {
        for (int l = 0; l < sc.num_slices; ++l)
            config.phases[l] = 2.0 * std::numbers::pi * l / sc.num_slices;
    }
    return config;
}

double conditional_mean_photon(const RangingScenario& sc, double gain, double theta_h) {
    sc.validate();
    if (gain < 1.0) throw std::invalid_argument("conditional_mean_photon: gain must be >= 1");
    const double cp = std::sqrt(sc.signal_photons * (sc.signal_photons + 1.0));
    return gain * sc.signal_photons + (gain - 1.0) * (sc.noise_photons + 1.0) +
           2.0 * std::sqrt(gain * (gain - 1.0) * sc.reflectivity / sc.num_slices) *
               std::cos(theta_h) * cp;
}

CountModel count_model(const RangingScenario& sc, double gain, double theta_h) {
    const double nbar = conditional_mean_photon(sc, gain, theta_h);
    return CountModel{sc.modes_per_pulse, nbar, std::sqrt(nbar * (nbar + 1.0))};
}

double count_pmf(long long n, const CountModel& model) {
    if (n < 0) return 0.0;
    if (model.mean_photons <= 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(nb_log_pmf(n, model.copies, model.mean_photons));
}

double opa_error_exact_counts(long long copies, double mean_high, double mean_low) {
    if (copies < 1) throw std::invalid_argument("opa_error_exact_counts: need M >= 1");
    if (mean_low < 0.0 || mean_high < mean_low)
        throw std::invalid_argument("opa_error_exact_counts: need mean_high >= mean_low >= 0");
    if (mean_high == mean_low) return 0.5;
    if (mean_low == 0.0) {
        // The low hypothesis is a point mass at zero count: only n = 0 errs.
        return 0.5 * std::exp(-static_cast<double>(copies) * std::log1p(mean_high));
    }
    const long long threshold = ml_threshold(copies, mean_high, mean_low);
    const double miss_high = nb_cdf_lower(threshold - 1, copies, mean_high);
    const double false_high = nb_cdf_upper(threshold, copies, mean_low);
    return 0.5 * (miss_high + false_high);
}

double opa_error_exact_m2(const RangingScenario& sc, double gain) {
    require_m2(sc, "opa_error_exact_m2");
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("opa_error_exact_m2: requires N_B > 0");
    return opa_error_exact_counts(sc.modes_per_pulse,
                                  conditional_mean_photon(sc, gain, 0.0),
                                  conditional_mean_photon(sc, gain, std::numbers::pi));
}

double opa_error_gaussian_m2(const RangingScenario& sc, double gain) {
    require_m2(sc, "opa_error_gaussian_m2");
    const CountModel zero = count_model(sc, gain, 0.0);
    const CountModel pi = count_model(sc, gain, std::numbers::pi);
    if (zero.mean_photons == pi.mean_photons) return 0.5;
    const double arg = std::sqrt(static_cast<double>(sc.modes_per_pulse) / 2.0) *
                       (zero.mean_photons - pi.mean_photons) / (zero.sigma + pi.sigma);
    return 0.5 * std::erfc(arg);
}

MonteCarloResult dd_monte_carlo(const RangingScenario& sc, long long trials, std::uint64_t seed) {
    sc.validate();
    // Concentrated description: all pulse energy in one mode per slice.  The
    // M-1 residual modes are identical thermals under every hypothesis and
    // carry no range information, so the receiver counts only the signal
    // mode of each slice (this is what the closed-form DD error describes).
    const auto reduced = reduce_classical_to_single_mode(sc);
    const double mean_amp = std::sqrt(reduced.amplitude_squared);
    const double quad_sigma = std::sqrt(sc.noise_photons / 2.0);
    const int m = sc.num_slices;

    return run_trials(trials, seed, [=](std::mt19937_64& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> uni(0.0, 1.0);

        // True slice fixed at 0 by symmetry of the priors and the model;
        // displaced-thermal counts sampled through the P representation.
        const double re = mean_amp + quad_sigma * normal(rng);
        const double im = quad_sigma * normal(rng);
        std::poisson_distribution<long long> signal_counts(re * re + im * im);
        long long best = signal_counts(rng);
        int winners = 1;
        bool true_slice_wins = true;
        for (int slice = 1; slice < m; ++slice) {
            const long long count = sample_negative_binomial(rng, 1, sc.noise_photons);
            if (count > best) {
                best = count;
                winners = 1;
                true_slice_wins = false;
            } else if (count == best) {
                ++winners;
            }
        }
        if (!true_slice_wins) return true;
        if (winners == 1) return false;
        return uni(rng) * winners >= 1.0;  // uniform tie-break among winners
    });
}

MonteCarloResult opa_monte_carlo_m2(const RangingScenario& sc, double gain, long long trials,
                                    std::uint64_t seed) {
    require_m2(sc, "opa_monte_carlo_m2");
    if (sc.noise_photons <= 0.0)
        throw std::invalid_argument("opa_monte_carlo_m2: requires N_B > 0");
    const double high = conditional_mean_photon(sc, gain, 0.0);
    const double low = conditional_mean_photon(sc, gain, std::numbers::pi);
    const long long copies = sc.modes_per_pulse;

    if (high == low) {
        return run_trials(trials, seed, [](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            return uni(rng) < 0.5;
        });
    }
    const long long threshold = ml_threshold(copies, high, low);
    return run_trials(trials, seed, [=](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const bool is_high = uni(rng) < 0.5;
        const long long count = sample_negative_binomial(rng, copies, is_high ? high : low);
        const bool decide_high = count >= threshold;
        return decide_high != is_high;
    });
}

}  // namespace qranging::receiver
