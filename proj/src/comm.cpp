#include "qranging/comm.hpp"

#include "qranging/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qranging::comm {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

bounds::RangingScenario comm_scenario(int slices, long long modes, double photons_per_mode,
                                      double kappa, double noise_photons) {
    bounds::RangingScenario sc;
    sc.num_slices = slices;
    sc.modes_per_pulse = modes;
    sc.signal_photons = slices * photons_per_mode;  // N_S = m n_S
    sc.noise_photons = noise_photons;
    sc.reflectivity = kappa;
    return sc;
}

}  // namespace

double mutual_info_ppm(double p, int m) {
    if (m < 2) throw std::invalid_argument("mutual_info_ppm: need m >= 2");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mutual_info_ppm: p must lie in [0,1]");
    return std::log2(static_cast<double>(m)) + xlog2x(1.0 - p) + xlog2x(p) -
           p * std::log2(static_cast<double>(m - 1));
}

double g_entropy(double n) {
    if (n < 0.0) {
        if (n < -1e-9) throw std::invalid_argument("g_entropy: negative photon number");
        return 0.0;  // rounding of a physically-zero occupancy
    }
    return (n + 1.0) * std::log2(n + 1.0) - xlog2x(n);
}

double classical_capacity(double kappa, double noise_photons, double photons_per_mode) {
    return g_entropy(kappa * photons_per_mode + noise_photons) - g_entropy(noise_photons);
}

double classical_capacity_low_brightness(double kappa, double noise_photons,
                                         double photons_per_mode) {
    if (noise_photons <= 0.0)
        throw std::invalid_argument("classical_capacity_low_brightness: requires N_B > 0");
    return kappa * photons_per_mode / (std::numbers::ln2 * noise_photons);
}

double ea_capacity(double kappa, double noise_photons, double photons_per_mode) {
    const double ns = photons_per_mode;
    const double ns_out = kappa * ns + noise_photons;
    const double d =
        std::sqrt((ns + ns_out + 1.0) * (ns + ns_out + 1.0) - 4.0 * kappa * ns * (ns + 1.0));
    const double a_plus = (d - 1.0 + (ns_out - ns)) / 2.0;
    const double a_minus = (d - 1.0 - (ns_out - ns)) / 2.0;
    return g_entropy(ns) + g_entropy(ns_out) - g_entropy(a_plus) - g_entropy(a_minus);
}

double rate(int slices, long long modes_per_pulse, double photons_per_mode, double kappa,
            double noise_photons, bool asymptotic) {
    const auto sc = comm_scenario(slices, modes_per_pulse, photons_per_mode, kappa, noise_photons);
    const double p = asymptotic ? bounds::entangled_qcb_asymptotic(sc)
                                : bounds::entangled_qcb_full(sc, /*passive_signature=*/true);
    return mutual_info_ppm(p, slices) /
           (static_cast<double>(modes_per_pulse) * static_cast<double>(slices));
}

CommPoint optimal_rate(long long modes_per_pulse, double photons_per_mode, double kappa,
                       double noise_photons) {
    if (modes_per_pulse < 1) throw std::invalid_argument("optimal_rate: need M >= 1");
    if (photons_per_mode <= 0.0) throw std::invalid_argument("optimal_rate: need n_S > 0");

    CommPoint point{};
    point.photons_per_mode = photons_per_mode;
    point.reflectivity = kappa;
    point.noise_photons = noise_photons;
    point.modes_per_pulse = modes_per_pulse;
    point.classical_cap = classical_capacity(kappa, noise_photons, photons_per_mode);
    point.ea_cap = ea_capacity(kappa, noise_photons, photons_per_mode);
    point.optimal_slices = 2;
    point.optimal_rate = 0.0;
    if (kappa <= 0.0) return point;

    const double guide =
        noise_photons / (2.0 * static_cast<double>(modes_per_pulse) * kappa * photons_per_mode);
    const double hi = std::max(1000.0 * guide, 64.0);
    std::set<long long> grid;
    const int points = 160;
    for (int i = 0; i < points; ++i) {
        const double lm = std::log(2.0) + (std::log(hi) - std::log(2.0)) * i / (points - 1);
        grid.insert(std::llround(std::exp(lm)));
    }

    const auto rate_at = [&](long long m) {
        return rate(static_cast<int>(m), modes_per_pulse, photons_per_mode, kappa, noise_photons);
    };
    long long best_m = 2;
    double best_rate = rate_at(2);
    for (long long m : grid) {
        if (m < 2) continue;
        const double r = rate_at(m);
        if (r > best_rate) {
            best_rate = r;
            best_m = m;
        }
    }
    // Local refinement to the neighbouring integers.
    for (;;) {
        if (best_m > 2 && rate_at(best_m - 1) > best_rate) {
            best_rate = rate_at(--best_m);
        } else if (rate_at(best_m + 1) > best_rate) {
            best_rate = rate_at(++best_m);
        } else {
            break;
        }
    }
    point.optimal_slices = static_cast<int>(best_m);
    point.optimal_rate = std::max(best_rate, 0.0);
    return point;
}

}  // namespace qranging::comm
