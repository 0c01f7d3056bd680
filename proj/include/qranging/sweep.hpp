// sweep.hpp — CSV table builders behind the CLI: figure sweeps, single-point
// bound reports and receiver runs.  Tables render with one header row,
// 12-significant-digit values and '#'-prefixed provenance comments; sweep
// points are computed concurrently but assembled in grid order, so output
// bytes depend only on flags and seed.

#pragma once

#include "qranging/bounds.hpp"
#include "qranging/receiver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qranging::sweep {

struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
};

std::string format_value(double value);  // 12 significant digits

struct Fig2Options {
    char panel = 'a';           // a: m=2, N_B=3; b: m=3, N_B=1; c: m=50, N_B=20
    double modes_min = 1e3;
    double modes_max = 1e7;
    int points = 25;
    int fock_cutoff = 0;        // > 0 adds panel-a Helstrom/PGM oracle columns
};

// Error-probability bounds versus the number of modes M at the fixed panel
// parameters N_S = 0.001, kappa = 0.01.
Table fig2_sweep(const Fig2Options& options);

struct Fig3Options {
    std::vector<long long> modes_list = {100, 1000, 10000};
    double ns_min = 1e-6;
    double ns_max = 1e-2;
    int points = 25;
    double kappa = 0.1;
    double noise_photons = 20.0;
};

// Optimized EA communication rates versus the signal brightness n_S.
Table fig3_sweep(const Fig3Options& options);

Table bounds_row(const bounds::RangingScenario& sc, bool passive_signature);

struct ReceiverOptions {
    bool exact = true;
    bool monte_carlo = false;
    long long trials = 1000000;
    std::uint64_t seed = 1;
    double gain = 0.0;  // <= 0 selects the default gain
};

Table receiver_table(const bounds::RangingScenario& sc, const ReceiverOptions& options);

Table ddmc_table(const bounds::RangingScenario& sc, long long trials, std::uint64_t seed);

}  // namespace qranging::sweep
