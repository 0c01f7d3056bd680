#include "qranging/sweep.hpp"

#include "qranging/comm.hpp"
#include "qranging/fock.hpp"
#include "qranging/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qranging::sweep {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi >= lo) || points < 1)
        throw std::invalid_argument("sweep: invalid logarithmic grid");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    return grid;
}

// Fock-oracle Helstrom/PGM columns for the reduced m=2 classical problem:
// displaced-thermal vs thermal across two modes.  Returns nan when the
// requested cutoff cannot hold the state.
struct FockColumns {
    double helstrom = kNan;
    double pgm = kNan;
    double deficit = kNan;
};

FockColumns reduced_fock_point(double amplitude_squared, double noise_photons, int cutoff) {
    FockColumns out;
    const auto bright =
        fock::displaced_thermal_dm(std::sqrt(amplitude_squared), noise_photons, cutoff);
    const auto dark = fock::thermal_dm(noise_photons, cutoff);
    out.deficit = bright.trace_deficit + dark.trace_deficit;
    if (out.deficit > 1e-6) return out;  // cutoff too small; report deficit only
    const auto rho1 = fock::tensor(bright, dark);
    const auto rho2 = fock::tensor(dark, bright);
    out.helstrom = fock::helstrom_binary(rho1, rho2, 0.5);
    const std::vector<fock::FockDensityMatrix> states{rho1, rho2};
    const std::vector<double> priors{0.5, 0.5};
    out.pgm = fock::pgm_error(states, priors);
    return out;
}

}  // namespace

std::string format_value(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::string Table::to_csv() const {
    std::string out;
    for (const auto& comment : comments) out += "# " + comment + "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_value(row[i]);
        out += "\n";
    }
    return out;
}

Table fig2_sweep(const Fig2Options& options) {
    int slices;
    double noise;
    switch (options.panel) {
        case 'a': slices = 2; noise = 3.0; break;
        case 'b': slices = 3; noise = 1.0; break;
        case 'c': slices = 50; noise = 20.0; break;
        default: throw std::invalid_argument("fig2: panel must be one of a, b, c");
    }
    const bool with_opa = options.panel == 'a';
    const bool with_fock = with_opa && options.fock_cutoff > 0;

    Table table;
    table.header = {"big_m", "p_c_qcb", "p_c_lb", "p_c_dd", "p_e_qcb_full", "p_e_ub"};
    if (with_opa) table.header.push_back("p_opa_exact");
    if (with_fock) {
        table.header.push_back("p_helstrom_fock");
        table.header.push_back("p_pgm_fock");
    }

    const auto grid = log_grid(options.modes_min, options.modes_max, options.points);
    table.rows.assign(grid.size(), {});
    std::vector<double> deficits(grid.size(), 0.0);
    parallel::parallel_for(grid.size(), [&](std::size_t i) {
        bounds::RangingScenario sc;
        sc.num_slices = slices;
        sc.noise_photons = noise;
        sc.signal_photons = 1e-3;
        sc.reflectivity = 0.01;
        sc.modes_per_pulse = std::max<long long>(1, std::llround(grid[i]));

        std::vector<double> row{static_cast<double>(sc.modes_per_pulse),
                                bounds::classical_qcb(sc),
                                bounds::classical_lower_bound(sc),
                                bounds::classical_dd(sc),
                                bounds::entangled_qcb_full(sc, false),
                                bounds::entangled_upper_bound(sc, false)};
        if (with_opa)
            row.push_back(receiver::opa_error_exact_m2(sc, receiver::default_gain(sc)));
        if (with_fock) {
            const auto reduced = bounds::reduce_classical_to_single_mode(sc);
            const auto point =
                reduced_fock_point(reduced.amplitude_squared, noise, options.fock_cutoff);
            row.push_back(point.helstrom);
            row.push_back(point.pgm);
            deficits[i] = point.deficit;
        }
        table.rows[i] = std::move(row);
    });
    if (with_fock) {
        double worst = 0.0;
        for (double d : deficits) worst = std::max(worst, d);
        table.comments.push_back("fock_cutoff=" + std::to_string(options.fock_cutoff) +
                                 " worst_trace_deficit=" + format_value(worst) +
                                 " (rows exceeding 1e-6 report nan)");
    }
    return table;
}

Table fig3_sweep(const Fig3Options& options) {
    Table table;
    table.header = {"n_s", "big_m", "m_star", "r_star", "c_classical", "c_ea", "r_star_over_c",
                    "c_ea_over_c"};
    const auto ns_grid = log_grid(options.ns_min, options.ns_max, options.points);

    const std::size_t total = options.modes_list.size() * ns_grid.size();
    table.rows.assign(total, {});
    parallel::parallel_for(total, [&](std::size_t i) {
        const long long modes = options.modes_list[i / ns_grid.size()];
        const double ns = ns_grid[i % ns_grid.size()];
        const auto point = comm::optimal_rate(modes, ns, options.kappa, options.noise_photons);
        table.rows[i] = {ns,
                         static_cast<double>(modes),
                         static_cast<double>(point.optimal_slices),
                         point.optimal_rate,
                         point.classical_cap,
                         point.ea_cap,
                         point.optimal_rate / point.classical_cap,
                         point.ea_cap / point.classical_cap};
    });
    return table;
}

Table bounds_row(const bounds::RangingScenario& sc, bool passive_signature) {
    const auto report = bounds::bounds_report(sc, passive_signature);
    Table table;
    table.header = {"m",        "big_m",        "n_s",
                    "n_b",      "kappa",        "p_c_qcb",
                    "p_c_lb",   "p_c_dd",       "p_e_qcb_full",
                    "p_e_qcb_asymptotic",       "p_e_ub",
                    "exp_c_qcb", "exp_c_lb",    "exp_e_qcb_full",
                    "exp_e_qcb_asymptotic",     "exp_e_ub"};
    table.rows = {{static_cast<double>(sc.num_slices), static_cast<double>(sc.modes_per_pulse),
                   sc.signal_photons, sc.noise_photons, sc.reflectivity, report.p_c_qcb,
                   report.p_c_lb, report.p_c_dd, report.p_e_qcb_full, report.p_e_qcb_asymptotic,
                   report.p_e_ub, report.exp_c_qcb, report.exp_c_lb, report.exp_e_qcb_full,
                   report.exp_e_qcb_asymptotic, report.exp_e_ub}};
    return table;
}

Table receiver_table(const bounds::RangingScenario& sc, const ReceiverOptions& options) {
    if (!options.exact && !options.monte_carlo)
        throw std::invalid_argument("receiver: nothing to compute (enable exact and/or mc)");
    const double gain = options.gain > 0.0 ? options.gain : receiver::default_gain(sc);

    Table table;
    table.header = {"m", "big_m", "n_s", "n_b", "kappa", "gain"};
    std::vector<double> row{static_cast<double>(sc.num_slices),
                            static_cast<double>(sc.modes_per_pulse), sc.signal_photons,
                            sc.noise_photons, sc.reflectivity, gain};
    if (options.exact) {
        table.header.push_back("p_opa_exact");
        row.push_back(receiver::opa_error_exact_m2(sc, gain));
        table.header.push_back("p_opa_gaussian");
        row.push_back(receiver::opa_error_gaussian_m2(sc, gain));
    }
    if (options.monte_carlo) {
        const auto mc = receiver::opa_monte_carlo_m2(sc, gain, options.trials, options.seed);
        table.header.insert(table.header.end(), {"p_opa_mc", "mc_std_error", "trials"});
        row.insert(row.end(), {mc.error, mc.std_error, static_cast<double>(mc.trials)});
        table.comments.push_back("seed=" + std::to_string(options.seed));
    }
    table.rows = {std::move(row)};
    return table;
}

Table ddmc_table(const bounds::RangingScenario& sc, long long trials, std::uint64_t seed) {
    const auto mc = receiver::dd_monte_carlo(sc, trials, seed);
    Table table;
    table.header = {"m",       "big_m",  "n_s",          "n_b",   "kappa",
                    "p_c_dd",  "p_dd_mc", "mc_std_error", "trials"};
    table.rows = {{static_cast<double>(sc.num_slices), static_cast<double>(sc.modes_per_pulse),
                   sc.signal_photons, sc.noise_photons, sc.reflectivity, bounds::classical_dd(sc),
                   mc.error, mc.std_error, static_cast<double>(mc.trials)}};
    table.comments.push_back("seed=" + std::to_string(seed));
    return table;
}

}  // namespace qranging::sweep
