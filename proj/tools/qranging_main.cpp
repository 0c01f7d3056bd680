// qranging — command-line laboratory for entanglement-assisted ranging and
// pulse-position-modulated EA communication: bound reports, figure sweeps as
// CSV, receiver simulations, and the analytic-vs-oracle selftest.
//
// Exit codes: 0 success, 1 usage error, 2 numerical-validation failure.

#include "qranging/selfcheck.hpp"
#include "qranging/sweep.hpp"
#include "qranging/version.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace qranging;

struct CommonFlags {
    bounds::RangingScenario scenario;
    long long trials = 1000000;
    std::uint64_t seed = 1;
    int cutoff = 0;
    std::string out;
};

void add_scenario_flags(CLI::App* cmd, CommonFlags& flags) {
    flags.scenario.num_slices = 2;
    flags.scenario.modes_per_pulse = 10000;
    flags.scenario.signal_photons = 1e-3;
    flags.scenario.noise_photons = 3.0;
    flags.scenario.reflectivity = 0.01;
    cmd->add_option("--m", flags.scenario.num_slices, "Number of range slices m")
        ->check(CLI::Range(2, 1000000));
    cmd->add_option("--big-m", flags.scenario.modes_per_pulse, "Modes per pulse M")
        ->check(CLI::Range(1LL, 1000000000000LL));
    cmd->add_option("--ns", flags.scenario.signal_photons, "Signal photons per mode N_S")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--nb", flags.scenario.noise_photons, "Noise photons per mode N_B")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--kappa", flags.scenario.reflectivity, "Target reflectivity kappa")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--delta", flags.scenario.slice_width, "Slice width in meters (metadata)")
        ->check(CLI::NonNegativeNumber);
}

void add_output_flag(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out", flags.out, "Write CSV to this path instead of stdout");
}

std::string provenance(const std::string& args, std::uint64_t seed, bool with_seed) {
    std::string line = "qranging " + std::string(kVersion) + " | " + args;
    if (with_seed) line += " | seed=" + std::to_string(seed);
    return line;
}

// Output is buffered and written only after the computation succeeded, so
// invalid input never leaves a partial file behind.
int emit(const sweep::Table& table, const std::string& out_path) {
    const std::string csv = table.to_csv();
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    file << csv;
    return file.good() ? 0 : 1;
}

std::string joined_args(int argc, char** argv) {
    std::string all;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) all += ' ';
        all += argv[i];
    }
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for entanglement-assisted quantum ranging"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Read key=value defaults (flags take precedence)");
    app.require_subcommand(1);
    const std::string args = joined_args(argc, argv);

    // ---- bounds ------------------------------------------------------------
    auto* cmd_bounds = app.add_subcommand("bounds", "All closed-form bounds at one scenario point");
    CommonFlags bounds_flags;
    bool passive_signature = false;
    add_scenario_flags(cmd_bounds, bounds_flags);
    add_output_flag(cmd_bounds, bounds_flags);
    cmd_bounds->add_flag("--passive-signature", passive_signature,
                         "Keep the kappa N_S brightness term in the return covariance");

    // ---- fig2 --------------------------------------------------------------
    auto* cmd_fig2 = app.add_subcommand("fig2", "Error-probability sweep versus M (CSV)");
    sweep::Fig2Options fig2;
    std::string panel = "a";
    std::string fig2_out;
    cmd_fig2->add_option("--panel", panel, "Panel: a (m=2, N_B=3), b (m=3, N_B=1), c (m=50, N_B=20)")
        ->check(CLI::IsMember({"a", "b", "c"}));
    cmd_fig2->add_option("--m-min", fig2.modes_min, "Smallest M on the grid")
        ->check(CLI::PositiveNumber);
    cmd_fig2->add_option("--m-max", fig2.modes_max, "Largest M on the grid")
        ->check(CLI::PositiveNumber);
    cmd_fig2->add_option("--points", fig2.points, "Grid points")->check(CLI::Range(1, 10000));
    cmd_fig2->add_option("--cutoff", fig2.fock_cutoff,
                         "Per-mode Fock cutoff enabling the panel-a Helstrom/PGM oracle columns")
        ->check(CLI::Range(0, 200));
    cmd_fig2->add_option("--out", fig2_out, "Write CSV to this path instead of stdout");

    // ---- fig3 --------------------------------------------------------------
    auto* cmd_fig3 = app.add_subcommand("fig3", "EA communication rates versus n_S (CSV)");
    sweep::Fig3Options fig3;
    std::string fig3_out;
    cmd_fig3->add_option("--big-m-list", fig3.modes_list, "Repetition-mode counts M");
    cmd_fig3->add_option("--ns-min", fig3.ns_min, "Smallest n_S")->check(CLI::PositiveNumber);
    cmd_fig3->add_option("--ns-max", fig3.ns_max, "Largest n_S")->check(CLI::PositiveNumber);
    cmd_fig3->add_option("--points", fig3.points, "Grid points per M")->check(CLI::Range(1, 10000));
    cmd_fig3->add_option("--kappa", fig3.kappa, "Channel transmissivity")
        ->check(CLI::Range(0.0, 1.0));
    cmd_fig3->add_option("--nb", fig3.noise_photons, "Channel noise photons")
        ->check(CLI::NonNegativeNumber);
    cmd_fig3->add_option("--out", fig3_out, "Write CSV to this path instead of stdout");

    // ---- receiver ----------------------------------------------------------
    auto* cmd_receiver = app.add_subcommand("receiver", "OPA receiver error at one scenario point");
    CommonFlags receiver_flags;
    sweep::ReceiverOptions receiver_options;
    receiver_options.exact = false;
    add_scenario_flags(cmd_receiver, receiver_flags);
    add_output_flag(cmd_receiver, receiver_flags);
    cmd_receiver->add_flag("--exact", receiver_options.exact, "Exact threshold-decision error");
    cmd_receiver->add_flag("--mc", receiver_options.monte_carlo, "Monte Carlo estimate");
    cmd_receiver->add_option("--trials", receiver_options.trials, "Monte Carlo trials")
        ->check(CLI::Range(1LL, 10000000000LL));
    cmd_receiver->add_option("--seed", receiver_options.seed, "Monte Carlo seed");
    cmd_receiver->add_option("--gain", receiver_options.gain,
                             "OPA gain override (default 1 + m sqrt(N_S)/N_B)");

    // ---- ddmc --------------------------------------------------------------
    auto* cmd_ddmc = app.add_subcommand("ddmc", "Direct-detection Monte Carlo vs the closed form");
    CommonFlags ddmc_flags;
    add_scenario_flags(cmd_ddmc, ddmc_flags);
    add_output_flag(cmd_ddmc, ddmc_flags);
    cmd_ddmc->add_option("--trials", ddmc_flags.trials, "Monte Carlo trials")
        ->check(CLI::Range(1LL, 10000000000LL));
    cmd_ddmc->add_option("--seed", ddmc_flags.seed, "Monte Carlo seed");

    // ---- selftest ----------------------------------------------------------
    auto* cmd_selftest = app.add_subcommand(
        "selftest", "Run the analytic-vs-oracle validation and invariant suites");
    selfcheck::Options selftest;
    cmd_selftest->add_option("--pairs", selftest.pairs, "Randomized ensemble pairs")
        ->check(CLI::Range(3, 100000));
    cmd_selftest->add_option("--cutoff", selftest.cutoff_override,
                             "Force this per-mode Fock cutoff (low values must fail)")
        ->check(CLI::Range(0, 200));
    cmd_selftest->add_option("--trials", selftest.trials, "Monte Carlo trials")
        ->check(CLI::Range(100LL, 10000000000LL));
    cmd_selftest->add_option("--seed", selftest.seed, "Ensemble seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_bounds->parsed()) {
            bounds_flags.scenario.validate();
            auto table = sweep::bounds_row(bounds_flags.scenario, passive_signature);
            table.comments.insert(table.comments.begin(), provenance(args, 0, false));
            return emit(table, bounds_flags.out);
        }
        if (cmd_fig2->parsed()) {
            fig2.panel = panel[0];
            auto table = sweep::fig2_sweep(fig2);
            table.comments.insert(table.comments.begin(), provenance(args, 0, false));
            return emit(table, fig2_out);
        }
        if (cmd_fig3->parsed()) {
            auto table = sweep::fig3_sweep(fig3);
            table.comments.insert(table.comments.begin(), provenance(args, 0, false));
            return emit(table, fig3_out);
        }
        if (cmd_receiver->parsed()) {
            receiver_flags.scenario.validate();
            if (!receiver_options.exact && !receiver_options.monte_carlo)
                receiver_options.exact = true;
            auto table = sweep::receiver_table(receiver_flags.scenario, receiver_options);
            table.comments.insert(table.comments.begin(),
                                  provenance(args, receiver_options.seed,
                                             receiver_options.monte_carlo));
            return emit(table, receiver_flags.out);
        }
        if (cmd_ddmc->parsed()) {
            ddmc_flags.scenario.validate();
            auto table = sweep::ddmc_table(ddmc_flags.scenario, ddmc_flags.trials,
                                           ddmc_flags.seed);
            table.comments.insert(table.comments.begin(),
                                  provenance(args, ddmc_flags.seed, true));
            return emit(table, ddmc_flags.out);
        }
        if (cmd_selftest->parsed()) {
            std::printf("qranging %s selftest (pairs=%d, trials=%lld, seed=%llu%s)\n", kVersion,
                        selftest.pairs, static_cast<long long>(selftest.trials),
                        static_cast<unsigned long long>(selftest.seed),
                        selftest.cutoff_override > 0
                            ? (", forced cutoff=" + std::to_string(selftest.cutoff_override)).c_str()
                            : "");
            const auto results = selfcheck::run_all(selftest);
            for (const auto& r : results)
                std::printf("[%s] %s: deviation=%s tolerance=%s\n", r.passed ? "PASS" : "FAIL",
                            r.name.c_str(), sweep::format_value(r.deviation).c_str(),
                            sweep::format_value(r.tolerance).c_str());
            const bool ok = selfcheck::all_passed(results);
            std::printf("%s: %zu checks\n", ok ? "ALL PASS" : "FAILURES PRESENT", results.size());
            return ok ? 0 : 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
