// selfcheck.hpp — the analytic-vs-oracle validation suites shared by the CLI
// `selftest` subcommand and the acceptance tests: randomized Gaussian-pair
// overlap and fidelity equivalence, direct-detection closed-form checks, and
// the structural invariants.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qranging::selfcheck {

struct CheckResult {
    std::string name;
    double deviation;   // worst measured deviation
    double tolerance;
    bool passed;
};

struct Options {
    int pairs = 108;           // randomized ensemble size (>= 100 for acceptance)
    int cutoff_override = 0;   // > 0 forces this per-mode Fock cutoff
    long long trials = 1000000;
    std::uint64_t seed = 20250810;
};

// Randomized 1-2-mode Gaussian pairs with per-mode <n> <= 1: analytic Q_s
// against the Fock oracle at s in {0.1,...,0.9}, plus the ensemble
// trace-deficit budget.
std::vector<CheckResult> oracle_overlap_checks(const Options& options);

// Zero-mean subset of the same ensemble: analytic fidelity against the
// Uhlmann oracle, plus the three-mode hypothesis pair at N_S=1e-3,
// kappa=0.01, N_B=0.2.
std::vector<CheckResult> oracle_fidelity_checks(const Options& options);

// Direct detection: Monte Carlo against the closed form for m in {2,3},
// the m=2 single-exponential reduction, and the high-noise fitted exponent.
std::vector<CheckResult> direct_detection_checks(const Options& options);

// OPA config invariants, PPM mutual-information endpoints, symplectic-form
// preservation, and CSV byte-determinism.
std::vector<CheckResult> structural_checks(const Options& options);

std::vector<CheckResult> run_all(const Options& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qranging::selfcheck
