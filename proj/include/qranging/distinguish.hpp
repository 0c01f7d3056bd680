// distinguish.hpp — Closed-form distinguishability measures for Gaussian
// states: s-overlaps Tr[ρ1^s ρ2^(1-s)], quantum Chernoff exponents, the
// zero-mean Uhlmann fidelity, and the multi-hypothesis exponent reduction.
//
// The analytic routines here are contract-pinned to the truncated-Fock-space
// oracle in fock.hpp; the selfcheck suite exercises that equivalence.

#pragma once

#include "qranging/gaussian.hpp"

#include <span>
#include <vector>

namespace qranging::distinguish {

using gaussian::GaussianState;
using gaussian::Matrix;
using gaussian::Vector;

// V = S · diag(nu_k ⊗ I2) · Sᵀ with S symplectic (S·Ω·Sᵀ = Ω).
struct WilliamsonDecomposition {
    Matrix symplectic;
    Vector nu;  // one symplectic eigenvalue per mode, >= 1
};

WilliamsonDecomposition williamson(const Matrix& cov);

struct OverlapResult {
    double s_star;    // optimizer in [0,1]
    double q_star;    // minimal overlap value in (0,1]
    double exponent;  // -ln q_star
};

// Q_s = Tr[ρ1^s ρ2^(1-s)] for s in (0,1); values at the boundary are the
// support-projector limits, approached continuously (the implementation is
// stable down to s = 1e-12).
double gaussian_overlap(const GaussianState& state1, const GaussianState& state2, double s);

// Maximizes -ln Q_s over s in [0,1].  Q_s is log-convex in s, so -ln Q_s is
// concave and a ternary search is globally correct; explicit endpoint limits
// cover the boundary optima.  `symmetric` short-cuts swap-related pairs
// (for which the optimum sits at s = 1/2 exactly) to a single evaluation.
OverlapResult chernoff_exponent(const GaussianState& state1, const GaussianState& state2,
                                bool symmetric = false);

// Uhlmann fidelity Tr sqrt(sqrt(ρ1)·ρ2·sqrt(ρ1)) for zero-mean states only;
// nonzero means are rejected.
double gaussian_fidelity_zero_mean(const GaussianState& state1, const GaussianState& state2);

// Multiary Chernoff exponent: minimum pairwise exponent.  With `symmetric`
// set (all pairs related by a mode permutation) only the first pair is
// evaluated.
double multihypothesis_exponent(std::span<const GaussianState> states, bool symmetric = false);

}  // namespace qranging::distinguish
