// fock.hpp — Truncated-Fock-basis oracle: brute-force state construction,
// Gaussian unitaries as matrix exponentials, thermal loss, Helstrom limits,
// the pretty-good measurement, fractional-power overlaps and Uhlmann
// fidelity.  Everything here is independent of the analytic Gaussian layer;
// it is the ground truth the analytic routines are validated against.
//
// Multimode indexing is row-major over per-mode cutoffs (mode 0 slowest).
// trace_deficit accumulates the probability mass lost to truncation: exact
// tail mass for the constructors, plus the top-Fock-level occupancy after
// each photon-number-changing operation (a practical proxy, not a bound).

#pragma once

#include "qranging/linalg.hpp"

#include <complex>
#include <span>
#include <vector>

namespace qranging::fock {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

struct FockDensityMatrix {
    std::vector<int> mode_cutoffs;
    CMatrix data;                 // Hermitian, trace one
    double trace_deficit = 0.0;

    int n_modes() const { return static_cast<int>(mode_cutoffs.size()); }
    Eigen::Index dim() const { return data.rows(); }
};

struct TruncatedPureState {
    std::vector<int> mode_cutoffs;
    CVector amplitudes;           // unit norm
    double trace_deficit = 0.0;
};

FockDensityMatrix dm_from_pure(const TruncatedPureState& state);

// ---------------------------------------------------------------- states ---

// Two-mode squeezed vacuum, amplitudes sqrt(N^n / (N+1)^(n+1)) on |n,n>.
TruncatedPureState tmsv_vector(double signal_photons, int cutoff);

// Geometric diagonal thermal state.
FockDensityMatrix thermal_dm(double mean_photons, int cutoff);

// Poissonian coherent amplitudes.
TruncatedPureState coherent_vector(Complex alpha, int cutoff);

// Thermal state displaced by the truncated-space displacement unitary.
FockDensityMatrix displaced_thermal_dm(Complex alpha, double mean_photons, int cutoff);

// ------------------------------------------------------------- unitaries ---

struct Beamsplitter { double transmissivity; };  // a_i -> sqrt(t) a_i + sqrt(1-t) a_j
struct Squeezer { double gain; };                // a_i -> sqrt(G) a_i + sqrt(G-1) a_j†
struct PhaseShift { double theta; };             // a -> e^{-i theta} a
struct Displacement { Complex alpha; };          // a -> a + alpha

FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Beamsplitter gen,
                                         int mode_i, int mode_j);
FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Squeezer gen,
                                         int mode_i, int mode_j);
FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, PhaseShift gen, int mode);
FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Displacement gen, int mode);

// Thermal-loss channel: append a thermal ancilla of mean N_B/(1-kappa),
// beamsplit with transmissivity kappa, trace the ancilla out.
FockDensityMatrix thermal_loss_fock(const FockDensityMatrix& dm, int mode, double kappa,
                                    double noise_photons, int ancilla_cutoff);

// ------------------------------------------------------------- structure ---

FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b);
FockDensityMatrix permute_modes(const FockDensityMatrix& dm, const std::vector<int>& perm);
FockDensityMatrix partial_trace_keep(const FockDensityMatrix& dm, const std::vector<int>& keep);

// ------------------------------------------------------------ functionals ---

double trace_real(const FockDensityMatrix& dm);
double mean_photon_fock(const FockDensityMatrix& dm, int mode);

// Total population of the top Fock level, summed over modes: the truncation
// health indicator used to grow trace_deficit.
double edge_occupancy(const FockDensityMatrix& dm);

// Minimum binary discrimination error (1 - |p0 rho0 - (1-p0) rho1|_1) / 2.
double helstrom_binary(const FockDensityMatrix& rho0, const FockDensityMatrix& rho1, double p0);

// Pretty-good-measurement error.  The square root of the ensemble average is
// pseudo-inverted discarding eigenvalues below 1e-12; the POVM completeness
// on the support is verified to 1e-8.
double pgm_error(std::span<const FockDensityMatrix> states, std::span<const double> priors);

// Tr[rho1^s rho2^(1-s)] and Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)); fractional
// powers by eigendecomposition, eigenvalues below 1e-14 dropped.
double overlap_fock(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2, double s);
double uhlmann_fidelity_fock(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2);

}  // namespace qranging::fock
