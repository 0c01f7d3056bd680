#include "qranging/fock.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qranging::fock {

namespace {

constexpr double kPinvThreshold = 1e-12;   // pseudo-inverse cut for the PGM
constexpr double kPowerFloor = 1e-14;      // eigenvalue floor for fractional powers

using SpMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

Eigen::Index total_dim(const std::vector<int>& cutoffs) {
    Eigen::Index d = 1;
    for (int c : cutoffs) {
        if (c < 1) throw std::invalid_argument("fock: cutoffs must be >= 1");
        d *= c;
    }
    return d;
}

std::vector<Eigen::Index> strides_of(const std::vector<int>& cutoffs) {
    std::vector<Eigen::Index> s(cutoffs.size());
    Eigen::Index acc = 1;
    for (int k = static_cast<int>(cutoffs.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= cutoffs[k];
    }
    return s;
}

void check_mode(const FockDensityMatrix& dm, int mode, const char* who) {
    if (mode < 0 || mode >= dm.n_modes())
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}

void hermitize(CMatrix& m) { m = ((m + m.adjoint()) / 2.0).eval(); }

// exp of an anti-Hermitian generator via scaling-and-squaring with a sparse
// Taylor iteration; the result is unitary to machine precision.
CMatrix unitary_exp(const SpMat& gen) {
    const Eigen::Index d = gen.rows();
    double norm1 = 0.0;
    for (int k = 0; k < gen.outerSize(); ++k) {
        double col = 0.0;
        for (SpMat::InnerIterator it(gen, k); it; ++it) col += std::abs(it.value());
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale > 1.0) {
        scale /= 2.0;
        ++squarings;
    }
    SpMat scaled = gen * scale;
    CMatrix result = CMatrix::Identity(d, d);
    CMatrix term = CMatrix::Identity(d, d);
    for (int j = 1; j <= 60; ++j) {
        term = (scaled * term).eval() / static_cast<double>(j);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

// Applies a unitary acting on `targets` (distinct modes, in order) to the
// state: modes are permuted to the front, U ⊗ I is applied, and the
// permutation undone.
FockDensityMatrix conjugate_on_modes(const FockDensityMatrix& dm, const std::vector<int>& targets,
                                     const CMatrix& u) {
    std::vector<int> perm = targets;
    for (int m = 0; m < dm.n_modes(); ++m)
        if (std::find(targets.begin(), targets.end(), m) == targets.end()) perm.push_back(m);

    FockDensityMatrix front = permute_modes(dm, perm);
    const Eigen::Index d = front.dim();
    const Eigen::Index rest = d / u.rows();

    CMatrix lifted = CMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < u.rows(); ++a)
        for (Eigen::Index b = 0; b < u.cols(); ++b)
            if (u(a, b) != Complex(0.0, 0.0))
                lifted.block(a * rest, b * rest, rest, rest) =
                    u(a, b) * CMatrix::Identity(rest, rest);

    front.data = lifted * front.data * lifted.adjoint();
    hermitize(front.data);

    std::vector<int> inverse(perm.size());
    for (int k = 0; k < static_cast<int>(perm.size()); ++k) inverse[perm[k]] = k;
    FockDensityMatrix out = permute_modes(front, inverse);
    out.trace_deficit = dm.trace_deficit + edge_occupancy(out);
    return out;
}

// Two-mode generator helpers on the pair space (cutoffs ci, cj).
SpMat beamsplitter_generator(int ci, int cj, double theta) {
    std::vector<Triplet> trip;
    for (int m = 0; m < ci; ++m)
        for (int n = 0; n < cj; ++n) {
            const Eigen::Index col = static_cast<Eigen::Index>(m) * cj + n;
            if (m + 1 < ci && n - 1 >= 0)  // a† b
                trip.emplace_back((m + 1) * cj + (n - 1), col,
                                  theta * std::sqrt(double(m + 1) * n));
            if (m - 1 >= 0 && n + 1 < cj)  // -a b†
                trip.emplace_back((m - 1) * cj + (n + 1), col,
                                  -theta * std::sqrt(double(m) * (n + 1)));
        }
    SpMat gen(static_cast<Eigen::Index>(ci) * cj, static_cast<Eigen::Index>(ci) * cj);
    gen.setFromTriplets(trip.begin(), trip.end());
    return gen;
}

SpMat squeezer_generator(int ci, int cj, double r) {
    std::vector<Triplet> trip;
    for (int m = 0; m < ci; ++m)
        for (int n = 0; n < cj; ++n) {
            const Eigen::Index col = static_cast<Eigen::Index>(m) * cj + n;
            if (m + 1 < ci && n + 1 < cj)  // a† b†
                trip.emplace_back((m + 1) * cj + (n + 1), col,
                                  r * std::sqrt(double(m + 1) * (n + 1)));
            if (m - 1 >= 0 && n - 1 >= 0)  // -a b
                trip.emplace_back((m - 1) * cj + (n - 1), col,
                                  -r * std::sqrt(double(m) * n));
        }
    SpMat gen(static_cast<Eigen::Index>(ci) * cj, static_cast<Eigen::Index>(ci) * cj);
    gen.setFromTriplets(trip.begin(), trip.end());
    return gen;
}

SpMat displacement_generator(int c, Complex alpha) {
    std::vector<Triplet> trip;
    for (int n = 0; n + 1 < c; ++n) {
        trip.emplace_back(n + 1, n, alpha * std::sqrt(double(n + 1)));        // alpha a†
        trip.emplace_back(n, n + 1, -std::conj(alpha) * std::sqrt(double(n + 1)));
    }
    SpMat gen(c, c);
    gen.setFromTriplets(trip.begin(), trip.end());
    return gen;
}

// Eigendecomposition with the small-eigenvalue floor applied.
struct Spectrum {
    Eigen::VectorXd values;
    CMatrix vectors;
};

Spectrum floored_spectrum(const FockDensityMatrix& dm, double floor) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(dm.data);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("fock: eigendecomposition failed");
    Spectrum s{eig.eigenvalues(), eig.eigenvectors()};
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
        if (s.values(i) < floor) s.values(i) = 0.0;
    return s;
}

}  // namespace

FockDensityMatrix dm_from_pure(const TruncatedPureState& state) {
    FockDensityMatrix dm;
    dm.mode_cutoffs = state.mode_cutoffs;
    dm.data = state.amplitudes * state.amplitudes.adjoint();
    dm.trace_deficit = state.trace_deficit;
    return dm;
}

TruncatedPureState tmsv_vector(double signal_photons, int cutoff) {
    if (signal_photons < 0.0) throw std::invalid_argument("tmsv_vector: negative photon number");
    if (cutoff < 2) throw std::invalid_argument("tmsv_vector: cutoff must be >= 2");
    TruncatedPureState state;
    state.mode_cutoffs = {cutoff, cutoff};
    state.amplitudes = CVector::Zero(static_cast<Eigen::Index>(cutoff) * cutoff);
    const double lambda = signal_photons / (signal_photons + 1.0);
    double norm2 = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        const double amp2 = std::pow(lambda, n) / (signal_photons + 1.0);
        state.amplitudes(static_cast<Eigen::Index>(n) * cutoff + n) = std::sqrt(amp2);
        norm2 += amp2;
    }
    state.trace_deficit = std::max(1.0 - norm2, 0.0);
    state.amplitudes /= std::sqrt(norm2);
    return state;
}

FockDensityMatrix thermal_dm(double mean_photons, int cutoff) {
    if (mean_photons < 0.0) throw std::invalid_argument("thermal_dm: negative photon number");
    if (cutoff < 1) throw std::invalid_argument("thermal_dm: cutoff must be >= 1");
    FockDensityMatrix dm;
    dm.mode_cutoffs = {cutoff};
    dm.data = CMatrix::Zero(cutoff, cutoff);
    const double lambda = mean_photons / (mean_photons + 1.0);
    double norm = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        const double p = std::pow(lambda, n) / (mean_photons + 1.0);
        dm.data(n, n) = p;
        norm += p;
    }
    dm.trace_deficit = std::max(1.0 - norm, 0.0);
    dm.data /= norm;
    return dm;
}

TruncatedPureState coherent_vector(Complex alpha, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("coherent_vector: cutoff must be >= 1");
    TruncatedPureState state;
    state.mode_cutoffs = {cutoff};
    state.amplitudes = CVector::Zero(cutoff);
    Complex amp = 1.0;  // relative amplitudes alpha^n / sqrt(n!)
    state.amplitudes(0) = amp;
    for (int n = 1; n < cutoff; ++n) {
        amp *= alpha / std::sqrt(double(n));
        state.amplitudes(n) = amp;
    }
    const double kept = state.amplitudes.squaredNorm() * std::exp(-std::norm(alpha));
    state.trace_deficit = std::max(1.0 - kept, 0.0);
    state.amplitudes /= state.amplitudes.norm();
    return state;
}

FockDensityMatrix displaced_thermal_dm(Complex alpha, double mean_photons, int cutoff) {
    return apply_gaussian_unitary(thermal_dm(mean_photons, cutoff), Displacement{alpha}, 0);
}

FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Beamsplitter gen,
                                         int mode_i, int mode_j) {
    check_mode(dm, mode_i, "beamsplitter");
    check_mode(dm, mode_j, "beamsplitter");
    if (mode_i == mode_j) throw std::invalid_argument("beamsplitter: modes must differ");
    if (gen.transmissivity < 0.0 || gen.transmissivity > 1.0)
        throw std::invalid_argument("beamsplitter: transmissivity must lie in [0,1]");
    const double theta = std::acos(std::sqrt(gen.transmissivity));
    const CMatrix u = unitary_exp(
        beamsplitter_generator(dm.mode_cutoffs[mode_i], dm.mode_cutoffs[mode_j], theta));
    return conjugate_on_modes(dm, {mode_i, mode_j}, u);
}

FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Squeezer gen,
                                         int mode_i, int mode_j) {
    check_mode(dm, mode_i, "squeezer");
    check_mode(dm, mode_j, "squeezer");
    if (mode_i == mode_j) throw std::invalid_argument("squeezer: modes must differ");
    if (gen.gain < 1.0) throw std::invalid_argument("squeezer: gain must be >= 1");
    const double r = std::acosh(std::sqrt(gen.gain));
    const CMatrix u =
        unitary_exp(squeezer_generator(dm.mode_cutoffs[mode_i], dm.mode_cutoffs[mode_j], r));
    return conjugate_on_modes(dm, {mode_i, mode_j}, u);
}

FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, PhaseShift gen, int mode) {
    check_mode(dm, mode, "phase_shift");
    FockDensityMatrix out = dm;
    const auto strides = strides_of(dm.mode_cutoffs);
    const int c = dm.mode_cutoffs[mode];
    const Eigen::Index d = dm.dim();
    for (Eigen::Index i = 0; i < d; ++i) {
        const int ni = static_cast<int>((i / strides[mode]) % c);
        for (Eigen::Index j = 0; j < d; ++j) {
            const int nj = static_cast<int>((j / strides[mode]) % c);
            out.data(i, j) *= std::polar(1.0, -gen.theta * (ni - nj));
        }
    }
    return out;
}

FockDensityMatrix apply_gaussian_unitary(const FockDensityMatrix& dm, Displacement gen, int mode) {
    check_mode(dm, mode, "displacement");
    const CMatrix u = unitary_exp(displacement_generator(dm.mode_cutoffs[mode], gen.alpha));
    return conjugate_on_modes(dm, {mode}, u);
}

FockDensityMatrix thermal_loss_fock(const FockDensityMatrix& dm, int mode, double kappa,
                                    double noise_photons, int ancilla_cutoff) {
    check_mode(dm, mode, "thermal_loss_fock");
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("thermal_loss_fock: kappa must lie in [0,1]");
    if (kappa == 1.0) {
        if (noise_photons > 0.0)
            throw std::invalid_argument("thermal_loss_fock: kappa = 1 requires N_B = 0");
        return dm;
    }
    const FockDensityMatrix ancilla = thermal_dm(noise_photons / (1.0 - kappa), ancilla_cutoff);
    FockDensityMatrix joint = tensor(dm, ancilla);
    joint = apply_gaussian_unitary(joint, Beamsplitter{kappa}, mode, dm.n_modes());
    std::vector<int> keep(dm.n_modes());
    std::iota(keep.begin(), keep.end(), 0);
    return partial_trace_keep(joint, keep);
}

FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    FockDensityMatrix out;
    out.mode_cutoffs = a.mode_cutoffs;
    out.mode_cutoffs.insert(out.mode_cutoffs.end(), b.mode_cutoffs.begin(), b.mode_cutoffs.end());
    const Eigen::Index da = a.dim(), db = b.dim();
    out.data.resize(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.data.block(i * db, j * db, db, db) = a.data(i, j) * b.data;
    out.trace_deficit = a.trace_deficit + b.trace_deficit;
    return out;
}

FockDensityMatrix permute_modes(const FockDensityMatrix& dm, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != dm.n_modes())
        throw std::invalid_argument("permute_modes: permutation size mismatch");
    std::vector<int> new_cutoffs(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) new_cutoffs[k] = dm.mode_cutoffs[perm[k]];

    const auto old_strides = strides_of(dm.mode_cutoffs);
    const Eigen::Index d = dm.dim();
    std::vector<Eigen::Index> map(d);
    const auto new_strides = strides_of(new_cutoffs);
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::Index old_index = 0;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            const int digit = static_cast<int>((i / new_strides[k]) % new_cutoffs[k]);
            old_index += digit * old_strides[perm[k]];
        }
        map[i] = old_index;
    }
    FockDensityMatrix out;
    out.mode_cutoffs = std::move(new_cutoffs);
    out.trace_deficit = dm.trace_deficit;
    out.data.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out.data(i, j) = dm.data(map[i], map[j]);
    return out;
}

FockDensityMatrix partial_trace_keep(const FockDensityMatrix& dm, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace_keep: no modes kept");
    for (int m : keep) check_mode(dm, m, "partial_trace_keep");
    std::vector<int> drop;
    for (int m = 0; m < dm.n_modes(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) drop.push_back(m);

    const auto strides = strides_of(dm.mode_cutoffs);
    std::vector<int> kept_cutoffs;
    for (int m : keep) kept_cutoffs.push_back(dm.mode_cutoffs[m]);
    const Eigen::Index d_out = total_dim(kept_cutoffs);
    const auto out_strides = strides_of(kept_cutoffs);

    std::vector<Eigen::Index> base(d_out, 0);
    for (Eigen::Index i = 0; i < d_out; ++i)
        for (std::size_t k = 0; k < keep.size(); ++k)
            base[i] += ((i / out_strides[k]) % kept_cutoffs[k]) * strides[keep[k]];

    std::vector<int> drop_cutoffs;
    for (int m : drop) drop_cutoffs.push_back(dm.mode_cutoffs[m]);
    const Eigen::Index d_drop = drop.empty() ? 1 : total_dim(drop_cutoffs);
    const auto drop_strides = strides_of(drop_cutoffs);
    std::vector<Eigen::Index> offset(d_drop, 0);
    for (Eigen::Index t = 0; t < d_drop; ++t)
        for (std::size_t k = 0; k < drop.size(); ++k)
            offset[t] += ((t / drop_strides[k]) % drop_cutoffs[k]) * strides[drop[k]];

    FockDensityMatrix out;
    out.mode_cutoffs = std::move(kept_cutoffs);
    out.trace_deficit = dm.trace_deficit;
    out.data = CMatrix::Zero(d_out, d_out);
    for (Eigen::Index i = 0; i < d_out; ++i)
        for (Eigen::Index j = 0; j < d_out; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < d_drop; ++t)
                sum += dm.data(base[i] + offset[t], base[j] + offset[t]);
            out.data(i, j) = sum;
        }
    return out;
}

double trace_real(const FockDensityMatrix& dm) { return dm.data.trace().real(); }

double mean_photon_fock(const FockDensityMatrix& dm, int mode) {
    check_mode(dm, mode, "mean_photon_fock");
    const auto strides = strides_of(dm.mode_cutoffs);
    const int c = dm.mode_cutoffs[mode];
    double total = 0.0;
    for (Eigen::Index i = 0; i < dm.dim(); ++i)
        total += static_cast<double>((i / strides[mode]) % c) * dm.data(i, i).real();
    return total;
}

double edge_occupancy(const FockDensityMatrix& dm) {
    const auto strides = strides_of(dm.mode_cutoffs);
    double mass = 0.0;
    for (int mode = 0; mode < dm.n_modes(); ++mode) {
        if (dm.mode_cutoffs[mode] < 2) continue;
        const int top = dm.mode_cutoffs[mode] - 1;
        for (Eigen::Index i = 0; i < dm.dim(); ++i)
            if (static_cast<int>((i / strides[mode]) % dm.mode_cutoffs[mode]) == top)
                mass += std::abs(dm.data(i, i).real());
    }
    return mass;
}

double helstrom_binary(const FockDensityMatrix& rho0, const FockDensityMatrix& rho1, double p0) {
    if (rho0.dim() != rho1.dim())
        throw std::invalid_argument("helstrom_binary: dimension mismatch");
    if (p0 < 0.0 || p0 > 1.0) throw std::invalid_argument("helstrom_binary: p0 must lie in [0,1]");
    const CMatrix delta = p0 * rho0.data - (1.0 - p0) * rho1.data;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(delta, Eigen::EigenvaluesOnly);
    return (1.0 - eig.eigenvalues().cwiseAbs().sum()) / 2.0;
}

double pgm_error(std::span<const FockDensityMatrix> states, std::span<const double> priors) {
    if (states.size() < 2) throw std::invalid_argument("pgm_error: need at least 2 states");
    if (states.size() != priors.size())
        throw std::invalid_argument("pgm_error: priors size mismatch");
    const Eigen::Index d = states[0].dim();
    CMatrix average = CMatrix::Zero(d, d);
    for (std::size_t h = 0; h < states.size(); ++h) {
        if (states[h].dim() != d) throw std::invalid_argument("pgm_error: dimension mismatch");
        if (priors[h] < 0.0) throw std::invalid_argument("pgm_error: negative prior");
        average += priors[h] * states[h].data;
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(average);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < d; ++i)
        if (eig.eigenvalues()(i) > kPinvThreshold) kept.push_back(i);
    if (kept.empty()) throw std::runtime_error("pgm_error: ensemble average has empty support");

    CMatrix basis(d, kept.size());
    Eigen::VectorXd inv_root(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        basis.col(k) = eig.eigenvectors().col(kept[k]);
        inv_root(k) = 1.0 / std::sqrt(eig.eigenvalues()(kept[k]));
    }
    const CMatrix pinv_root = basis * inv_root.asDiagonal() * basis.adjoint();
    const CMatrix support = basis * basis.adjoint();

    double success = 0.0;
    CMatrix povm_sum = CMatrix::Zero(d, d);
    for (std::size_t h = 0; h < states.size(); ++h) {
        const CMatrix g = pinv_root * states[h].data;
        success += priors[h] * priors[h] * (g * g).trace().real();
        povm_sum += priors[h] * (g * pinv_root);
    }
    if ((povm_sum - support).cwiseAbs().maxCoeff() > 1e-8)
        throw std::runtime_error("pgm_error: POVM does not resolve the support projector");
    return 1.0 - success;
}

double overlap_fock(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2, double s) {
    if (rho1.dim() != rho2.dim()) throw std::invalid_argument("overlap_fock: dimension mismatch");
    if (s <= 0.0 || s >= 1.0) throw std::invalid_argument("overlap_fock: s must lie in (0,1)");
    const Spectrum a = floored_spectrum(rho1, kPowerFloor);
    const Spectrum b = floored_spectrum(rho2, kPowerFloor);
    const Eigen::MatrixXd weights = (a.vectors.adjoint() * b.vectors).cwiseAbs2();
    double q = 0.0;
    for (Eigen::Index i = 0; i < a.values.size(); ++i) {
        if (a.values(i) == 0.0) continue;
        const double ls = std::pow(a.values(i), s);
        for (Eigen::Index j = 0; j < b.values.size(); ++j) {
            if (b.values(j) == 0.0) continue;
            q += ls * std::pow(b.values(j), 1.0 - s) * weights(i, j);
        }
    }
    return q;
}

double uhlmann_fidelity_fock(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw std::invalid_argument("uhlmann_fidelity_fock: dimension mismatch");
    const Spectrum a = floored_spectrum(rho1, 0.0);
    const CMatrix root1 =
        a.vectors * a.values.cwiseSqrt().asDiagonal() * a.vectors.adjoint();
    const CMatrix inner = root1 * rho2.data * root1;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(inner, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
        f += std::sqrt(std::max(eig.eigenvalues()(i), 0.0));
    return std::min(f, 1.0);
}

}  // namespace qranging::fock
