#include "doctest.h"

#include "qranging/distinguish.hpp"
#include "qranging/fock.hpp"
#include "qranging/gaussian.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace qranging;
using fock::Complex;
using fock::FockDensityMatrix;

TEST_CASE("thermal and coherent constructors") {
    const auto vac = fock::thermal_dm(0.0, 8);
    CHECK(vac.data(0, 0).real() == doctest::Approx(1.0));
    CHECK(fock::trace_real(vac) == doctest::Approx(1.0));

    const auto th = fock::thermal_dm(0.5, 40);
    CHECK(th.trace_deficit < 1e-12);
    CHECK(fock::mean_photon_fock(th, 0) == doctest::Approx(0.5).epsilon(1e-10));

    const auto c0 = fock::coherent_vector(0.0, 5);
    CHECK(std::abs(c0.amplitudes(0)) == doctest::Approx(1.0));

    const auto c = fock::coherent_vector(Complex(0.4, 0.3), 30);
    CHECK(c.trace_deficit < 1e-12);
    CHECK(fock::mean_photon_fock(fock::dm_from_pure(c), 0) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("tmsv amplitudes and marginal") {
    const auto tm = fock::tmsv_vector(1.0, 60);
    // |n,n> amplitude is proportional to 2^{-(n+1)/2} at N_S = 1.
    const double a0 = std::abs(tm.amplitudes(0));
    const double a1 = std::abs(tm.amplitudes(61));
    CHECK(a1 / a0 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

    const auto reduced = fock::partial_trace_keep(fock::dm_from_pure(fock::tmsv_vector(0.4, 30)),
                                                  {0});
    const auto th = fock::thermal_dm(0.4, 30);
    CHECK((reduced.data - th.data).cwiseAbs().maxCoeff() < 1e-10);

    CHECK(fock::tmsv_vector(0.0, 4).amplitudes(0) == Complex(1.0, 0.0));
}

TEST_CASE("displacement of vacuum gives the closed-form coherent state") {
    const Complex alpha(0.35, -0.2);
    const auto displaced = fock::displaced_thermal_dm(alpha, 0.0, 30);
    const auto coherent = fock::dm_from_pure(fock::coherent_vector(alpha, 30));
    CHECK((displaced.data - coherent.data).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("beamsplitter conserves photons and tau=1 is the identity") {
    const auto two = fock::tensor(fock::thermal_dm(0.3, 14),
                                  fock::dm_from_pure(fock::coherent_vector(0.5, 14)));
    const auto same = fock::apply_gaussian_unitary(two, fock::Beamsplitter{1.0}, 0, 1);
    CHECK((same.data - two.data).cwiseAbs().maxCoeff() < 1e-12);

    const auto mixed = fock::apply_gaussian_unitary(two, fock::Beamsplitter{0.63}, 0, 1);
    const double before = fock::mean_photon_fock(two, 0) + fock::mean_photon_fock(two, 1);
    const double after = fock::mean_photon_fock(mixed, 0) + fock::mean_photon_fock(mixed, 1);
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("squeezer on vacuum matches the tmsv constructor") {
    const double gain = 1.3;
    auto vac2 = fock::tensor(fock::thermal_dm(0.0, 24), fock::thermal_dm(0.0, 24));
    const auto squeezed = fock::apply_gaussian_unitary(vac2, fock::Squeezer{gain}, 0, 1);
    const auto reference = fock::dm_from_pure(fock::tmsv_vector(gain - 1.0, 24));
    CHECK((squeezed.data - reference.data).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(fock::mean_photon_fock(squeezed, 0) == doctest::Approx(gain - 1.0).epsilon(1e-8));
}

TEST_CASE("phase shift matches the gaussian layer on a displaced state") {
    const Complex alpha(0.5, 0.1);
    const double theta = 0.77;
    auto dm = fock::displaced_thermal_dm(alpha, 0.2, 22);
    dm = fock::apply_gaussian_unitary(dm, fock::PhaseShift{theta}, 0);
    // <a> rotates to e^{-i theta} alpha.
    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(22, 22);
    for (int n = 1; n < 22; ++n) lower(n - 1, n) = std::sqrt(double(n));
    const Complex mean_a = (lower * dm.data).trace();
    const Complex expected = alpha * std::polar(1.0, -theta);
    CHECK(std::abs(mean_a - expected) < 1e-10);
}

TEST_CASE("thermal loss: pure loss maps coherent to attenuated coherent") {
    const Complex alpha(0.6, 0.2);
    const double kappa = 0.4;
    const auto in = fock::dm_from_pure(fock::coherent_vector(alpha, 24));
    const auto out = fock::thermal_loss_fock(in, 0, kappa, 0.0, 24);
    const auto expected = fock::dm_from_pure(fock::coherent_vector(std::sqrt(kappa) * alpha, 24));
    CHECK((out.data - expected.data).cwiseAbs().maxCoeff() < 1e-9);

    const auto same = fock::thermal_loss_fock(in, 0, 1.0, 0.0, 4);
    CHECK((same.data - in.data).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(fock::thermal_loss_fock(in, 0, 1.0, 0.5, 4), std::invalid_argument);
}

TEST_CASE("thermal loss moment check against the gaussian layer") {
    const double kappa = 0.35, nb = 0.25;
    const auto in = fock::thermal_dm(0.4, 26);
    const auto out = fock::thermal_loss_fock(in, 0, kappa, nb, 26);
    CHECK(fock::mean_photon_fock(out, 0) == doctest::Approx(kappa * 0.4 + nb).epsilon(1e-8));

    const auto gauss =
        gaussian::apply_thermal_loss(gaussian::thermal_state(0.4, 1), 0, kappa, nb);
    CHECK(fock::mean_photon_fock(out, 0) ==
          doctest::Approx(gaussian::mean_photon(gauss, 0)).epsilon(1e-8));
}

TEST_CASE("helstrom limit") {
    const auto a = fock::thermal_dm(0.3, 25);
    CHECK(fock::helstrom_binary(a, a, 0.5) == doctest::Approx(0.5));

    // |0> vs |1>: orthogonal.
    FockDensityMatrix zero{{3}, Eigen::MatrixXcd::Zero(3, 3), 0.0};
    zero.data(0, 0) = 1.0;
    FockDensityMatrix one{{3}, Eigen::MatrixXcd::Zero(3, 3), 0.0};
    one.data(1, 1) = 1.0;
    CHECK(fock::helstrom_binary(zero, one, 0.5) == doctest::Approx(0.0));

    // Equal-prior pure states with overlap zeta.
    const auto ca = fock::dm_from_pure(fock::coherent_vector(0.0, 25));
    const auto cb = fock::dm_from_pure(fock::coherent_vector(0.9, 25));
    const double zeta = std::exp(-0.81 / 2.0);
    CHECK(fock::helstrom_binary(ca, cb, 0.5) ==
          doctest::Approx((1.0 - std::sqrt(1.0 - zeta * zeta)) / 2.0).epsilon(1e-10));
}

TEST_CASE("helstrom symmetry under swapping states and priors") {
    const auto a = fock::displaced_thermal_dm(0.3, 0.2, 18);
    const auto b = fock::thermal_dm(0.6, 18);
    for (double p0 : {0.2, 0.5, 0.8})
        CHECK(fock::helstrom_binary(a, b, p0) ==
              doctest::Approx(fock::helstrom_binary(b, a, 1.0 - p0)).epsilon(1e-12));
}

TEST_CASE("pretty-good measurement basics") {
    FockDensityMatrix zero{{4}, Eigen::MatrixXcd::Zero(4, 4), 0.0};
    zero.data(0, 0) = 1.0;
    FockDensityMatrix one{{4}, Eigen::MatrixXcd::Zero(4, 4), 0.0};
    one.data(1, 1) = 1.0;
    const std::vector<FockDensityMatrix> orthogonal{zero, one};
    const std::vector<double> half{0.5, 0.5};
    CHECK(fock::pgm_error(orthogonal, half) == doctest::Approx(0.0).epsilon(1e-12));

    const auto th = fock::thermal_dm(0.4, 20);
    const std::vector<FockDensityMatrix> same{th, th, th};
    const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(fock::pgm_error(same, third) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("pgm is suboptimal: pgm_error >= helstrom for binary ensembles") {
    const auto a = fock::displaced_thermal_dm(0.45, 0.15, 20);
    const auto b = fock::thermal_dm(0.5, 20);
    const std::vector<FockDensityMatrix> pair{a, b};
    const std::vector<double> priors{0.5, 0.5};
    const double pgm = fock::pgm_error(pair, priors);
    const double hel = fock::helstrom_binary(a, b, 0.5);
    CHECK(pgm >= hel - 1e-12);
}

TEST_CASE("fractional overlaps and fidelity against closed forms") {
    const auto a = fock::thermal_dm(0.7, 35);
    CHECK(fock::overlap_fock(a, a, 0.37) == doctest::Approx(1.0).epsilon(1e-10));

    const auto vac = fock::thermal_dm(0.0, 35);
    const auto th1 = fock::thermal_dm(1.0, 35);
    CHECK(fock::overlap_fock(vac, th1, 0.5) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

    const Complex alpha(0.3, 0.4), beta(-0.2, 0.1);
    const auto ca = fock::dm_from_pure(fock::coherent_vector(alpha, 26));
    const auto cb = fock::dm_from_pure(fock::coherent_vector(beta, 26));
    CHECK(fock::uhlmann_fidelity_fock(ca, cb) ==
          doctest::Approx(std::exp(-std::norm(alpha - beta) / 2.0)).epsilon(1e-9));
}

namespace {

gaussian::GaussianState two_thermals(double n1, double n2) {
    gaussian::Matrix cov = gaussian::Matrix::Identity(4, 4);
    cov.topLeftCorner(2, 2) *= 2.0 * n1 + 1.0;
    cov.bottomRightCorner(2, 2) *= 2.0 * n2 + 1.0;
    return gaussian::GaussianState(gaussian::Vector::Zero(4), cov);
}

}  // namespace

TEST_CASE("oracle agrees with the analytic layer in the small-photon regime") {
    // Correlated two-mode state: thermal x thermal through a squeezer, built
    // identically on both sides of the contract.
    const double n1 = 0.25, n2 = 0.1, gain = 1.12;
    const auto gauss = gaussian::two_mode_squeeze(two_thermals(n1, n2), 0, 1, gain);

    auto dm = fock::tensor(fock::thermal_dm(n1, 22), fock::thermal_dm(n2, 22));
    dm = fock::apply_gaussian_unitary(dm, fock::Squeezer{gain}, 0, 1);

    const auto other_gauss = gaussian::tmsv(0.18);
    const auto other_dm = fock::dm_from_pure(fock::tmsv_vector(0.18, 22));

    CHECK(dm.trace_deficit < 1e-10);
    for (double s : {0.2, 0.5, 0.8}) {
        const double analytic = distinguish::gaussian_overlap(gauss, other_gauss, s);
        const double oracle = fock::overlap_fock(dm, other_dm, s);
        CHECK(analytic == doctest::Approx(oracle).epsilon(1e-7));
    }
    const double f_analytic = distinguish::gaussian_fidelity_zero_mean(gauss, other_gauss);
    const double f_oracle = fock::uhlmann_fidelity_fock(dm, other_dm);
    CHECK(f_analytic == doctest::Approx(f_oracle).epsilon(1e-7));
}

TEST_CASE("permute and partial trace bookkeeping") {
    const auto joint = fock::tensor(fock::thermal_dm(0.8, 10), fock::thermal_dm(0.1, 7));
    const auto swapped = fock::permute_modes(joint, {1, 0});
    CHECK(swapped.mode_cutoffs == std::vector<int>{7, 10});
    CHECK(fock::mean_photon_fock(swapped, 0) ==
          doctest::Approx(fock::mean_photon_fock(joint, 1)).epsilon(1e-12));
    CHECK(fock::mean_photon_fock(swapped, 1) ==
          doctest::Approx(fock::mean_photon_fock(joint, 0)).epsilon(1e-12));

    const auto back = fock::partial_trace_keep(swapped, {1});
    CHECK((back.data - fock::thermal_dm(0.8, 10).data).cwiseAbs().maxCoeff() < 1e-12);
}
