#include "doctest.h"

#include "qranging/distinguish.hpp"
#include "qranging/gaussian.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace qranging;
using gaussian::GaussianState;
using gaussian::Matrix;
using gaussian::Vector;

namespace {

GaussianState random_two_mode_state(std::mt19937_64& rng, bool with_mean) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto state = gaussian::thermal_state(0.05 + 0.5 * uni(rng), 2);
    state = gaussian::two_mode_squeeze(state, 0, 1, 1.0 + 0.4 * uni(rng));
    state = gaussian::beamsplitter(state, 0, 1, uni(rng));
    state = gaussian::phase_shift(state, 0, 6.28 * uni(rng));
    if (!with_mean) return state;
    Vector mean(4);
    for (int i = 0; i < 4; ++i) mean(i) = uni(rng) - 0.5;
    return GaussianState(mean, state.cov());
}

// Q_s for two thermal states, summed directly in the number basis.
double thermal_overlap_series(double n1, double n2, double s) {
    return 1.0 / (std::pow(n1 + 1.0, s) * std::pow(n2 + 1.0, 1.0 - s) -
                  std::pow(n1, s) * std::pow(n2, 1.0 - s));
}

}  // namespace

TEST_CASE("williamson reconstructs the covariance symplectically") {
    std::mt19937_64 rng(5);
    const auto omega = gaussian::symplectic_form(2);
    for (int rep = 0; rep < 30; ++rep) {
        const auto state = random_two_mode_state(rng, false);
        const auto w = distinguish::williamson(state.cov());
        Vector d(4);
        d << w.nu(0), w.nu(0), w.nu(1), w.nu(1);
        const Matrix rebuilt = w.symplectic * d.asDiagonal() * w.symplectic.transpose();
        CHECK((rebuilt - state.cov()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((w.symplectic * omega * w.symplectic.transpose() - omega).cwiseAbs().maxCoeff() <
              1e-9);
    }
}

TEST_CASE("overlap of identical states is one") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 5; ++rep) {
        const auto state = random_two_mode_state(rng, true);
        for (double s : {0.1, 0.5, 0.9})
            CHECK(distinguish::gaussian_overlap(state, state, s) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("thermal overlap closed form") {
    for (double s : {0.2, 0.5, 0.8}) {
        const double got = distinguish::gaussian_overlap(gaussian::thermal_state(0.6),
                                                         gaussian::thermal_state(1.9), s);
        CHECK(got == doctest::Approx(thermal_overlap_series(0.6, 1.9, s)).epsilon(1e-11));
    }
    const double vac_thermal = distinguish::gaussian_overlap(gaussian::thermal_state(0.0),
                                                             gaussian::thermal_state(1.0), 0.5);
    CHECK(vac_thermal == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));
}

TEST_CASE("chernoff exponent of identical states is zero") {
    const auto state = gaussian::tmsv(0.3);
    const auto res = distinguish::chernoff_exponent(state, state);
    CHECK(res.exponent == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.q_star == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vacuum vs thermal optimizes at the boundary") {
    const auto res = distinguish::chernoff_exponent(gaussian::thermal_state(0.0),
                                                    gaussian::thermal_state(1.0));
    CHECK(res.exponent == doctest::Approx(std::numbers::ln2).epsilon(1e-8));
    CHECK(res.s_star == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("mean-shifted thermal pair reproduces the coherent-probe exponent") {
    // Equal-covariance thermal pair across two modes, mean difference carrying
    // per-mode signal kappa·N_S; the exponent has the closed form
    // 2·kappa·N_S / (1 + 2N_B + 2·sqrt(N_B(1+N_B))).
    const double kappa_ns = 0.013, nb = 2.1;
    const double beta = std::sqrt(kappa_ns);
    Vector mean1 = Vector::Zero(8), mean2 = Vector::Zero(8);
    mean1(0) = 2.0 * beta;
    mean2(4) = 2.0 * beta;
    const Matrix cov = (2.0 * nb + 1.0) * Matrix::Identity(8, 8);
    const auto res =
        distinguish::chernoff_exponent(GaussianState(mean1, cov), GaussianState(mean2, cov));
    const double expected = 2.0 * kappa_ns / (1.0 + 2.0 * nb + 2.0 * std::sqrt(nb * (1.0 + nb)));
    CHECK(res.exponent == doctest::Approx(expected).epsilon(1e-8));
    CHECK(res.s_star == doctest::Approx(0.5).epsilon(1e-4));
    // The pair is swap-related, so the symmetric shortcut must agree.
    const auto sym =
        distinguish::chernoff_exponent(GaussianState(mean1, cov), GaussianState(mean2, cov), true);
    CHECK(sym.exponent == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("overlap swap symmetry Q_s(a,b) = Q_{1-s}(b,a)") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 12; ++rep) {
        const auto a = random_two_mode_state(rng, true);
        const auto b = random_two_mode_state(rng, true);
        for (double s : {0.15, 0.5, 0.85}) {
            const double lhs = distinguish::gaussian_overlap(a, b, s);
            const double rhs = distinguish::gaussian_overlap(b, a, 1.0 - s);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("appending an identical thermal mode leaves Q_s unchanged") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 8; ++rep) {
        const auto a = random_two_mode_state(rng, false);
        const auto b = random_two_mode_state(rng, false);
        const double q = distinguish::gaussian_overlap(a, b, 0.3);

        const auto extend = [](const GaussianState& s) {
            Matrix cov = Matrix::Identity(6, 6) * (2.0 * 0.8 + 1.0);
            cov.topLeftCorner(4, 4) = s.cov();
            return GaussianState(Vector::Zero(6), cov);
        };
        const double q_ext = distinguish::gaussian_overlap(extend(a), extend(b), 0.3);
        CHECK(q == doctest::Approx(q_ext).epsilon(1e-10));
    }
}

TEST_CASE("fidelity basics") {
    const auto a = gaussian::tmsv(0.4);
    CHECK(distinguish::gaussian_fidelity_zero_mean(a, a) == doctest::Approx(1.0).epsilon(1e-9));

    const double f = distinguish::gaussian_fidelity_zero_mean(gaussian::thermal_state(0.0),
                                                              gaussian::thermal_state(1.0));
    CHECK(f == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

    // Thermal-thermal closed form 1/(sqrt((n1+1)(n2+1)) - sqrt(n1 n2)).
    const double n1 = 0.35, n2 = 1.6;
    const double expected = 1.0 / (std::sqrt((n1 + 1.0) * (n2 + 1.0)) - std::sqrt(n1 * n2));
    CHECK(distinguish::gaussian_fidelity_zero_mean(gaussian::thermal_state(n1),
                                                   gaussian::thermal_state(n2)) ==
          doctest::Approx(expected).epsilon(1e-10));

    Vector mean = Vector::Zero(2);
    mean(0) = 1.0;
    CHECK_THROWS_AS(distinguish::gaussian_fidelity_zero_mean(
                        GaussianState(mean, Matrix::Identity(2, 2)), gaussian::thermal_state(0.0)),
                    std::invalid_argument);
}

TEST_CASE("pure-vs-mixed fidelity squared equals the direct overlap") {
    // F(|psi>, sigma)^2 = <psi|sigma|psi> = Tr[rho sigma]; the right-hand side
    // is the s-independent limit of Q_s for rank-one rho.
    const auto pure = gaussian::tmsv(0.25);
    auto sigma = gaussian::apply_thermal_loss(gaussian::tmsv(0.4), 0, 0.7, 0.3);
    const double f = distinguish::gaussian_fidelity_zero_mean(pure, sigma);
    const double q = distinguish::gaussian_overlap(pure, sigma, 0.5 - 1e-9);
    // Q_s with one pure argument is Tr[rho sigma^(1-s)]; push s -> 1 instead.
    const double tr_rho_sigma = distinguish::gaussian_overlap(sigma, pure, 1.0 - 1e-10);
    CHECK(f * f == doctest::Approx(tr_rho_sigma).epsilon(1e-7));
    CHECK(f * f <= q * (1.0 + 1e-9));  // F^2 <= Q_{1/2} when one state is pure
}

TEST_CASE("F^2 lower-bounds Q_half for one-pure-state pairs") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const auto pure = gaussian::tmsv(0.5 * uni(rng));
        auto mixed = random_two_mode_state(rng, false);
        const double f = distinguish::gaussian_fidelity_zero_mean(pure, mixed);
        const double q = distinguish::gaussian_overlap(pure, mixed, 0.5);
        CHECK(f * f <= q * (1.0 + 1e-9));
        CHECK(q <= 1.0 + 1e-9);
    }
}

TEST_CASE("multihypothesis exponent reduces to the pairwise minimum") {
    const auto a = gaussian::thermal_state(0.2);
    const auto b = gaussian::thermal_state(0.6);
    const auto c = gaussian::thermal_state(2.0);
    std::vector<GaussianState> states{a, b, c};
    const double expected =
        std::min({distinguish::chernoff_exponent(a, b).exponent,
                  distinguish::chernoff_exponent(a, c).exponent,
                  distinguish::chernoff_exponent(b, c).exponent});
    CHECK(distinguish::multihypothesis_exponent(states) == doctest::Approx(expected));

    std::vector<GaussianState> same{a, a, a};
    CHECK(distinguish::multihypothesis_exponent(same) == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<GaussianState> one{a};
    CHECK_THROWS_AS(distinguish::multihypothesis_exponent(one), std::invalid_argument);
}
