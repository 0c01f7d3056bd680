#include "doctest.h"

#include "qranging/comm.hpp"

#include <cmath>

using namespace qranging;

TEST_CASE("ppm mutual information") {
    for (int m : {2, 3, 16, 50}) {
        CHECK(comm::mutual_info_ppm(0.0, m) == doctest::Approx(std::log2(m)).epsilon(1e-15));
        CHECK(std::abs(comm::mutual_info_ppm((m - 1.0) / m, m)) < 1e-12);
    }
    CHECK(comm::mutual_info_ppm(0.11, 2) == doctest::Approx(0.500084).epsilon(1e-5));

    double previous = comm::mutual_info_ppm(0.0, 4);
    for (double p = 0.01; p <= 0.75; p += 0.01) {
        const double now = comm::mutual_info_ppm(p, 4);
        CHECK(now <= previous + 1e-12);
        previous = now;
    }
}

TEST_CASE("thermal entropy") {
    CHECK(comm::g_entropy(0.0) == 0.0);
    CHECK(comm::g_entropy(1.0) == doctest::Approx(2.0).epsilon(1e-15));

    double prev_value = 0.0, prev_delta = 1e9;
    for (double n = 0.1; n < 8.0; n += 0.1) {
        const double value = comm::g_entropy(n);
        CHECK(value > prev_value);                       // monotone
        CHECK(value >= std::log2(n + 1.0) - 1e-12);      // g(n) >= log2(n+1)
        const double delta = value - prev_value;
        CHECK(delta < prev_delta + 1e-12);               // concave
        prev_value = value;
        prev_delta = delta;
    }
}

TEST_CASE("classical capacity") {
    CHECK(comm::classical_capacity(1.0, 0.0, 0.37) == doctest::Approx(comm::g_entropy(0.37)));
    CHECK(comm::classical_capacity(0.3, 5.0, 0.0) == doctest::Approx(0.0));
    // The stated low-brightness form carries a 1/(2 N_B) relative correction,
    // so the agreement tightens as N_B grows.
    const double c = comm::classical_capacity(0.1, 20.0, 1e-3);
    const double low = comm::classical_capacity_low_brightness(0.1, 20.0, 1e-3);
    CHECK(std::abs(c / low - 1.0) < 0.03);
    const double c_hn = comm::classical_capacity(0.1, 1000.0, 1e-3);
    const double low_hn = comm::classical_capacity_low_brightness(0.1, 1000.0, 1e-3);
    CHECK(std::abs(c_hn / low_hn - 1.0) < 1e-3);
}

TEST_CASE("ea capacity") {
    // Lossless noiseless limit: twice the thermal entropy.
    CHECK(comm::ea_capacity(1.0, 1e-10, 0.05) ==
          doctest::Approx(2.0 * comm::g_entropy(0.05)).epsilon(1e-7));
    // kappa = 0 evaluates to zero through the full formula.
    CHECK(std::abs(comm::ea_capacity(0.0, 3.0, 0.2)) < 1e-12);

    // Low-brightness ratio C_E / C grows like ln(1/n_S).
    const double r1 = comm::ea_capacity(0.1, 20.0, 1e-3) / comm::classical_capacity(0.1, 20.0, 1e-3);
    const double r2 = comm::ea_capacity(0.1, 20.0, 1e-5) / comm::classical_capacity(0.1, 20.0, 1e-5);
    CHECK(r2 > r1);
    CHECK(r2 / r1 == doctest::Approx(std::log(1e5) / std::log(1e3)).epsilon(0.15));
}

TEST_CASE("rate limits") {
    CHECK(comm::rate(4, 100, 1e-4, 0.0, 20.0) == doctest::Approx(0.0).epsilon(1e-12));

    // Strong-signal limit: the error probability vanishes and the rate
    // saturates at log2(m)/(M m).
    const double saturated = comm::rate(4, 10, 20.0, 1.0, 5.0);
    CHECK(saturated == doctest::Approx(2.0 / 40.0).epsilon(1e-9));

    // The asymptotic flag swaps in the closed-form exponent.
    const double full = comm::rate(8, 1000, 1e-4, 0.1, 20.0);
    const double asym = comm::rate(8, 1000, 1e-4, 0.1, 20.0, true);
    CHECK(std::abs(full / asym - 1.0) < 0.2);
}

TEST_CASE("optimal rate") {
    const auto zero = comm::optimal_rate(1000, 1e-4, 0.0, 20.0);
    CHECK(zero.optimal_rate == 0.0);
    CHECK(zero.optimal_slices == 2);

    const auto point = comm::optimal_rate(1000, 1e-4, 0.1, 20.0);
    CHECK(point.optimal_rate > 0.0);
    CHECK(point.optimal_slices >= 2);
    CHECK(point.optimal_rate <= point.ea_cap + 1e-12);
    // The optimizer beats both the guide value and the binary choice.
    CHECK(point.optimal_rate >= comm::rate(2, 1000, 1e-4, 0.1, 20.0) - 1e-15);
    CHECK(point.optimal_rate >= comm::rate(1000, 1000, 1e-4, 0.1, 20.0) - 1e-15);
}
