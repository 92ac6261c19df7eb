#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "scrlm/loss.hpp"
#include "scrlm/random.hpp"

using namespace scrlm;

TEST_SUITE("loss") {

TEST_CASE("per-observation loss hand values") {
    CHECK(per_observation_loss(0.0, 7, 0.3, 2.5) == -2.5);
    CHECK(per_observation_loss(0.0, 1, 1.0, 2.5) == -2.5);
    // exactly on the support boundary
    CHECK(per_observation_loss(2.5 * 4 * 1.0, 4, 1.0, 2.5) == 0.0);
    CHECK(per_observation_loss(2250.0, 500, 3.0, 2.5) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(per_observation_loss(1e9, 3, 0.5, 2.5) == 0.0);
}

TEST_CASE("per-observation loss rejects bad distances") {
    CHECK_THROWS_AS(per_observation_loss(-1e-300, 2, 1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(per_observation_loss(std::nan(""), 2, 1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(per_observation_loss(std::numeric_limits<double>::infinity(), 2, 1.0, 2.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(per_observation_loss(1.0, 0, 1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(per_observation_loss(1.0, 2, 0.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(per_observation_loss(1.0, 2, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("support radius") {
    CHECK(support_radius(1.0, 1, 1.0) == 1.0);
    // mpmath, 30 digits
    CHECK(support_radius(0.5, 3700, 2.5) == doctest::Approx(48.08846015417836188).epsilon(1e-14));
    CHECK(support_radius(3.0, 500, 2.5) == doctest::Approx(106.06601717798212866).epsilon(1e-14));
}

TEST_CASE("total loss hand values") {
    ScrlmParams params;
    params.rho = 1.0;
    params.f_const = 2.5;

    const DataMatrix two(2, 2, {0.0, 0.0, 0.1, 0.0});
    const double origin[] = {0.0, 0.0};
    CHECK(total_loss(origin, two, params) == doctest::Approx(-4.995).epsilon(1e-12));

    const double far[] = {100.0, 100.0};
    CHECK(total_loss(far, two, params) == 0.0);

    const DataMatrix isolated(3, 2, {0.0, 0.0, 10.0, 0.0, 0.0, 10.0});
    CHECK(total_loss(isolated.row(1), isolated, params) == -2.5);

    const double wrong_dim[] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(total_loss(wrong_dim, two, params), std::invalid_argument);
}

TEST_CASE("randomized boundedness, monotonicity and compact support") {
    Rng rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t p = 1 + rng.below(5000);
        const double rho = 0.01 + 3.0 * rng.uniform();
        const double F = 0.1 + 5.0 * rng.uniform();
        const double edge = F * static_cast<double>(p) * rho * rho;
        const double d1 = 2.0 * edge * rng.uniform();
        const double d2 = d1 + edge * rng.uniform();
        const double l1 = per_observation_loss(d1, p, rho, F);
        const double l2 = per_observation_loss(d2, p, rho, F);
        REQUIRE(l1 >= -F);
        REQUIRE(l1 <= 0.0);
        REQUIRE(l1 <= l2);
        REQUIRE((l1 == 0.0) == (d1 / (static_cast<double>(p) * rho * rho) - F >= 0.0));
        if (d1 >= edge * (1.0 + 1e-12)) REQUIRE(l1 == 0.0);
        if (d1 <= edge * (1.0 - 1e-12)) REQUIRE(l1 < 0.0);
        // rho enters only through d_sq / rho^2
        const double scaled = per_observation_loss(d1 / (rho * rho), p, 1.0, F);
        REQUIRE(scaled == doctest::Approx(l1).epsilon(1e-12));
    }
}

TEST_CASE("rho-scaling identity is exact for power-of-two rho") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const double rho = std::ldexp(1.0, static_cast<int>(rng.below(9)) - 4);
        const double d = 50.0 * rng.uniform();
        CHECK(per_observation_loss(d, 10, rho, 2.5) == per_observation_loss(d / (rho * rho), 10, 1.0, 2.5));
    }
}

TEST_CASE("total loss bounds and self-term on random data") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(30);
        const std::size_t p = 1 + rng.below(20);
        std::vector<double> v(n * p);
        for (double& x : v) x = standard_normal(rng);
        const DataMatrix data(n, p, v);
        ScrlmParams params;
        params.rho = 0.2 + rng.uniform();
        for (std::size_t j = 0; j < n; ++j) {
            const double L = total_loss(data.row(j), data, params);
            REQUIRE(L <= -params.f_const);
            REQUIRE(L >= -static_cast<double>(n) * params.f_const);
        }
    }
}

TEST_CASE("batch kernel matches total loss for every thread count") {
    Rng rng(5);
    for (std::size_t p : {1, 3, 4, 7, 64, 65, 300, 1025}) {
        const std::size_t n = 150;
        std::vector<double> v(n * p);
        // Three tight groups plus noise so both branches of the loss occur.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                v[i * p + j] = (i % 4 == 3 ? standard_normal(rng) : 0.3 * static_cast<double>(i % 4)) +
                               0.05 * standard_normal(rng);
            }
        }
        const DataMatrix data(n, p, v);
        ScrlmParams params;
        params.rho = 0.4;
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; i += 3) rows.push_back(i);

        const auto ref = batch_total_loss(data, rows, params.rho, params.f_const, 1);
        for (unsigned threads : {2u, 3u, 8u}) {
            CHECK(batch_total_loss(data, rows, params.rho, params.f_const, threads) == ref);
        }
        for (std::size_t k = 0; k < rows.size(); ++k) {
            CHECK(ref[k] == total_loss(data.row(rows[k]), data, params));
        }
    }
}

TEST_CASE("squared distance agrees with a plain loop") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t p = 1 + rng.below(700);
        std::vector<double> a(p), b(p);
        double plain = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            a[j] = standard_normal(rng);
            b[j] = standard_normal(rng);
            plain += (a[j] - b[j]) * (a[j] - b[j]);
        }
        CHECK(squared_distance(a, b) == doctest::Approx(plain).epsilon(1e-12));
    }
    const std::vector<double> a(3), b(4);
    CHECK_THROWS_AS(squared_distance(a, b), std::invalid_argument);
}

}  // TEST_SUITE
