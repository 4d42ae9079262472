#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "voi/numerics.hpp"

using namespace voi;

TEST_CASE("log_sum_exp matches naive summation in a safe range") {
    const std::vector<double> args = {-1.0, 0.5, 2.25, -3.0};
    double naive = 0.0;
    for (double a : args) naive += std::exp(a);
    CHECK(std::abs(log_sum_exp(args) - std::log(naive)) < 1e-14);
}

TEST_CASE("log_sum_exp ignores -inf entries and survives huge shifts") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> args = {-inf, 1000.0, 1000.0};
    CHECK(std::abs(log_sum_exp(args) - (1000.0 + std::log(2.0))) < 1e-12);
    const std::vector<double> empty;
    CHECK(log_sum_exp(empty) == -inf);
}

TEST_CASE("hyperbolic helpers") {
    CHECK(std::abs(coth(0.5) - 2.1639534137386529) < 1e-15);
    CHECK(std::abs(csch(1.0) - 0.85091812823932156) < 1e-15);
    CHECK_THROWS_AS(coth(0.0), std::domain_error);
    CHECK_THROWS_AS(csch(0.0), std::domain_error);
}

TEST_CASE("one_minus_exp_over is stable near zero") {
    CHECK(one_minus_exp_over(0.0) == 1.0);
    CHECK(std::abs(one_minus_exp_over(1e-12) - 1.0) < 1e-9);
    CHECK(std::abs(one_minus_exp_over(1.0) - (1.0 - std::exp(-1.0))) < 1e-15);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0, 2.0) == 0.0);
    CHECK(std::abs(harmonic_number(3, 1.0) - (1.0 + 0.5 + 1.0 / 3.0)) < 1e-15);
    CHECK(std::abs(harmonic_number(3, -0.5) - (1.0 + std::sqrt(2.0) + std::sqrt(3.0))) < 1e-14);
}

TEST_CASE("tilted_stats agrees with a naive evaluation at moderate beta") {
    const std::vector<double> costs = {0.0, 1.0, 2.0, 4.0};
    const std::vector<double> weights = {0.1, 0.2, 0.3, 0.4};
    const double beta = 1.7;
    double z = 0.0, mean = 0.0;
    for (size_t i = 0; i < costs.size(); ++i) z += weights[i] * std::exp(-beta * costs[i]);
    for (size_t i = 0; i < costs.size(); ++i)
        mean += weights[i] * std::exp(-beta * costs[i]) / z * costs[i];
    double var = 0.0;
    for (size_t i = 0; i < costs.size(); ++i)
        var += weights[i] * std::exp(-beta * costs[i]) / z * (costs[i] - mean) * (costs[i] - mean);

    const TiltedStats ts = tilted_stats(costs, weights, beta);
    CHECK(std::abs(ts.log_z - std::log(z)) < 1e-14);
    CHECK(std::abs(ts.mean_cost - mean) < 1e-14);
    CHECK(std::abs(ts.var_cost - var) < 1e-14);
}

TEST_CASE("tilted_stats concentrates on the minimum cost at huge beta") {
    const std::vector<double> costs = {0.3, -0.7, 5.0};
    const std::vector<double> weights = {0.5, 0.25, 0.25};
    const TiltedStats ts = tilted_stats(costs, weights, 1e4);
    CHECK(std::isfinite(ts.log_z));
    CHECK(std::abs(ts.mean_cost - (-0.7)) < 1e-9);
    CHECK(ts.var_cost >= 0.0);
}

TEST_CASE("tilted_stats skips zero-weight points and rejects bad input") {
    const std::vector<double> costs = {0.0, -100.0};
    const std::vector<double> weights = {1.0, 0.0};
    const TiltedStats ts = tilted_stats(costs, weights, 3.0);
    CHECK(std::abs(ts.mean_cost) < 1e-15);
    CHECK_THROWS_AS(tilted_stats(costs, std::vector<double>{0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tilted_stats(costs, std::vector<double>{1.0}, 1.0), std::invalid_argument);
}
