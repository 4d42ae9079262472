#include "voi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace voi {

double log_sum_exp(std::span<const double> args) {
    double m = -std::numeric_limits<double>::infinity();
    for (double a : args) m = std::max(m, a);
    if (!std::isfinite(m)) return m;  // empty or all -inf
    double s = 0.0;
    for (double a : args) s += std::exp(a - m);
    return m + std::log(s);
}

double coth(double x) {
    if (x == 0.0) throw std::domain_error("coth undefined at 0");
    return 1.0 / std::tanh(x);
}

double csch(double x) {
    if (x == 0.0) throw std::domain_error("csch undefined at 0");
    return 1.0 / std::sinh(x);
}

double one_minus_exp_over(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

double harmonic_number(int m, double s) {
    if (m < 0) throw std::invalid_argument("harmonic_number: order must be nonnegative");
    double sum = 0.0;
    for (int i = 1; i <= m; ++i) sum += std::pow(static_cast<double>(i), -s);
    return sum;
}

TiltedStats tilted_stats(std::span<const double> costs, std::span<const double> weights,
                         double beta) {
    if (costs.size() != weights.size())
        throw std::invalid_argument("tilted_stats: costs and weights differ in length");
    if (costs.empty()) throw std::invalid_argument("tilted_stats: empty support");

    const size_t n = costs.size();
    std::vector<double> logw(n);
    double m = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("tilted_stats: negative weight");
        logw[i] = weights[i] > 0.0 ? std::log(weights[i]) - beta * costs[i]
                                   : -std::numeric_limits<double>::infinity();
        m = std::max(m, logw[i]);
    }
    if (!std::isfinite(m)) throw std::invalid_argument("tilted_stats: all weights zero");

    double z = 0.0;
    for (size_t i = 0; i < n; ++i) z += std::exp(logw[i] - m);
    const double log_z = m + std::log(z);

    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += std::exp(logw[i] - log_z) * costs[i];
    double var = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = costs[i] - mean;
        var += std::exp(logw[i] - log_z) * d * d;
    }
    return {log_z, mean, var};
}

}  // namespace voi
