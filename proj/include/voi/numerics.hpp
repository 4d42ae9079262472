#pragma once

#include <span>

namespace voi {

// log(sum_i exp(args[i])) with max-shift; -inf entries contribute nothing.
double log_sum_exp(std::span<const double> args);

// Hyperbolic cotangent / cosecant. Domain x != 0.
double coth(double x);
double csch(double x);

// (1 - e^{-x}) / x, stable near x = 0 (value 1 at x = 0).
double one_minus_exp_over(double x);

// Generalized harmonic number H(m, s) = sum_{i=1}^m i^{-s}, direct summation.
double harmonic_number(int m, double s);

// Moments of the exponentially tilted measure p_i = w_i e^{-beta c_i} / Z.
// Weights must be nonnegative with a positive sum; computation is shifted so
// arbitrarily large beta*|c| cannot overflow.
struct TiltedStats {
    double log_z;      // log sum_i w_i e^{-beta c_i}
    double mean_cost;  // E{c} under the tilted measure
    double var_cost;   // Var{c} under the tilted measure
};
TiltedStats tilted_stats(std::span<const double> costs, std::span<const double> weights,
                         double beta);

}  // namespace voi
