#pragma once

#include <span>
#include <vector>

#include "voi/measure.hpp"

namespace voi {

// Outcome of the alternating-minimization rate-distortion solve at one beta.
struct OracleResult {
    double beta = 0.0;
    double info_nats = 0.0;
    double expected_cost = 0.0;
    int iterations = 0;
    bool converged = false;
    ProbVector final_ref_u;
};

// Alternate p(u|x) ∝ q(u) e^{-beta c(x,u)} (row-normalized) with
// q(u) = sum_x p(x) p(u|x), from q0 = uniform, until max|Δq| < tol.
// Non-convergence is reported via the flag, not thrown.
OracleResult oracle_solve(const ProbVector& prior_x, const CostMatrix& c, double beta,
                          double tol = 1e-12, int max_iter = 100000);

// Map oracle_solve over an ascending grid, warm-starting q from the previous
// point.
std::vector<OracleResult> oracle_curve(const ProbVector& prior_x, const CostMatrix& c,
                                       std::span<const double> beta_grid, double tol = 1e-12,
                                       int max_iter = 100000);

}  // namespace voi
