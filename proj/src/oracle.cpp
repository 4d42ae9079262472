#include "voi/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "voi/numerics.hpp"

namespace voi {

namespace {

OracleResult solve_from(const ProbVector& prior_x, const CostMatrix& c, double beta,
                        std::vector<double> q, double tol, int max_iter) {
    const int n = c.n();
    Matrix cond(n, n);  // p(u|x)
    std::vector<double> logw(static_cast<size_t>(n));

    int it = 0;
    bool converged = false;
    while (it < max_iter) {
        ++it;
        for (int x = 0; x < n; ++x) {
            for (int u = 0; u < n; ++u)
                logw[static_cast<size_t>(u)] =
                    q[static_cast<size_t>(u)] > 0.0
                        ? std::log(q[static_cast<size_t>(u)]) - beta * c(x, u)
                        : -std::numeric_limits<double>::infinity();
            const double log_zx = log_sum_exp(logw);
            for (int u = 0; u < n; ++u) {
                const double lw = logw[static_cast<size_t>(u)];
                cond(x, u) = std::isfinite(lw) ? std::exp(lw - log_zx) : 0.0;
            }
        }
        double delta = 0.0;
        for (int u = 0; u < n; ++u) {
            double qu = 0.0;
            for (int x = 0; x < n; ++x) qu += prior_x[x] * cond(x, u);
            delta = std::max(delta, std::abs(qu - q[static_cast<size_t>(u)]));
            q[static_cast<size_t>(u)] = qu;
        }
        if (delta < tol) {
            converged = true;
            break;
        }
    }

    Matrix joint(n, n);
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u) joint(x, u) = prior_x[x] * cond(x, u);
    const JointMeasure jm(std::move(joint));

    OracleResult res{beta,      mutual_information(jm, LogBase::Nats),
                     expected_cost(jm, c), it, converged, normalize(q)};
    return res;
}

}  // namespace

OracleResult oracle_solve(const ProbVector& prior_x, const CostMatrix& c, double beta,
                          double tol, int max_iter) {
    if (prior_x.size() != c.n()) throw std::invalid_argument("oracle_solve: dimension mismatch");
    if (!(beta >= 0.0)) throw std::invalid_argument("oracle_solve: beta must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("oracle_solve: tol must be positive");
    return solve_from(prior_x, c, beta, std::vector<double>(static_cast<size_t>(c.n()), 1.0 / c.n()),
                      tol, max_iter);
}

std::vector<OracleResult> oracle_curve(const ProbVector& prior_x, const CostMatrix& c,
                                       std::span<const double> beta_grid, double tol,
                                       int max_iter) {
    std::vector<OracleResult> out;
    out.reserve(beta_grid.size());
    std::vector<double> q(static_cast<size_t>(c.n()), 1.0 / c.n());
    for (double beta : beta_grid) {
        if (!(beta >= 0.0)) throw std::invalid_argument("oracle_curve: beta must be nonnegative");
        OracleResult res = solve_from(prior_x, c, beta, q, tol, max_iter);
        for (int u = 0; u < c.n(); ++u) q[static_cast<size_t>(u)] = res.final_ref_u[u];
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace voi
