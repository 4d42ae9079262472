#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voi/measure.hpp"

namespace voi {

// Optimal channel at a single inverse multiplier beta:
//   p(x,u) = p(x) ref(u) e^{-beta c(x,u)} / Z(x,beta),
//   Z(x,beta) = sum_u ref(u) e^{-beta c(x,u)}.
struct GibbsSolution {
    double beta = 0.0;
    JointMeasure channel;
    std::vector<double> z_of_x;  // Z(x, beta) per state
    double gamma = 0.0;          // sum_x p(x) ln Z(x, beta)
    double expected_cost = 0.0;
    double info_nats = 0.0;
};

struct MarginalReport {
    bool x_ok = false;
    bool u_ok = false;
    double max_deviation = 0.0;
};

struct CurvePoint {
    double beta = 0.0;
    double gamma = 0.0;
    double info_nats = 0.0;
    double info = 0.0;  // in the curve's base
    double expected_cost = 0.0;
    double value = 0.0;  // V = E{c}(0) - E{c}(beta)
};

struct VoiCurve {
    std::string model;
    int n = 0;
    LogBase base = LogBase::Bits;
    std::vector<CurvePoint> points;
};

// A decision problem ready for beta sweeps. Translation-invariant models with
// a uniform reference measure carry their costs as a displacement profile so
// evaluation is O(n); the dense matrix is materialized only when an operation
// needs the full channel.
struct Model {
    std::string name;
    int n = 0;
    ProbVector prior;
    ProbVector ref;
    std::vector<double> profile;       // circulant displacement costs; empty if none
    std::optional<CostMatrix> matrix;  // dense costs
    std::function<double(double)> closed_form_gamma;  // ln Z(beta) when available

    // Circulant costs with uniform prior and reference: the partition value is
    // state independent and I = beta Gamma' - Gamma equals the channel's
    // mutual information (both marginal conditions hold).
    bool symmetric() const;

    // Dense costs; present whenever an operation needs them (make_model and
    // make_custom_model materialize eagerly so models stay immutable and
    // evaluations can run concurrently).
    const CostMatrix& cost_matrix() const;
};

// Per-beta summary used by curves and the inverter.
struct GibbsStats {
    double gamma = 0.0;
    double gamma_prime = 0.0;
    double expected_cost = 0.0;
    double info_nats = 0.0;
};

// ---------------------------------------------------------------- operations

GibbsSolution gibbs_channel(const ProbVector& prior_x, const ProbVector& ref_u,
                            const CostMatrix& c, double beta);

// Gamma(beta) = sum_x p(x) ln Z(x, beta), from the stored partition values.
double cumulant(const GibbsSolution& sol, const ProbVector& prior_x);

// Gamma(beta) for a model; uses the model's closed form when present.
double log_partition(const Model& model, double beta);

// Analytic Gamma'(beta) = -E{c}; self-checked against a finite difference of
// log_partition (central, one-sided at the beta = 0 boundary).
double cumulant_derivative(const Model& model, double beta);

// Gamma''(beta) = prior-weighted within-state cost variance.
double second_cumulant(const Model& model, double beta);

// I = beta Gamma' - Gamma, clamped to 0 near zero; below -1e-9 the sign
// convention has been violated and an error is raised.
double info_from_cumulant(double gamma, double gamma_prime, double beta);

// Full per-beta evaluation. Symmetric models go through the O(n) profile path
// with I from the cumulant identity; otherwise the channel is built and the
// mutual information computed directly.
GibbsStats gibbs_stats(const Model& model, double beta);

// Sweep an ascending beta grid (must start at 0) into a value-of-information
// curve; V is measured against the zero-information expected cost.
VoiCurve voi_curve(const Model& model, std::span<const double> beta_grid, LogBase base);

MarginalReport check_marginal_conditions(const GibbsSolution& sol, const ProbVector& prior_x,
                                         const ProbVector& ref_u, double tol = 1e-10);

// True iff c(x,u) depends only on (x-u) mod n, or is constant along diagonals.
bool is_translation_invariant(const CostMatrix& c);

// 0 followed by 200 geometric points on [1e-3, 50].
std::vector<double> default_beta_grid();

// Smallest beta whose information matches the target within tol (nats),
// bracketing by doubling. Errors when the target exceeds the model's ceiling.
double invert_beta_for_info(const Model& model, double target_nats, double tol = 1e-9);

}  // namespace voi
