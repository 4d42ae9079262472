#include "voi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "voi/numerics.hpp"

namespace voi {

namespace {

// Per-state tilted moments averaged under the prior.
GibbsStats row_stats(const Model& model, double beta) {
    GibbsStats out;
    if (model.symmetric()) {
        const TiltedStats ts = tilted_stats(model.profile, model.ref.values(), beta);
        out.gamma = ts.log_z;
        out.expected_cost = ts.mean_cost;
    } else {
        const CostMatrix& c = model.cost_matrix();
        double gamma = 0.0, ec = 0.0;
        for (int x = 0; x < model.n; ++x) {
            const TiltedStats ts = tilted_stats(c.entries.row(x), model.ref.values(), beta);
            gamma += model.prior[x] * ts.log_z;
            ec += model.prior[x] * ts.mean_cost;
        }
        out.gamma = gamma;
        out.expected_cost = ec;
    }
    out.gamma_prime = -out.expected_cost;
    return out;
}

}  // namespace

bool Model::symmetric() const {
    return !profile.empty() && prior.is_uniform() && ref.is_uniform();
}

const CostMatrix& Model::cost_matrix() const {
    if (!matrix)
        throw std::logic_error("Model: dense cost matrix not materialized; "
                               "construct via make_model or make_custom_model");
    return *matrix;
}

GibbsSolution gibbs_channel(const ProbVector& prior_x, const ProbVector& ref_u,
                            const CostMatrix& c, double beta) {
    const int n = c.n();
    if (prior_x.size() != n || ref_u.size() != n)
        throw std::invalid_argument("gibbs_channel: dimension mismatch");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("gibbs_channel: beta must be finite and nonnegative");

    Matrix joint(n, n);
    std::vector<double> z(static_cast<size_t>(n));
    std::vector<double> logw(static_cast<size_t>(n));
    double gamma = 0.0;
    for (int x = 0; x < n; ++x) {
        for (int u = 0; u < n; ++u)
            logw[static_cast<size_t>(u)] = ref_u[u] > 0.0
                ? std::log(ref_u[u]) - beta * c(x, u)
                : -std::numeric_limits<double>::infinity();
        const double log_zx = log_sum_exp(logw);
        z[static_cast<size_t>(x)] = std::exp(log_zx);
        gamma += prior_x[x] * log_zx;
        for (int u = 0; u < n; ++u) {
            const double lw = logw[static_cast<size_t>(u)];
            joint(x, u) = std::isfinite(lw) ? prior_x[x] * std::exp(lw - log_zx) : 0.0;
        }
    }

    GibbsSolution sol{beta, JointMeasure(std::move(joint)), std::move(z), gamma, 0.0, 0.0};
    sol.expected_cost = expected_cost(sol.channel, c);
    sol.info_nats = mutual_information(sol.channel, LogBase::Nats);
    return sol;
}

double cumulant(const GibbsSolution& sol, const ProbVector& prior_x) {
    if (prior_x.size() != static_cast<int>(sol.z_of_x.size()))
        throw std::invalid_argument("cumulant: dimension mismatch");
    double gamma = 0.0;
    for (int x = 0; x < prior_x.size(); ++x)
        gamma += prior_x[x] * std::log(sol.z_of_x[static_cast<size_t>(x)]);
    return gamma;
}

double log_partition(const Model& model, double beta) {
    if (model.closed_form_gamma) return model.closed_form_gamma(beta);
    return row_stats(model, beta).gamma;
}

double cumulant_derivative(const Model& model, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("cumulant_derivative: beta must be nonnegative");
    const double analytic = row_stats(model, beta).gamma_prime;

    const double h = 1e-6 * std::max(1.0, beta);
    double fd;
    if (beta - h >= 0.0) {
        fd = (log_partition(model, beta + h) - log_partition(model, beta - h)) / (2.0 * h);
    } else {
        // second-order one-sided stencil at the boundary
        fd = (-3.0 * log_partition(model, beta) + 4.0 * log_partition(model, beta + h) -
              log_partition(model, beta + 2.0 * h)) /
             (2.0 * h);
    }
    if (std::abs(analytic - fd) > 1e-6 * std::max(1.0, std::abs(analytic)))
        throw std::logic_error("cumulant_derivative: finite-difference cross-check failed at beta=" +
                               std::to_string(beta));
    return analytic;
}

double second_cumulant(const Model& model, double beta) {
    if (model.symmetric()) return tilted_stats(model.profile, model.ref.values(), beta).var_cost;
    const CostMatrix& c = model.cost_matrix();
    double var = 0.0;
    for (int x = 0; x < model.n; ++x)
        var += model.prior[x] * tilted_stats(c.entries.row(x), model.ref.values(), beta).var_cost;
    return var;
}

double info_from_cumulant(double gamma, double gamma_prime, double beta) {
    const double info = beta * gamma_prime - gamma;
    if (info < -1e-9)
        throw std::runtime_error("sign-convention violation: I = " + std::to_string(info) +
                                 " at beta = " + std::to_string(beta));
    if (std::abs(info) <= 1e-12 || info < 0.0) return 0.0;
    return info;
}

GibbsStats gibbs_stats(const Model& model, double beta) {
    GibbsStats s = row_stats(model, beta);
    if (model.closed_form_gamma) s.gamma = model.closed_form_gamma(beta);
    if (model.symmetric()) {
        s.info_nats = info_from_cumulant(s.gamma, s.gamma_prime, beta);
    } else {
        const GibbsSolution sol = gibbs_channel(model.prior, model.ref, model.cost_matrix(), beta);
        s.info_nats = sol.info_nats;
    }
    return s;
}

VoiCurve voi_curve(const Model& model, std::span<const double> beta_grid, LogBase base) {
    if (beta_grid.empty()) throw std::invalid_argument("voi_curve: empty beta grid");
    if (beta_grid[0] != 0.0) throw std::invalid_argument("voi_curve: beta grid must start at 0");
    for (size_t i = 0; i + 1 < beta_grid.size(); ++i)
        if (!(beta_grid[i] < beta_grid[i + 1]))
            throw std::invalid_argument("voi_curve: beta grid must be sorted ascending");

    VoiCurve curve;
    curve.model = model.name;
    curve.n = model.n;
    curve.base = base;
    curve.points.reserve(beta_grid.size());

    double maxent = 0.0;
    for (size_t i = 0; i < beta_grid.size(); ++i) {
        const double beta = beta_grid[i];
        const GibbsStats s = gibbs_stats(model, beta);
        if (i == 0) maxent = s.expected_cost;
        CurvePoint p;
        p.beta = beta;
        p.gamma = s.gamma;
        p.info_nats = s.info_nats;
        p.info = to_base(s.info_nats, base);
        p.expected_cost = s.expected_cost;
        p.value = maxent - s.expected_cost;
        curve.points.push_back(p);
    }
    return curve;
}

MarginalReport check_marginal_conditions(const GibbsSolution& sol, const ProbVector& prior_x,
                                         const ProbVector& ref_u, double tol) {
    const int n = sol.channel.n();
    if (prior_x.size() != n || ref_u.size() != n)
        throw std::invalid_argument("check_marginal_conditions: dimension mismatch");
    double dev_x = 0.0, dev_u = 0.0;
    for (int i = 0; i < n; ++i) {
        double rx = 0.0, cu = 0.0;
        for (int k = 0; k < n; ++k) {
            rx += sol.channel(i, k);
            cu += sol.channel(k, i);
        }
        dev_x = std::max(dev_x, std::abs(rx - prior_x[i]));
        dev_u = std::max(dev_u, std::abs(cu - ref_u[i]));
    }
    return {dev_x <= tol, dev_u <= tol, std::max(dev_x, dev_u)};
}

bool is_translation_invariant(const CostMatrix& c) {
    const int n = c.n();
    double scale = 1.0;
    for (double e : c.entries.data()) scale = std::max(scale, std::abs(e));
    const double tol = 1e-12 * scale;

    bool circulant = true;
    for (int x = 0; x < n && circulant; ++x)
        for (int u = 0; u < n; ++u)
            if (std::abs(c(x, u) - c(0, ((u - x) % n + n) % n)) > tol) {
                circulant = false;
                break;
            }
    if (circulant) return true;

    for (int x = 1; x < n; ++x)
        for (int u = 1; u < n; ++u)
            if (std::abs(c(x, u) - c(x - 1, u - 1)) > tol) return false;
    return true;  // constant along diagonals
}

std::vector<double> default_beta_grid() {
    constexpr double lo = 1e-3, hi = 50.0;
    constexpr int count = 200;
    std::vector<double> grid;
    grid.reserve(count + 1);
    grid.push_back(0.0);
    for (int k = 0; k < count; ++k)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
    grid.back() = hi;
    return grid;
}

double invert_beta_for_info(const Model& model, double target_nats, double tol) {
    if (target_nats < 0.0) throw std::invalid_argument("invert_beta_for_info: negative target");
    if (target_nats == 0.0) return 0.0;

    const auto info_at = [&](double b) { return gibbs_stats(model, b).info_nats; };

    double hi = 1.0;
    while (info_at(hi) < target_nats && hi < 1e9) hi *= 2.0;
    const double info_hi = info_at(hi);
    if (info_hi < target_nats - tol)
        throw std::runtime_error("information target " + std::to_string(target_nats) +
                                 " nats unreachable: ceiling " + std::to_string(info_hi) + " nats");
    if (std::abs(info_hi - target_nats) <= tol) return hi;

    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double info = info_at(mid);
        if (std::abs(info - target_nats) <= tol) return mid;
        (info < target_nats ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace voi
