#include "voi/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "voi/numerics.hpp"

namespace voi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDenseLimit = 4096;

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (n % 2 != 0) throw std::invalid_argument("n must be even");
}

void check_spec(const ModelSpec& spec) {
    if (spec.family == Family::Custom)
        throw std::invalid_argument("custom models load costs from CSV");
    check_n(spec.n);
    if (spec.prior && spec.prior->size() != spec.n)
        throw std::invalid_argument("prior length does not match n");
}

bool is_circle(Family f) {
    return f == Family::CircleCircumferenceLinear || f == Family::UnitCircleLinear ||
           f == Family::UnitCircleLog || f == Family::UnitCircleRoot;
}

}  // namespace

bool ModelSpec::closed_form_available() const {
    return family == Family::CircleCircumferenceLinear || family == Family::UnitCircleLinear ||
           family == Family::UnitCircleLog || family == Family::OneWayLineLinear;
}

Family parse_family(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "circle-linear" || key == "circle-circumference-n-linear")
        return Family::CircleCircumferenceLinear;
    if (key == "unit-circle-linear") return Family::UnitCircleLinear;
    if (key == "unit-circle-log") return Family::UnitCircleLog;
    if (key == "unit-circle-root") return Family::UnitCircleRoot;
    if (key == "one-way-line" || key == "one-way-line-linear") return Family::OneWayLineLinear;
    if (key == "custom") return Family::Custom;
    throw std::invalid_argument("unknown model family: " + std::string(name));
}

std::string family_name(Family family) {
    switch (family) {
        case Family::CircleCircumferenceLinear: return "circle-linear";
        case Family::UnitCircleLinear: return "unit-circle-linear";
        case Family::UnitCircleLog: return "unit-circle-log";
        case Family::UnitCircleRoot: return "unit-circle-root";
        case Family::OneWayLineLinear: return "one-way-line";
        case Family::Custom: return "custom";
    }
    throw std::logic_error("family_name: bad enum");
}

Geometry family_geometry(Family family) {
    switch (family) {
        case Family::CircleCircumferenceLinear: return Geometry::CircleCircumferenceN;
        case Family::OneWayLineLinear: return Geometry::OneWayLine;
        default: return Geometry::UnitCircle;
    }
}

FiniteSpace make_space(Family family, int n) {
    return FiniteSpace::make(family_geometry(family), n);
}

std::vector<double> displacement_costs(Family family, int n) {
    check_n(n);
    std::vector<double> c(static_cast<size_t>(n));
    const double step = 2.0 * kPi / n;
    for (int i = 0; i < n; ++i) {
        const int ring = std::min(i, n - i);
        switch (family) {
            case Family::CircleCircumferenceLinear: c[i] = ring; break;
            case Family::UnitCircleLinear: c[i] = ring * step; break;
            case Family::UnitCircleLog: c[i] = i == 0 ? 0.0 : std::log(ring * step); break;
            case Family::UnitCircleRoot: c[i] = std::sqrt(ring * step); break;
            case Family::OneWayLineLinear: c[i] = i * step; break;
            case Family::Custom: throw std::invalid_argument("custom models have no generated costs");
        }
    }
    return c;
}

CostMatrix build_cost(const ModelSpec& spec) {
    check_spec(spec);
    if (spec.n > kDenseLimit)
        throw std::invalid_argument("n too large for dense cost matrix (limit " +
                                    std::to_string(kDenseLimit) + ")");
    const std::vector<double> profile = displacement_costs(spec.family, spec.n);
    Matrix m(spec.n, spec.n);
    for (int x = 0; x < spec.n; ++x)
        for (int u = 0; u < spec.n; ++u)
            m(x, u) = profile[static_cast<size_t>(((u - x) % spec.n + spec.n) % spec.n)];
    return CostMatrix{std::move(m), true};
}

double closed_form_Z(const ModelSpec& spec, double beta) {
    check_spec(spec);
    if (beta < 0.0) throw std::invalid_argument("closed_form_Z: beta must be nonnegative");
    if (!spec.closed_form_available())
        throw std::invalid_argument("no closed form; use generic path");
    if (beta == 0.0) return 1.0;

    const double n = spec.n;
    switch (spec.family) {
        case Family::CircleCircumferenceLinear:
            return (1.0 / n) * (-std::expm1(-beta * n / 2.0)) * coth(beta / 2.0);
        case Family::UnitCircleLinear: {
            // 2 e^{-b pi}(e^{b pi} - e^{2 b pi/n}) / ((e^{2 b pi/n} - 1) n)
            // rewritten with negative exponents for the middle term
            const double r = std::exp(-2.0 * beta * kPi / n);
            const double mid = 2.0 * (r - std::exp(-beta * kPi)) /
                               (-std::expm1(-2.0 * beta * kPi / n)) / n;
            return 1.0 / n + mid + std::exp(-beta * kPi) / n;
        }
        case Family::UnitCircleLog:
            return std::pow(2.0 / n, 1.0 - beta) * std::pow(kPi, -beta) *
                       harmonic_number(spec.n / 2 - 1, beta) +
                   (1.0 + std::pow(kPi, -beta)) / n;
        case Family::OneWayLineLinear:
            return (1.0 / n) * std::exp(-beta * kPi) * std::sinh(kPi * beta) *
                   (coth(kPi * beta / n) + 1.0);
        default: break;
    }
    throw std::logic_error("closed_form_Z: bad family");
}

double closed_form_log_Z(const ModelSpec& spec, double beta) {
    check_spec(spec);
    if (beta < 0.0) throw std::invalid_argument("closed_form_log_Z: beta must be nonnegative");
    if (!spec.closed_form_available())
        throw std::invalid_argument("no closed form; use generic path");
    if (beta == 0.0) return 0.0;

    const double n = spec.n;
    const double neg_inf = -std::numeric_limits<double>::infinity();
    // ln(1 - e^{-x}) without cancellation at small x
    const auto log1mexp = [](double x) { return std::log(-std::expm1(-x)); };
    switch (spec.family) {
        case Family::CircleCircumferenceLinear:
            return log1mexp(beta * n / 2.0) + std::log(coth(beta / 2.0)) - std::log(n);
        case Family::UnitCircleLinear: {
            // ln of the three-term sum: 1/n, geometric middle, e^{-b pi}/n
            const double t0 = -std::log(n);
            const double tm = spec.n == 2 ? neg_inf
                                          : std::log(2.0 / n) - 2.0 * beta * kPi / n +
                                                log1mexp(beta * kPi * (n - 2.0) / n) -
                                                log1mexp(2.0 * beta * kPi / n);
            const double t1 = -beta * kPi - std::log(n);
            const double terms[] = {t0, tm, t1};
            return log_sum_exp(terms);
        }
        case Family::UnitCircleLog: {
            const double h = harmonic_number(spec.n / 2 - 1, beta);
            const double tm = spec.n == 2 ? neg_inf
                                          : (1.0 - beta) * std::log(2.0 / n) -
                                                beta * std::log(kPi) + std::log(h);
            const double tr = std::log1p(std::pow(kPi, -beta)) - std::log(n);
            const double terms[] = {tm, tr};
            return log_sum_exp(terms);
        }
        case Family::OneWayLineLinear:
            // geometric-sum form of the printed expression
            return -std::log(n) + log1mexp(2.0 * kPi * beta) - log1mexp(2.0 * kPi * beta / n);
        default: break;
    }
    throw std::logic_error("closed_form_log_Z: bad family");
}

double closed_form_gamma_prime_circumference(int n, double beta) {
    check_n(n);
    if (beta <= 0.0)
        throw std::invalid_argument("closed_form_gamma_prime_circumference: beta must be positive");
    const double x = beta * n / 2.0;
    const double head = x < 700.0 ? n / (2.0 * std::expm1(x)) : 0.0;
    return head - csch(beta);
}

double limit_gamma_prime_circumference(double beta) {
    if (beta <= 0.0)
        throw std::invalid_argument("limit_gamma_prime_circumference: beta must be positive");
    return -csch(beta);
}

double limit_Z_unit_linear(double beta) {
    if (beta <= 0.0) throw std::invalid_argument("limit_Z_unit_linear: beta must be positive");
    return one_minus_exp_over(beta * kPi);
}

double maxent_cost(const ModelSpec& spec) {
    check_spec(spec);
    const std::vector<double> profile = displacement_costs(spec.family, spec.n);
    if (!spec.prior || spec.prior->is_uniform()) {
        double sum = 0.0;
        for (double c : profile) sum += c;
        return sum / spec.n;
    }
    // product measure prior x prior over a circulant cost
    const ProbVector& p = *spec.prior;
    double e = 0.0;
    for (int d = 0; d < spec.n; ++d) {
        double w = 0.0;
        for (int x = 0; x < spec.n; ++x) w += p[x] * p[(x + d) % spec.n];
        e += w * profile[static_cast<size_t>(d)];
    }
    return e;
}

std::optional<double> maxent_cost_limit(Family family) {
    if (family == Family::UnitCircleLinear) return kPi / 2.0;
    if (family == Family::UnitCircleLog) return std::log(kPi) - 1.0;
    return std::nullopt;
}

HartleyPoint hartley_voi(const ModelSpec& spec, int bits) {
    check_spec(spec);
    if (!is_circle(spec.family))
        throw std::invalid_argument("family without Hartley semantics");
    if (bits < 1) throw std::invalid_argument("hartley_voi: bits must be positive");
    const int cells = 1 << bits;
    if (cells > spec.n || spec.n % cells != 0)
        throw std::invalid_argument("n must be a power-of-two multiple of cells");

    const std::vector<double> profile = displacement_costs(spec.family, spec.n);
    const int m = spec.n / cells;
    double residual = 0.0;
    for (int cell = 0; cell < cells; ++cell) {
        double best = std::numeric_limits<double>::infinity();
        for (int u = 0; u < spec.n; ++u) {
            double mean = 0.0;
            for (int x = cell * m; x < (cell + 1) * m; ++x)
                mean += profile[static_cast<size_t>(((x - u) % spec.n + spec.n) % spec.n)];
            best = std::min(best, mean / m);
        }
        residual += best;
    }
    residual /= cells;
    return {bits, bits * std::numbers::ln2, maxent_cost(spec) - residual};
}

std::vector<HartleyPoint> hartley_table(const ModelSpec& spec) {
    std::vector<HartleyPoint> out;
    for (int k = 1; (1 << k) <= spec.n && spec.n % (1 << k) == 0; ++k)
        out.push_back(hartley_voi(spec, k));
    return out;
}

double cost_effect(Family family, int n, double beta) {
    const ProbVector u1 = ProbVector::uniform(n), u2 = ProbVector::uniform(n + 2);
    const double e1 = tilted_stats(displacement_costs(family, n), u1.values(), beta).mean_cost;
    const double e2 = tilted_stats(displacement_costs(family, n + 2), u2.values(), beta).mean_cost;
    return (e2 - e1) / 2.0;
}

double variance_effect(Family family, int n, double beta) {
    const ProbVector u1 = ProbVector::uniform(n), u2 = ProbVector::uniform(n + 2);
    const double v1 = tilted_stats(displacement_costs(family, n), u1.values(), beta).var_cost;
    const double v2 = tilted_stats(displacement_costs(family, n + 2), u2.values(), beta).var_cost;
    return (v2 - v1) / 2.0;
}

Model make_model(const ModelSpec& spec) {
    check_spec(spec);
    Model model{family_name(spec.family),
                spec.n,
                spec.prior ? *spec.prior : ProbVector::uniform(spec.n),
                spec.prior ? *spec.prior : ProbVector::uniform(spec.n),
                displacement_costs(spec.family, spec.n),
                std::nullopt,
                nullptr};
    if (spec.closed_form_available()) {
        const ModelSpec cf{spec.family, spec.n, std::nullopt};
        model.closed_form_gamma = [cf](double beta) { return closed_form_log_Z(cf, beta); };
    }
    if (!model.symmetric()) model.matrix = build_cost(ModelSpec{spec.family, spec.n, std::nullopt});
    return model;
}

Model make_custom_model(CostMatrix cost, ProbVector prior) {
    const int n = cost.n();
    if (prior.size() != n) throw std::invalid_argument("prior length does not match cost matrix");
    cost.translation_invariant = is_translation_invariant(cost);

    // extract the displacement profile when the matrix is truly circulant
    std::vector<double> profile;
    bool circulant = true;
    for (int x = 0; x < n && circulant; ++x)
        for (int u = 0; u < n; ++u)
            if (cost(x, u) != cost(0, ((u - x) % n + n) % n)) {
                circulant = false;
                break;
            }
    if (circulant) {
        profile.resize(static_cast<size_t>(n));
        for (int d = 0; d < n; ++d) profile[static_cast<size_t>(d)] = cost(0, d);
    }

    return Model{"custom", n, prior, prior, std::move(profile), std::move(cost), nullptr};
}

}  // namespace voi
