#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "voi/engine.hpp"
#include "voi/measure.hpp"
#include "voi/models.hpp"

using namespace voi;

namespace {

const Family kBundled[] = {Family::CircleCircumferenceLinear, Family::UnitCircleLinear,
                           Family::UnitCircleLog, Family::UnitCircleRoot,
                           Family::OneWayLineLinear};

// fixed non-symmetric cost matrix, shared with the oracle tests
CostMatrix fixture4() {
    Matrix m(4, 4);
    const double rows[4][4] = {{0.0, 1.7, 0.4, 2.9},
                               {0.6, 0.0, 2.2, 1.1},
                               {2.8, 0.3, 0.0, 1.9},
                               {1.2, 2.5, 0.7, 0.0}};
    for (int x = 0; x < 4; ++x)
        for (int u = 0; u < 4; ++u) m(x, u) = rows[x][u];
    CostMatrix c{std::move(m), false};
    c.translation_invariant = is_translation_invariant(c);
    return c;
}

}  // namespace

TEST_CASE("gibbs channel at beta = 0 is the product measure") {
    for (Family f : kBundled) {
        const ModelSpec spec{f, 8, std::nullopt};
        const ProbVector uniform = ProbVector::uniform(8);
        const GibbsSolution sol = gibbs_channel(uniform, uniform, build_cost(spec), 0.0);
        for (int x = 0; x < 8; ++x)
            for (int u = 0; u < 8; ++u) CHECK(std::abs(sol.channel(x, u) - 1.0 / 64.0) < 1e-15);
        CHECK(sol.info_nats < 1e-12);
        CHECK(std::abs(sol.expected_cost - maxent_cost(spec)) < 1e-12);
        CHECK(std::abs(sol.gamma) < 1e-14);
    }
}

TEST_CASE("gibbs channel at large beta approaches the diagonal") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    const GibbsSolution sol = gibbs_channel(uniform, uniform, c, 50.0);
    CHECK(sol.expected_cost < 1e-10);
    CHECK(std::abs(sol.info_nats - std::log(8.0)) < 1e-6);
    for (int x = 0; x < 8; ++x) CHECK(sol.channel(x, x) > 0.1249);
}

TEST_CASE("partition values are state independent on the circumference-8 circle") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    const GibbsSolution sol = gibbs_channel(uniform, uniform, c, 1.0);
    for (double z : sol.z_of_x) CHECK(std::abs(z - 0.26553990305507152) < 1e-15);
}

TEST_CASE("channel X-marginal reproduces the prior, uniform or not") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    const CostMatrix c = build_cost(ModelSpec{Family::UnitCircleRoot, 8, std::nullopt});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> w(8);
        for (double& x : w) x = dist(rng);
        const ProbVector prior = normalize(w);
        const GibbsSolution sol = gibbs_channel(prior, ProbVector::uniform(8), c, 1.5);
        const auto [px, pu] = marginals(sol.channel);
        for (int i = 0; i < 8; ++i) CHECK(std::abs(px[i] - prior[i]) < 1e-12);
    }
}

TEST_CASE("gibbs channel rejects bad input") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    CHECK_THROWS_AS(gibbs_channel(ProbVector::uniform(4), uniform, c, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(gibbs_channel(uniform, uniform, c, -0.5), std::invalid_argument);
}

TEST_CASE("cumulant: frozen value and direct-summation oracle") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    const GibbsSolution sol = gibbs_channel(uniform, uniform, c, 1.0);
    CHECK(std::abs(cumulant(sol, uniform) - (-1.3259901556004179)) < 1e-13);
    CHECK(std::abs(sol.gamma - cumulant(sol, uniform)) < 1e-13);

    // non-translation-invariant: prior-weighted log of row partition sums
    const CostMatrix fx = fixture4();
    const ProbVector u4 = ProbVector::uniform(4);
    const GibbsSolution s4 = gibbs_channel(u4, u4, fx, 2.0);
    double direct = 0.0;
    for (int x = 0; x < 4; ++x) {
        double zx = 0.0;
        for (int u = 0; u < 4; ++u) zx += 0.25 * std::exp(-2.0 * fx(x, u));
        direct += 0.25 * std::log(zx);
    }
    CHECK(std::abs(cumulant(s4, u4) - direct) < 1e-12);
}

TEST_CASE("cumulant derivative: frozen values and small-beta limit") {
    Model c8 = make_model(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    CHECK(std::abs(cumulant_derivative(c8, 1.0) - (-0.77628868678422536)) < 1e-14);
    CHECK(std::abs(cumulant_derivative(c8, 1e-8) - (-2.0)) < 1e-6);
    CHECK(std::abs(cumulant_derivative(c8, 0.0) - (-2.0)) < 1e-14);  // one-sided cross-check path
}

TEST_CASE("info_from_cumulant: identities and clamps") {
    CHECK(info_from_cumulant(0.0, -2.0, 0.0) == 0.0);
    CHECK(info_from_cumulant(-1e-13, -2.0, 0.0) == 0.0);   // clamp near zero
    CHECK(info_from_cumulant(5e-10, -0.0, 0.0) == 0.0);    // tolerated small negative
    CHECK_THROWS_AS(info_from_cumulant(1.0, 0.0, 1.0), std::runtime_error);

    Model c8 = make_model(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    const double gamma = log_partition(c8, 1.0);
    const double info = info_from_cumulant(gamma, cumulant_derivative(c8, 1.0), 1.0);
    CHECK(std::abs(info - 0.54970146881619253) < 1e-13);

    const GibbsStats s50 = gibbs_stats(c8, 50.0);
    CHECK(std::abs(s50.info_nats - std::log(8.0)) < 1e-6);
}

TEST_CASE("cumulant identity equals the channel mutual information on bundled models") {
    const std::vector<double> grid = default_beta_grid();
    for (Family f : kBundled) {
        Model model = make_model(ModelSpec{f, 8, std::nullopt});
        const CostMatrix cost = build_cost(ModelSpec{f, 8, std::nullopt});
        double worst = 0.0;
        for (double beta : grid) {
            const GibbsStats s = gibbs_stats(model, beta);
            const GibbsSolution sol = gibbs_channel(model.prior, model.ref, cost, beta);
            worst = std::max(worst, std::abs(s.info_nats - sol.info_nats));
            worst = std::max(worst, std::abs(s.expected_cost - sol.expected_cost));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("identity gap on a non-symmetric model equals KL(u-marginal || ref)") {
    const CostMatrix fx = fixture4();
    const ProbVector u4 = ProbVector::uniform(4);
    const GibbsSolution sol = gibbs_channel(u4, u4, fx, 2.0);
    const double identity = 2.0 * (-sol.expected_cost) - sol.gamma;
    const auto [px, pu] = marginals(sol.channel);
    double kl = 0.0;
    for (int u = 0; u < 4; ++u)
        if (pu[u] > 0.0) kl += pu[u] * std::log(pu[u] / 0.25);
    CHECK(identity > sol.info_nats);  // formula overshoots by the KL term
    CHECK(std::abs(identity - sol.info_nats - kl) < 1e-12);
    CHECK(std::abs(sol.info_nats - 0.626667799359906) < 1e-12);
}

TEST_CASE("voi_curve: single zero-beta grid point") {
    Model model = make_model(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    const std::vector<double> grid = {0.0};
    const VoiCurve curve = voi_curve(model, grid, LogBase::Bits);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].beta == 0.0);
    CHECK(curve.points[0].info == 0.0);
    CHECK(curve.points[0].value == 0.0);
    CHECK(std::abs(curve.points[0].expected_cost - std::numbers::pi / 2.0) < 1e-12);
}

TEST_CASE("voi_curve validates its grid") {
    Model model = make_model(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    const std::vector<double> no_zero = {0.5, 1.0};
    CHECK_THROWS_WITH_AS(voi_curve(model, no_zero, LogBase::Bits),
                         "voi_curve: beta grid must start at 0", std::invalid_argument);
    const std::vector<double> unsorted = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(voi_curve(model, unsorted, LogBase::Bits), std::invalid_argument);
    const std::vector<double> empty;
    CHECK_THROWS_AS(voi_curve(model, empty, LogBase::Bits), std::invalid_argument);
}

TEST_CASE("curve shape invariants hold on every bundled model") {
    const std::vector<double> grid = default_beta_grid();
    for (Family f : kBundled) {
        Model model = make_model(ModelSpec{f, 8, std::nullopt});
        const VoiCurve curve = voi_curve(model, grid, LogBase::Nats);
        CHECK(curve.points.front().value == 0.0);
        for (size_t i = 0; i + 1 < curve.points.size(); ++i) {
            CHECK(curve.points[i + 1].info_nats >= curve.points[i].info_nats - 1e-12);
            CHECK(curve.points[i + 1].expected_cost <= curve.points[i].expected_cost + 1e-12);
            CHECK(curve.points[i + 1].value >= curve.points[i].value - 1e-12);
        }
        for (const CurvePoint& p : curve.points) {
            CHECK(p.value >= -1e-12);
            CHECK(p.info_nats <= std::log(8.0) + 1e-9);
        }
        // concavity of V in I over well-separated segments
        double prev_slope = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i + 1 < curve.points.size(); ++i) {
            const double di = curve.points[i + 1].info_nats - curve.points[i].info_nats;
            if (di <= 1e-12) continue;
            const double slope = (curve.points[i + 1].value - curve.points[i].value) / di;
            CHECK(slope <= prev_slope + 1e-8);
            prev_slope = slope;
        }
    }
}

TEST_CASE("information never exceeds the prior entropy") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    const CostMatrix c = build_cost(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> w(8);
        for (double& x : w) x = dist(rng);
        const ProbVector prior = normalize(w);
        const double h = entropy(prior, LogBase::Nats);
        for (double beta : {0.5, 2.0, 20.0}) {
            const GibbsSolution sol = gibbs_channel(prior, ProbVector::uniform(8), c, beta);
            CHECK(sol.info_nats <= h + 1e-9);
        }
    }
}

TEST_CASE("scale covariance: k-scaled costs at beta/k give the same channel") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::UnitCircleRoot, 8, std::nullopt});
    for (double k : {0.25, 3.0, 17.0}) {
        CostMatrix scaled = c;
        for (int x = 0; x < 8; ++x)
            for (int u = 0; u < 8; ++u) scaled.entries(x, u) *= k;
        const GibbsSolution a = gibbs_channel(uniform, uniform, c, 2.0);
        const GibbsSolution b = gibbs_channel(uniform, uniform, scaled, 2.0 / k);
        for (int x = 0; x < 8; ++x)
            for (int u = 0; u < 8; ++u) CHECK(std::abs(a.channel(x, u) - b.channel(x, u)) < 1e-10);
        CHECK(std::abs(a.info_nats - b.info_nats) < 1e-10);
        CHECK(std::abs(k * a.expected_cost - b.expected_cost) < 1e-10);
    }
}

TEST_CASE("marginal condition report") {
    const ProbVector uniform = ProbVector::uniform(8);
    const CostMatrix c = build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});

    const GibbsSolution ti = gibbs_channel(uniform, uniform, c, 2.0);
    const MarginalReport rep = check_marginal_conditions(ti, uniform, uniform);
    CHECK(rep.x_ok);
    CHECK(rep.u_ok);
    CHECK(rep.max_deviation < 1e-12);

    const GibbsSolution zero = gibbs_channel(uniform, uniform, c, 0.0);
    const MarginalReport rep0 = check_marginal_conditions(zero, uniform, uniform);
    CHECK(rep0.x_ok);
    CHECK(rep0.u_ok);

    const ProbVector u4 = ProbVector::uniform(4);
    const GibbsSolution nt = gibbs_channel(u4, u4, fixture4(), 1.0);
    const MarginalReport rep4 = check_marginal_conditions(nt, u4, u4);
    CHECK(rep4.x_ok);
    CHECK(!rep4.u_ok);
}

TEST_CASE("translation invariance detection") {
    CHECK(is_translation_invariant(
        build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt})));

    Matrix identity_cost(4, 4, 1.0);
    for (int i = 0; i < 4; ++i) identity_cost(i, i) = 0.0;
    CHECK(is_translation_invariant(CostMatrix{std::move(identity_cost), false}));

    CostMatrix perturbed = build_cost(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    perturbed.entries(2, 5) += 1e-6;
    CHECK(!is_translation_invariant(perturbed));

    // Toeplitz but not circulant still counts (constant along diagonals)
    Matrix toeplitz(4, 4);
    for (int x = 0; x < 4; ++x)
        for (int u = 0; u < 4; ++u) toeplitz(x, u) = std::abs(x - u);
    CHECK(is_translation_invariant(CostMatrix{std::move(toeplitz), false}));

    CHECK(!fixture4().translation_invariant);
}

TEST_CASE("default beta grid shape") {
    const std::vector<double> grid = default_beta_grid();
    REQUIRE(grid.size() == 201);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == 1e-3);
    CHECK(grid.back() == 50.0);
    for (size_t i = 0; i + 1 < grid.size(); ++i) CHECK(grid[i] < grid[i + 1]);
}

TEST_CASE("bisection inverter hits information targets") {
    Model model = make_model(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    for (double bits : {0.5, 1.0, 2.0, 3.0}) {
        const double target = bits * std::numbers::ln2;
        const double beta = invert_beta_for_info(model, target);
        CHECK(std::abs(gibbs_stats(model, beta).info_nats - target) <= 1e-9);
    }
    CHECK(invert_beta_for_info(model, 0.0) == 0.0);
    CHECK_THROWS_AS(invert_beta_for_info(model, std::log(8.0) + 0.1), std::runtime_error);
}

TEST_CASE("value at matched information drops from n=8 to n=16 on the linear unit circle") {
    Model m8 = make_model(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    Model m16 = make_model(ModelSpec{Family::UnitCircleLinear, 16, std::nullopt});
    const double target = std::numbers::ln2;  // 1 bit
    const double b8 = invert_beta_for_info(m8, target);
    const double b16 = invert_beta_for_info(m16, target);
    const double v8 = maxent_cost(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt}) -
                      gibbs_stats(m8, b8).expected_cost;
    const double v16 = maxent_cost(ModelSpec{Family::UnitCircleLinear, 16, std::nullopt}) -
                       gibbs_stats(m16, b16).expected_cost;
    CHECK(v16 < v8);
    CHECK(std::abs(v8 - 1.06482947147) < 1e-9);
    CHECK(std::abs(v16 - 1.01076953354) < 1e-9);
}

TEST_CASE("second cumulant is the cost variance and differentiates Gamma'") {
    Model c8 = make_model(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
    // Gamma''(0) is the variance of {0,1,1,2,2,3,3,4} around its mean 2
    CHECK(std::abs(second_cumulant(c8, 0.0) - 1.5) < 1e-12);
    for (double beta : {0.3, 1.0, 4.0}) {
        const double h = 1e-5;
        const double fd =
            (cumulant_derivative(c8, beta + h) - cumulant_derivative(c8, beta - h)) / (2 * h);
        CHECK(std::abs(second_cumulant(c8, beta) - fd) < 1e-5);
        CHECK(second_cumulant(c8, beta) >= 0.0);
    }

    // the variance effect is the step-2 discrete n-derivative of Gamma''
    Model m8 = make_model(ModelSpec{Family::UnitCircleLog, 8, std::nullopt});
    Model m10 = make_model(ModelSpec{Family::UnitCircleLog, 10, std::nullopt});
    CHECK(std::abs(variance_effect(Family::UnitCircleLog, 8, 1.0) -
                   (second_cumulant(m10, 1.0) - second_cumulant(m8, 1.0)) / 2.0) < 1e-14);

    // non-symmetric path: prior-weighted within-row variances
    const ProbVector u4 = ProbVector::uniform(4);
    Model fx = make_custom_model(fixture4(), u4);
    double direct = 0.0;
    for (int x = 0; x < 4; ++x) {
        double zx = 0.0, mean = 0.0;
        for (int u = 0; u < 4; ++u) zx += 0.25 * std::exp(-2.0 * fixture4()(x, u));
        for (int u = 0; u < 4; ++u)
            mean += 0.25 * std::exp(-2.0 * fixture4()(x, u)) / zx * fixture4()(x, u);
        double var = 0.0;
        for (int u = 0; u < 4; ++u) {
            const double d = fixture4()(x, u) - mean;
            var += 0.25 * std::exp(-2.0 * fixture4()(x, u)) / zx * d * d;
        }
        direct += 0.25 * var;
    }
    CHECK(std::abs(second_cumulant(fx, 2.0) - direct) < 1e-13);
}

TEST_CASE("concurrent evaluations of a shared model match serial results") {
    const Model model = make_model(ModelSpec{Family::UnitCircleRoot, 64, std::nullopt});
    const std::vector<double> grid = default_beta_grid();
    std::vector<GibbsStats> serial(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) serial[i] = gibbs_stats(model, grid[i]);

    std::vector<GibbsStats> parallel(grid.size());
    const int workers = 4;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = static_cast<size_t>(w); i < grid.size(); i += workers)
                parallel[i] = gibbs_stats(model, grid[i]);
        });
    for (std::thread& t : pool) t.join();

    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(parallel[i].info_nats == serial[i].info_nats);
        CHECK(parallel[i].expected_cost == serial[i].expected_cost);
        CHECK(parallel[i].gamma == serial[i].gamma);
    }
}

TEST_CASE("custom models with a non-uniform prior run through the dense path") {
    const CostMatrix c = build_cost(ModelSpec{Family::UnitCircleLinear, 8, std::nullopt});
    const ProbVector prior =
        normalize(std::vector<double>{3, 1, 1, 1, 1, 1, 1, 1});
    Model model = make_custom_model(c, prior);
    CHECK(!model.symmetric());
    const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
    const VoiCurve curve = voi_curve(model, grid, LogBase::Nats);
    for (size_t i = 0; i + 1 < curve.points.size(); ++i) {
        CHECK(curve.points[i + 1].info_nats >= curve.points[i].info_nats - 1e-12);
        CHECK(curve.points[i + 1].value >= curve.points[i].value - 1e-12);
    }
}
