// voi: value-of-information curves for finite decision problems with an
// information constraint, on circular and linear transport-cost geometries.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "voi/csv.hpp"
#include "voi/engine.hpp"
#include "voi/measure.hpp"
#include "voi/models.hpp"
#include "voi/numerics.hpp"
#include "voi/oracle.hpp"
#include "voi/svg.hpp"

namespace {

using namespace voi;

struct GridSpec {
    double min = 1e-3;
    double max = 50.0;
    int count = 200;
    std::string scale = "geometric";
    bool include_zero = true;
};

std::vector<double> build_grid(const GridSpec& g) {
    if (g.count < 1) throw std::invalid_argument("beta-count must be at least 1");
    if (g.scale == "geometric" && g.min <= 0.0)
        throw std::invalid_argument("beta-min must be positive for a geometric grid");
    if (g.min < 0.0) throw std::invalid_argument("beta-min must be nonnegative");
    if (g.count > 1 && g.max <= g.min)
        throw std::invalid_argument("beta-max must exceed beta-min");

    std::vector<double> grid;
    if (g.include_zero) grid.push_back(0.0);
    if (g.count == 1) {
        if (g.min > 0.0 || !g.include_zero) grid.push_back(g.min);
    } else {
        for (int k = 0; k < g.count; ++k) {
            const double t = static_cast<double>(k) / (g.count - 1);
            grid.push_back(g.scale == "geometric" ? g.min * std::pow(g.max / g.min, t)
                                                  : g.min + t * (g.max - g.min));
        }
        grid.back() = g.max;
    }
    return grid;
}

LogBase parse_base_flag(const std::string& s) {
    if (s == "bits") return LogBase::Bits;
    if (s == "nats") return LogBase::Nats;
    throw std::invalid_argument("base must be 'bits' or 'nats'");
}

struct ModelConfig {
    std::string model;
    int n = 8;
    bool n_given = false;
    std::string cost_path;
    std::string prior_path;
};

Model resolve_model(const ModelConfig& mc) {
    const Family family = parse_family(mc.model);
    std::optional<ProbVector> prior;
    if (!mc.prior_path.empty()) prior = load_prior_csv(mc.prior_path);

    if (family == Family::Custom) {
        if (mc.cost_path.empty())
            throw std::invalid_argument("custom model requires --cost");
        CostFile file = load_cost_csv(mc.cost_path);
        if (mc.n_given && mc.n != file.cost.n())
            throw std::invalid_argument("n does not match the cost file (" +
                                        std::to_string(file.cost.n()) + ")");
        ProbVector p = prior ? *prior
                             : (file.prior ? *file.prior : ProbVector::uniform(file.cost.n()));
        return make_custom_model(std::move(file.cost), std::move(p));
    }
    if (!mc.cost_path.empty())
        throw std::invalid_argument("--cost requires --model custom");
    return make_model(ModelSpec{family, mc.n, prior});
}

// ------------------------------------------------------------------ verify

struct Check {
    std::string name;
    double deviation = 0.0;
    double tol = 0.0;
    bool pass = false;
};

double brute_Z(Family family, int n, double beta) {
    const ProbVector u = ProbVector::uniform(n);
    return std::exp(tilted_stats(displacement_costs(family, n), u.values(), beta).log_z);
}

int run_verify(double tol_override, std::ostream& out) {
    const bool use_default = tol_override <= 0.0;
    const auto tol = [&](double def) { return use_default ? def : tol_override; };
    std::vector<Check> checks;

    const Family closed_families[] = {Family::CircleCircumferenceLinear, Family::UnitCircleLinear,
                                      Family::UnitCircleLog, Family::OneWayLineLinear};
    const Family all_families[] = {Family::CircleCircumferenceLinear, Family::UnitCircleLinear,
                                   Family::UnitCircleLog, Family::UnitCircleRoot,
                                   Family::OneWayLineLinear};

    // closed-form partition functions against brute-force sums
    {
        double dev = 0.0, dev_log20 = 0.0;
        for (Family f : closed_families)
            for (int n : {4, 8, 16, 64})
                for (double beta : {0.01, 0.1, 1.0, 5.0, 20.0}) {
                    const double zb = brute_Z(f, n, beta);
                    const double zc = closed_form_Z(ModelSpec{f, n, std::nullopt}, beta);
                    const double rel = std::abs(zc - zb) / std::abs(zb);
                    if (f == Family::UnitCircleLog && beta == 20.0)
                        dev_log20 = std::max(dev_log20, rel);
                    else
                        dev = std::max(dev, rel);
                }
        checks.push_back({"closed-form Z vs brute force", dev, tol(1e-12), dev <= tol(1e-12)});
        checks.push_back({"closed-form Z vs brute force (log-cost, beta=20)", dev_log20, tol(1e-9),
                          dev_log20 <= tol(1e-9)});
    }

    // cumulant identity beta*Gamma' - Gamma against the channel's mutual information
    {
        double dev = 0.0;
        const std::vector<double> grid = default_beta_grid();
        for (Family f : all_families) {
            Model model = make_model(ModelSpec{f, 8, std::nullopt});
            const CostMatrix cost = build_cost(ModelSpec{f, 8, std::nullopt});
            for (double beta : grid) {
                const GibbsStats s = gibbs_stats(model, beta);
                const GibbsSolution sol = gibbs_channel(model.prior, model.ref, cost, beta);
                dev = std::max(dev, std::abs(s.info_nats - sol.info_nats));
            }
        }
        checks.push_back({"cumulant identity vs direct mutual information", dev, tol(1e-9),
                          dev <= tol(1e-9)});
    }

    // both marginal conditions on translation-invariant models
    {
        double dev = 0.0;
        for (Family f : all_families) {
            Model model = make_model(ModelSpec{f, 8, std::nullopt});
            const CostMatrix cost = build_cost(ModelSpec{f, 8, std::nullopt});
            for (double beta : {0.0, 0.5, 2.0, 10.0}) {
                const GibbsSolution sol = gibbs_channel(model.prior, model.ref, cost, beta);
                const MarginalReport rep = check_marginal_conditions(sol, model.prior, model.ref);
                dev = std::max(dev, rep.max_deviation);
            }
        }
        checks.push_back({"marginal conditions on translation-invariant models", dev, tol(1e-10),
                          dev <= tol(1e-10)});
    }

    // E{c} from the channel against -Gamma'
    {
        double dev = 0.0;
        const std::vector<double> grid = default_beta_grid();
        for (Family f : all_families) {
            Model model = make_model(ModelSpec{f, 8, std::nullopt});
            const CostMatrix cost = build_cost(ModelSpec{f, 8, std::nullopt});
            for (double beta : grid) {
                const GibbsSolution sol = gibbs_channel(model.prior, model.ref, cost, beta);
                dev = std::max(dev, std::abs(sol.expected_cost + cumulant_derivative(model, beta)));
            }
        }
        checks.push_back({"expected cost vs -Gamma'", dev, tol(1e-8), dev <= tol(1e-8)});
    }

    // engine against the alternating-minimization oracle
    {
        double dev = 0.0, dev_q = 0.0;
        GridSpec gs;
        gs.count = 49;  // 50 points including 0
        const std::vector<double> grid = build_grid(gs);
        for (Family f : {Family::CircleCircumferenceLinear, Family::UnitCircleLinear}) {
            Model model = make_model(ModelSpec{f, 8, std::nullopt});
            const CostMatrix cost = build_cost(ModelSpec{f, 8, std::nullopt});
            const std::vector<OracleResult> curve = oracle_curve(model.prior, cost, grid);
            for (size_t i = 0; i < grid.size(); ++i) {
                const GibbsStats s = gibbs_stats(model, grid[i]);
                dev = std::max(dev, std::abs(s.info_nats - curve[i].info_nats));
                dev = std::max(dev, std::abs(s.expected_cost - curve[i].expected_cost));
                for (int u = 0; u < 8; ++u)
                    dev_q = std::max(dev_q, std::abs(curve[i].final_ref_u[u] - 0.125));
            }
        }
        checks.push_back({"engine vs oracle (I, E{c})", dev, tol(1e-6), dev <= tol(1e-6)});
        checks.push_back({"oracle fixed-point uniformity", dev_q, tol(1e-9), dev_q <= tol(1e-9)});
    }

    // maximum-entropy anchors
    {
        double dev = 0.0;
        for (int n = 2; n <= 64; n += 2) {
            dev = std::max(dev, std::abs(maxent_cost(ModelSpec{Family::UnitCircleLinear, n,
                                                               std::nullopt}) -
                                         std::numbers::pi / 2.0));
            dev = std::max(dev, std::abs(maxent_cost(ModelSpec{Family::CircleCircumferenceLinear,
                                                               n, std::nullopt}) -
                                         n / 4.0));
        }
        checks.push_back({"maximum-entropy cost anchors", dev, tol(1e-12), dev <= tol(1e-12)});
    }

    // perturbed cost matrix: u-marginal condition is expected to fail
    {
        CostMatrix cost = build_cost(ModelSpec{Family::CircleCircumferenceLinear, 8, std::nullopt});
        cost.entries(0, 3) += 0.35;
        cost.translation_invariant = is_translation_invariant(cost);
        const ProbVector uniform = ProbVector::uniform(8);
        const GibbsSolution sol = gibbs_channel(uniform, uniform, cost, 1.0);
        const MarginalReport rep = check_marginal_conditions(sol, uniform, uniform);
        const bool ok = !rep.u_ok && rep.x_ok;
        checks.push_back({"perturbed-cost fixture: u-marginal deviates (expected)",
                          rep.max_deviation, 0.0, ok});
    }

    bool all_ok = true;
    for (const Check& c : checks) {
        all_ok = all_ok && c.pass;
        char line[160];
        std::snprintf(line, sizeof(line), "%-52s max dev %.3e%s  %s", c.name.c_str(), c.deviation,
                      c.tol > 0.0 ? ("  (tol " + format_num(c.tol) + ")").c_str() : "",
                      c.pass ? "PASS" : "FAIL");
        out << line << "\n";
    }
    out << (all_ok ? "verification passed" : "verification FAILED") << "\n";
    return all_ok ? 0 : 2;
}

// -------------------------------------------------------------------- plot

struct PlotInputs {
    std::vector<std::string> curve_files;
    std::vector<std::string> hartley_files;
    std::string model;
    std::vector<int> ns;
    bool inline_hartley = false;
    std::string base = "bits";
    std::string out = "plot.svg";
};

int run_plot(const PlotInputs& in) {
    std::vector<PlotSeries> series;
    std::vector<PlotDots> dots;
    std::vector<LogBase> bases;

    for (const std::string& path : in.curve_files) {
        const CurveFile file = read_curve_csv(path);
        bases.push_back(file.base);
        PlotSeries s;
        s.label = file.model + " n=" + std::to_string(file.n);
        for (const CurvePoint& p : file.points) s.points.emplace_back(p.info, p.value);
        series.push_back(std::move(s));
    }
    for (const std::string& path : in.hartley_files) {
        const HartleyFile file = read_hartley_csv(path);
        bases.push_back(file.base);
        PlotDots d;
        d.label = "Hartley n=" + std::to_string(file.n);
        for (const HartleyPoint& p : file.points)
            d.points.emplace_back(to_base(p.info_nats, file.base), p.value);
        dots.push_back(std::move(d));
    }

    if (!in.ns.empty() && in.model.empty())
        throw std::invalid_argument("--n without --model");
    if (!in.model.empty()) {
        const Family family = parse_family(in.model);
        const LogBase base = parse_base_flag(in.base);
        bases.push_back(base);
        const std::vector<double> grid = default_beta_grid();
        std::vector<int> ns = in.ns.empty() ? std::vector<int>{8} : in.ns;
        for (int n : ns) {
            Model model = make_model(ModelSpec{family, n, std::nullopt});
            const VoiCurve curve = voi_curve(model, grid, base);
            PlotSeries s;
            s.label = curve.model + " n=" + std::to_string(n);
            for (const CurvePoint& p : curve.points) s.points.emplace_back(p.info, p.value);
            series.push_back(std::move(s));
            if (in.inline_hartley) {
                PlotDots d;
                d.label = "Hartley n=" + std::to_string(n);
                for (const HartleyPoint& p : hartley_table(ModelSpec{family, n, std::nullopt}))
                    d.points.emplace_back(to_base(p.info_nats, base), p.value);
                dots.push_back(std::move(d));
            }
        }
    }

    if (series.empty() && dots.empty()) throw std::invalid_argument("empty input");
    for (size_t i = 1; i < bases.size(); ++i)
        if (bases[i] != bases[0]) throw std::invalid_argument("mixed information bases");

    const std::string x_label =
        bases.empty() || bases[0] == LogBase::Bits ? "I [bits]" : "I [nats]";
    write_file_atomic(in.out,
                      render_svg_chart(series, dots, x_label, "V", "Value of information"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Value-of-information curves for finite decision problems on circular and "
                 "linear transport-cost geometries"};
    app.require_subcommand(1);

    ModelConfig mc;
    GridSpec grid;
    std::string base = "bits";
    std::string out_path;
    double tol = 0.0;
    std::vector<double> limit_betas;
    PlotInputs plot;

    std::vector<CLI::Option*> n_opts;
    const auto add_model_opts = [&](CLI::App* cmd, bool with_cost) {
        cmd->add_option("--model", mc.model,
                        "model family: circle-linear, unit-circle-linear, unit-circle-log, "
                        "unit-circle-root, one-way-line, custom")
            ->required();
        n_opts.push_back(cmd->add_option("--n", mc.n, "number of points (even)"));
        cmd->add_option("--prior", mc.prior_path, "prior CSV (n, then n weights)");
        if (with_cost) cmd->add_option("--cost", mc.cost_path, "custom cost CSV");
    };

    CLI::App* curve = app.add_subcommand("curve", "sweep beta and emit a VoI curve CSV");
    add_model_opts(curve, true);
    curve->add_option("--beta-min", grid.min, "grid start (default 1e-3)");
    curve->add_option("--beta-max", grid.max, "grid end (default 50)");
    curve->add_option("--beta-count", grid.count, "grid size (default 200)");
    curve->add_option("--beta-scale", grid.scale, "geometric or linear")
        ->check(CLI::IsMember({"geometric", "linear"}));
    curve->add_flag("--include-zero,!--no-include-zero", grid.include_zero,
                    "prepend beta = 0 (default on)");
    curve->add_option("--base", base, "information base: bits or nats")
        ->check(CLI::IsMember({"bits", "nats"}));
    curve->add_option("--out", out_path, "output CSV path (default curve.csv)");

    CLI::App* hartley = app.add_subcommand("hartley", "emit the Hartley VoI table CSV");
    add_model_opts(hartley, false);
    hartley->add_option("--base", base, "information base: bits or nats")
        ->check(CLI::IsMember({"bits", "nats"}));
    hartley->add_option("--out", out_path, "output CSV path (default hartley.csv)");

    CLI::App* maxent = app.add_subcommand("maxent", "print the maximum-entropy cost");
    add_model_opts(maxent, true);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant batteries");
    verify->add_option("--tol", tol, "override every check tolerance");

    CLI::App* plot_cmd = app.add_subcommand("plot", "render curves (and Hartley dots) to SVG");
    plot_cmd->add_option("files", plot.curve_files, "curve CSV files");
    plot_cmd->add_option("--hartley-csv", plot.hartley_files, "Hartley CSV files for dots");
    plot_cmd->add_option("--model", plot.model, "inline model family");
    plot_cmd->add_option("--n", plot.ns, "inline n values (repeatable)")->delimiter(',');
    plot_cmd->add_flag("--hartley", plot.inline_hartley, "overlay Hartley dots for inline models");
    plot_cmd->add_option("--base", plot.base, "information base for inline curves")
        ->check(CLI::IsMember({"bits", "nats"}));
    plot_cmd->add_option("--out", plot.out, "output SVG path (default plot.svg)");

    CLI::App* limit = app.add_subcommand(
        "limit", "print large-n limits: unit-circle Z and circumference-n Gamma'");
    limit->add_option("--beta", limit_betas, "beta values (default 0.1 1 10)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (const CLI::Option* o : n_opts)
        if (o->count() > 0) mc.n_given = true;

    try {
        if (curve->parsed()) {
            Model model = resolve_model(mc);
            const VoiCurve c = voi_curve(model, build_grid(grid), parse_base_flag(base));
            write_curve_csv(c, out_path.empty() ? "curve.csv" : out_path);
            return 0;
        }
        if (hartley->parsed()) {
            const Family family = parse_family(mc.model);
            if ((mc.n & (mc.n - 1)) != 0 || mc.n < 2)
                throw std::invalid_argument("n must be a power-of-two multiple of cells");
            const ModelSpec spec{family, mc.n, std::nullopt};
            write_hartley_csv(family_name(family), mc.n, parse_base_flag(base),
                              hartley_table(spec), out_path.empty() ? "hartley.csv" : out_path);
            return 0;
        }
        if (maxent->parsed()) {
            const Family family = parse_family(mc.model);
            double m;
            int n = mc.n;
            if (family == Family::Custom) {
                Model model = resolve_model(mc);
                n = model.n;
                const JointMeasure product = [&] {
                    Matrix j(n, n);
                    for (int x = 0; x < n; ++x)
                        for (int u = 0; u < n; ++u) j(x, u) = model.prior[x] * model.ref[u];
                    return JointMeasure(std::move(j));
                }();
                m = expected_cost(product, model.cost_matrix());
            } else {
                std::optional<ProbVector> prior;
                if (!mc.prior_path.empty()) prior = load_prior_csv(mc.prior_path);
                m = maxent_cost(ModelSpec{family, n, prior});
            }
            std::cout << "model=" << family_name(family) << " n=" << n
                      << " maxent_cost=" << format_num(m) << "\n";
            if (const auto lim = maxent_cost_limit(family))
                std::cout << "limit (n->infinity) = " << format_num(*lim) << "\n";
            return 0;
        }
        if (verify->parsed()) return run_verify(tol, std::cout);
        if (plot_cmd->parsed()) return run_plot(plot);
        if (limit->parsed()) {
            if (limit_betas.empty()) limit_betas = {0.1, 1.0, 10.0};
            for (double b : limit_betas)
                std::cout << "beta=" << format_num(b)
                          << " limit_Z_unit_linear=" << format_num(limit_Z_unit_linear(b))
                          << " limit_gamma_prime_circumference="
                          << format_num(limit_gamma_prime_circumference(b)) << "\n";
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
