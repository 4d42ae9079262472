#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voi/engine.hpp"
#include "voi/measure.hpp"

namespace voi {

// Bundled cost geometries. All circle families use an even number of points;
// the root family is the one without a closed-form partition function.
enum class Family {
    CircleCircumferenceLinear,  // n points on a circle of circumference n, linear cost
    UnitCircleLinear,           // n points on the 2*pi circle, linear cost
    UnitCircleLog,              // log of the unit-circle distance (0 on the diagonal)
    UnitCircleRoot,             // square root of the unit-circle distance
    OneWayLineLinear,           // directed distance on a 2*pi segment
    Custom,
};

struct ModelSpec {
    Family family = Family::CircleCircumferenceLinear;
    int n = 8;
    std::optional<ProbVector> prior;  // uniform when absent

    bool closed_form_available() const;
};

Family parse_family(std::string_view name);
std::string family_name(Family family);
Geometry family_geometry(Family family);
FiniteSpace make_space(Family family, int n);

// Cost as a function of the circular/directed index displacement.
std::vector<double> displacement_costs(Family family, int n);

// Dense translation-invariant cost matrix for the bundled families.
CostMatrix build_cost(const ModelSpec& spec);

// Closed-form partition function Z(beta):
//   circumference-n : (1/n)(1 - e^{-beta n/2}) coth(beta/2)
//   unit circle     : 1/n + 2 e^{-b pi}(e^{b pi} - e^{2b pi/n}) / ((e^{2b pi/n}-1) n) + e^{-b pi}/n
//   unit log        : (2/n)^{1-b} pi^{-b} H(n/2-1, b) + (1 + pi^{-b})/n
//   one-way line    : (1/n) e^{-b pi} sinh(pi b)(coth(pi b/n) + 1)
// Z(0) = 1 by continuity; the root family has no closed form.
double closed_form_Z(const ModelSpec& spec, double beta);

// ln Z(beta) evaluated in log space, safe for large beta * |cost|.
double closed_form_log_Z(const ModelSpec& spec, double beta);

// Gamma'(beta) = n/(2(e^{beta n/2} - 1)) - csch(beta) for the circumference-n
// circle, and its n -> infinity limit -csch(beta).
double closed_form_gamma_prime_circumference(int n, double beta);
double limit_gamma_prime_circumference(double beta);

// lim_n Z(beta) = (1 - e^{-beta pi}) / (beta pi) for the linear unit circle.
double limit_Z_unit_linear(double beta);

// Expected cost under the zero-information product measure.
double maxent_cost(const ModelSpec& spec);

// n -> infinity maximum-entropy cost where a closed form exists:
// pi/2 for the linear unit circle, ln(pi) - 1 for log costs.
std::optional<double> maxent_cost_limit(Family family);

// Cost saving from learning which of 2^bits equal arcs contains the state,
// acting optimally per arc.
struct HartleyPoint {
    int bits = 0;
    double info_nats = 0.0;
    double value = 0.0;
};
HartleyPoint hartley_voi(const ModelSpec& spec, int bits);
std::vector<HartleyPoint> hartley_table(const ModelSpec& spec);  // k = 1 .. log2 n

// Discrete step-2 sensitivities of E{c}(beta, n) and Var{c}(beta, n) to n.
double cost_effect(Family family, int n, double beta);
double variance_effect(Family family, int n, double beta);

// Assemble an engine model (uniform reference measure equal to the prior).
Model make_model(const ModelSpec& spec);
Model make_custom_model(CostMatrix cost, ProbVector prior);

}  // namespace voi
