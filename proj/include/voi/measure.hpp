#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "voi/matrix.hpp"

namespace voi {

enum class LogBase { Nats, Bits };

// Convert a natural-log quantity into the requested base.
double to_base(double nats, LogBase base);

enum class Geometry { CircleCircumferenceN, UnitCircle, OneWayLine };

// A labeled finite set of states/actions with positions on its geometry.
// Circle geometries require an even n >= 2.
struct FiniteSpace {
    int n = 0;
    Geometry geometry = Geometry::UnitCircle;
    std::vector<double> coordinates;

    static FiniteSpace make(Geometry geometry, int n);
};

// Normalized probability assignment: nonnegative weights summing to 1
// within 1e-12. Construct via normalize() for raw weights.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> weights);
    static ProbVector uniform(int n);

    int size() const { return static_cast<int>(weights_.size()); }
    double operator[](int i) const { return weights_[static_cast<size_t>(i)]; }
    std::span<const double> values() const { return weights_; }
    bool is_uniform(double tol = 1e-14) const;

private:
    std::vector<double> weights_;
};

// Joint probability measure over X x U (square, nonnegative entries).
class JointMeasure {
public:
    explicit JointMeasure(Matrix entries);

    int n() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }
    double operator()(int x, int u) const { return entries_(x, u); }
    double mass() const;

private:
    Matrix entries_;
};

// Cost matrix c(x, u) with a translation-invariance tag used to enable
// closed-form evaluation paths.
struct CostMatrix {
    Matrix entries;
    bool translation_invariant = false;

    int n() const { return entries.rows(); }
    double operator()(int x, int u) const { return entries(x, u); }
};

// --------------------------------------------------------------- operations

// weights / sum(weights). Rejects negative entries; an all-zero input is the
// "degenerate measure" error case. Idempotent and scale invariant.
ProbVector normalize(std::span<const double> weights);

// Divide each row by its sum. Invariant to row-wise rescaling; a zero row is
// an error naming the row index.
Matrix partial_normalize_rows(const Matrix& m);

// (X marginal, U marginal) = (row sums, column sums). Requires unit mass.
std::pair<ProbVector, ProbVector> marginals(const JointMeasure& j);

// KL divergence of j from the product of its own marginals; zero-probability
// cells contribute 0. Requires unit mass.
double mutual_information(const JointMeasure& j, LogBase base);

// sum_{x,u} c(x,u) j(x,u). Dimensions must agree.
double expected_cost(const JointMeasure& j, const CostMatrix& c);

// Shannon entropy with 0 ln 0 = 0.
double entropy(const ProbVector& p, LogBase base);

}  // namespace voi
