#include "voi/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace voi {

namespace {
constexpr double kMassTol = 1e-9;

void require_unit_mass(const JointMeasure& j, const char* op) {
    const double m = j.mass();
    if (std::abs(m - 1.0) > kMassTol)
        throw std::invalid_argument(std::string(op) + ": joint measure mass " +
                                    std::to_string(m) + " is not 1");
}
}  // namespace

double to_base(double nats, LogBase base) {
    return base == LogBase::Bits ? nats / std::numbers::ln2 : nats;
}

FiniteSpace FiniteSpace::make(Geometry geometry, int n) {
    if (n < 2) throw std::invalid_argument("FiniteSpace: n must be at least 2");
    if (geometry != Geometry::OneWayLine && n % 2 != 0)
        throw std::invalid_argument("FiniteSpace: circle geometries require even n");
    FiniteSpace s;
    s.n = n;
    s.geometry = geometry;
    s.coordinates.resize(static_cast<size_t>(n));
    const double step =
        geometry == Geometry::CircleCircumferenceN ? 1.0 : 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) s.coordinates[static_cast<size_t>(i)] = i * step;
    return s;
}

ProbVector::ProbVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("ProbVector: empty");
    double sum = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw std::invalid_argument("ProbVector: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("ProbVector: weights sum to " + std::to_string(sum) +
                                    ", expected 1 within 1e-12");
}

ProbVector ProbVector::uniform(int n) {
    if (n <= 0) throw std::invalid_argument("ProbVector::uniform: n must be positive");
    return ProbVector(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

bool ProbVector::is_uniform(double tol) const {
    const double u = 1.0 / size();
    for (double w : weights_)
        if (std::abs(w - u) > tol) return false;
    return true;
}

JointMeasure::JointMeasure(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("JointMeasure: matrix must be square");
    if (entries_.rows() == 0) throw std::invalid_argument("JointMeasure: empty");
    for (double e : entries_.data())
        if (e < 0.0) throw std::invalid_argument("JointMeasure: negative entry");
}

double JointMeasure::mass() const {
    double m = 0.0;
    for (double e : entries_.data()) m += e;
    return m;
}

ProbVector normalize(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("normalize: empty input");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("normalize: negative weight");
        sum += w;
    }
    if (sum <= 0.0) throw std::invalid_argument("degenerate measure");
    std::vector<double> out(weights.begin(), weights.end());
    for (double& w : out) w /= sum;
    return ProbVector(std::move(out));
}

Matrix partial_normalize_rows(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) < 0.0) throw std::invalid_argument("partial_normalize_rows: negative entry");
            sum += m(i, j);
        }
        if (sum <= 0.0)
            throw std::invalid_argument("partial_normalize_rows: row " + std::to_string(i) +
                                        " has zero sum");
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) / sum;
    }
    return out;
}

std::pair<ProbVector, ProbVector> marginals(const JointMeasure& j) {
    require_unit_mass(j, "marginals");
    const int n = j.n();
    std::vector<double> px(static_cast<size_t>(n), 0.0), pu(static_cast<size_t>(n), 0.0);
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u) {
            px[static_cast<size_t>(x)] += j(x, u);
            pu[static_cast<size_t>(u)] += j(x, u);
        }
    return {normalize(px), normalize(pu)};
}

double mutual_information(const JointMeasure& j, LogBase base) {
    require_unit_mass(j, "mutual_information");
    const int n = j.n();
    std::vector<double> px(static_cast<size_t>(n), 0.0), pu(static_cast<size_t>(n), 0.0);
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u) {
            px[static_cast<size_t>(x)] += j(x, u);
            pu[static_cast<size_t>(u)] += j(x, u);
        }
    double info = 0.0;
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u) {
            const double p = j(x, u);
            if (p > 0.0)
                info += p * std::log(p / (px[static_cast<size_t>(x)] * pu[static_cast<size_t>(u)]));
        }
    return to_base(info, base);
}

double expected_cost(const JointMeasure& j, const CostMatrix& c) {
    if (j.n() != c.n()) throw std::invalid_argument("expected_cost: dimension mismatch");
    double e = 0.0;
    for (int x = 0; x < j.n(); ++x)
        for (int u = 0; u < j.n(); ++u) e += j(x, u) * c(x, u);
    return e;
}

double entropy(const ProbVector& p, LogBase base) {
    double h = 0.0;
    for (int i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    return to_base(h, base);
}

}  // namespace voi
