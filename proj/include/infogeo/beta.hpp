#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infogeo/curvature_report.hpp"
#include "infogeo/geometry.hpp"

namespace infogeo {

// Beta(alpha, beta) parameters; both strictly positive.
struct BetaPoint {
    double alpha;
    double beta;

    // Throws std::invalid_argument unless alpha > 0 and beta > 0.
    BetaPoint(double alpha, double beta);
};

// [[T(a) - T(a+b), -T(a+b)], [-T(a+b), T(b) - T(a+b)]] with T the trigamma
// function.
SymMatrix2 beta_metric(const BetaPoint& p);
// Metric with exact first partials (tetragamma).
MetricJet beta_jet(const BetaPoint& p);

// Second partials (pentagamma), indexed as MetricHessian.
MetricHessian beta_hessian(const BetaPoint& p);

// Field over (alpha, beta) with exact first and second partials.
MetricField beta_metric_field();

// Relative step: the metric spans many orders of magnitude across the
// manifold.
inline constexpr StepPolicy kBetaChristoffelStep{1e-5, 0.0};

// Same metric with exact first partials only; Christoffel derivatives by
// central differences.
MetricField beta_metric_field_fd();

// N / (4 D) with T = trigamma, Q = tetragamma, s = alpha + beta:
//   N = Q(a) Q(b) T(s) - T(a) Q(b) Q(s) - Q(a) T(b) Q(s)
//   D = T(a) T(s) + T(b) T(s) - T(a) T(b)
// Kept for comparison only; it does not agree with the Ricci value.
double beta_printed_curvature(const BetaPoint& p);

// Ricci-pipeline curvature on beta_metric_field(); the printed closed form is
// attached to the payload as "printed_closed_form".
CurvatureReport beta_curvature(const BetaPoint& p);

enum class BetaDirection { both_large, both_small, mixed, mixed_swapped };

std::string_view to_string(BetaDirection d);
// "both-large", "both-small", "mixed" (alpha large, beta small) or
// "mixed-swapped"; throws std::invalid_argument otherwise.
BetaDirection parse_beta_direction(std::string_view text);

struct BetaAsymptote {
    BetaDirection direction;
    std::vector<double> t;        // 10^k, k = 1..4
    std::vector<BetaPoint> points;
    std::vector<double> values;   // curvature at each point
    double limit;                 // Aitken extrapolation of the last three values
    bool monotone_tail;
    std::string note;
};

// Samples the curvature along t = 10, 100, 1000, 10000 (parameters t or 1/t
// depending on direction) and extrapolates. A non-monotone tail falls back to
// the last value and is noted.
BetaAsymptote beta_asymptote(BetaDirection direction);

// Aitken delta-squared on three consecutive terms of a sequence.
double aitken(double s0, double s1, double s2);

}  // namespace infogeo
