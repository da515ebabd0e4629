#include "infogeo/beta.hpp"

#include <cmath>
#include <stdexcept>

#include "infogeo/specfun.hpp"

namespace infogeo {

BetaPoint::BetaPoint(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("Beta parameters must be positive and finite");
}

SymMatrix2 beta_metric(const BetaPoint& p) {
    return {polygamma_difference(1, p.alpha, p.beta), -trigamma(p.alpha + p.beta),
            polygamma_difference(1, p.beta, p.alpha)};
}

MetricJet beta_jet(const BetaPoint& p) {
    const double qs = tetragamma(p.alpha + p.beta);
    MetricJet jet;
    jet.g = beta_metric(p);
    jet.d[0] = {polygamma_difference(2, p.alpha, p.beta), -qs, -qs};
    jet.d[1] = {-qs, -qs, polygamma_difference(2, p.beta, p.alpha)};
    return jet;
}

MetricHessian beta_hessian(const BetaPoint& p) {
    const double rs = -pentagamma(p.alpha + p.beta);
    return {SymMatrix2{polygamma_difference(3, p.alpha, p.beta), rs, rs}, SymMatrix2{rs, rs, rs},
            SymMatrix2{rs, rs, polygamma_difference(3, p.beta, p.alpha)}};
}

MetricField beta_metric_field() {
    return MetricField::from_hessian([](const Point2& t) { return beta_jet(BetaPoint(t[0], t[1])); },
                                     [](const Point2& t) { return beta_hessian(BetaPoint(t[0], t[1])); });
}

MetricField beta_metric_field_fd() {
    return MetricField::from_gradient([](const Point2& t) { return beta_jet(BetaPoint(t[0], t[1])); },
                                      kBetaChristoffelStep);
}

double beta_printed_curvature(const BetaPoint& p) {
    const double t_a = trigamma(p.alpha);
    const double t_b = trigamma(p.beta);
    const double t_s = trigamma(p.alpha + p.beta);
    const double q_a = tetragamma(p.alpha);
    const double q_b = tetragamma(p.beta);
    const double q_s = tetragamma(p.alpha + p.beta);
    const double num = q_a * q_b * t_s - t_a * q_b * q_s - q_a * t_b * q_s;
    const double den = 4.0 * (t_a * t_s + t_b * t_s - t_a * t_b);
    return num / den;
}

CurvatureReport beta_curvature(const BetaPoint& p) {
    static const MetricField field = beta_metric_field();
    CurvatureReport report = ricci_report(field, {p.alpha, p.beta});
    report.pipeline = "beta-ricci";
    report.payload["printed_closed_form"] = beta_printed_curvature(p);
    return report;
}

std::string_view to_string(BetaDirection d) {
    switch (d) {
        case BetaDirection::both_large: return "both-large";
        case BetaDirection::both_small: return "both-small";
        case BetaDirection::mixed: return "mixed";
        case BetaDirection::mixed_swapped: return "mixed-swapped";
    }
    return "?";
}

BetaDirection parse_beta_direction(std::string_view text) {
    for (auto d : {BetaDirection::both_large, BetaDirection::both_small, BetaDirection::mixed,
                   BetaDirection::mixed_swapped})
        if (text == to_string(d)) return d;
    throw std::invalid_argument("unknown asymptote direction '" + std::string(text) +
                                "' (expected both-large, both-small, mixed or mixed-swapped)");
}

double aitken(double s0, double s1, double s2) {
    const double d1 = s1 - s0;
    const double d2 = s2 - s1;
    const double denom = d2 - d1;
    if (denom == 0.0 || !std::isfinite(denom)) return s2;
    return s2 - d2 * d2 / denom;
}

BetaAsymptote beta_asymptote(BetaDirection direction) {
    BetaAsymptote out{direction, {}, {}, {}, 0.0, true, {}};
    for (int k = 1; k <= 4; ++k) {
        const double t = std::pow(10.0, k);
        out.t.push_back(t);
        switch (direction) {
            case BetaDirection::both_large: out.points.emplace_back(t, t); break;
            case BetaDirection::both_small: out.points.emplace_back(1.0 / t, 1.0 / t); break;
            case BetaDirection::mixed: out.points.emplace_back(t, 1.0 / t); break;
            case BetaDirection::mixed_swapped: out.points.emplace_back(1.0 / t, t); break;
        }
        out.values.push_back(beta_curvature(out.points.back()).curvature);
    }
    const std::size_t n = out.values.size();
    const double s0 = out.values[n - 3], s1 = out.values[n - 2], s2 = out.values[n - 1];
    const double d1 = s1 - s0, d2 = s2 - s1;
    out.monotone_tail = (d1 == 0.0 && d2 == 0.0) || (d1 * d2 > 0.0 && std::fabs(d2) < std::fabs(d1));
    if (out.monotone_tail) {
        out.limit = aitken(s0, s1, s2);
    } else {
        out.limit = s2;
        out.note = "non-monotone tail; limit is the last sampled value";
    }
    return out;
}

}  // namespace infogeo
