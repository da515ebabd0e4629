#include "infogeo/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infogeo {

namespace {

MetricField hessian_field(const Expr& psi) {
    const Expr d1 = differentiate(psi, "t1");
    const Expr d2 = differentiate(psi, "t2");
    return MetricField::symbolic(differentiate(d1, "t1"), differentiate(d1, "t2"), differentiate(d2, "t2"));
}

double det3(const std::array<double, 9>& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

ExpFamilySpec::ExpFamilySpec(Expr psi, std::string statistic, std::string carrier)
    : psi_(std::move(psi)),
      statistic_(std::move(statistic)),
      carrier_(std::move(carrier)),
      field_(hessian_field(psi_)) {
    for (const auto& v : psi_.variables())
        if (v != "t1" && v != "t2") throw std::invalid_argument("psi may only depend on t1, t2; found '" + v + "'");
}

SymMatrix2 ef_metric(const ExpFamilySpec& spec, const Point2& theta) { return spec.field().at(theta); }

CurvatureReport ef_curvature(const ExpFamilySpec& spec, const Point2& theta) {
    const MetricJet jet = spec.field().jet(theta);
    const SymMatrix2& g = jet.g;
    CurvatureReport report;
    report.pipeline = "expfam-determinant";
    report.payload = {{"det_g", g.det()}, {"g11", g.g11}, {"g12", g.g12}, {"g22", g.g22}};
    if (is_degenerate(g)) {
        report.curvature = std::numeric_limits<double>::quiet_NaN();
        report.classification = Classification::degenerate;
        report.note = "Hessian of psi is singular";
        return report;
    }
    const std::array<double, 9> rows = {g.g11, jet.d[1].g11, jet.d[0].g11,  //
                                        g.g12, jet.d[1].g12, jet.d[0].g12,  //
                                        g.g22, jet.d[1].g22, jet.d[0].g22};
    const double d3 = det3(rows);
    const double d2 = g.det();
    report.payload["det3"] = d3;
    report.curvature = d3 / (4.0 * d2 * d2);
    report.classification = classify(report.curvature);
    if (g.g11 <= 0.0 || d2 <= 0.0) report.note = "Hessian of psi is not positive definite";
    return report;
}

FlatnessReport ef_flatness_criteria(const ExpFamilySpec& spec, const std::vector<Point2>& grid) {
    if (grid.empty()) throw std::invalid_argument("flatness grid is empty");
    static const char* const kNames[3] = {"g11", "g12", "g22"};

    std::vector<std::array<double, 3>> entries;
    std::vector<std::array<double, 3>> partial[2];
    FlatnessReport report;
    report.points = grid.size();
    double scale = 0.0;
    double dscale[2] = {0.0, 0.0};
    for (const auto& p : grid) {
        const MetricJet jet = spec.field().jet(p);
        entries.push_back({jet.g.g11, jet.g.g12, jet.g.g22});
        for (int l = 0; l < 2; ++l) {
            partial[l].push_back({jet.d[l].g11, jet.d[l].g12, jet.d[l].g22});
            for (double v : partial[l].back()) dscale[l] = std::max(dscale[l], std::fabs(v));
        }
        for (double v : entries.back()) scale = std::max(scale, std::fabs(v));

        const auto r = ef_curvature(spec, p);
        if (r.classification != Classification::degenerate)
            report.max_abs_curvature = std::max(report.max_abs_curvature, std::fabs(r.curvature));
    }
    const double tol = kFlatnessTol * (1.0 + scale);

    auto max_abs = [&](int e) {
        double m = 0.0;
        for (const auto& row : entries) m = std::max(m, std::fabs(row[e]));
        return m;
    };

    for (int e = 0; e < 3 && !report.vanishing_entry; ++e)
        if (max_abs(e) <= tol) {
            report.vanishing_entry = true;
            report.vanishing_which = kNames[e];
        }

    for (int a = 0; a < 3 && !report.proportional; ++a)
        for (int b = 0; b < 3 && !report.proportional; ++b) {
            if (a == b || max_abs(b) <= tol) continue;
            double num = 0.0;
            double den = 0.0;
            for (const auto& row : entries) {
                num += row[a] * row[b];
                den += row[b] * row[b];
            }
            const double lambda = num / den;
            double residual = 0.0;
            for (const auto& row : entries) residual = std::max(residual, std::fabs(row[a] - lambda * row[b]));
            if (residual <= tol) {
                report.proportional = true;
                report.proportional_pair = std::string(kNames[a]) + "/" + kNames[b];
                report.lambda = lambda;
            }
        }

    // Entries independent of t_{l+1}: their partials in that direction vanish.
    for (int l = 0; l < 2 && !report.single_parameter; ++l)
        if (dscale[l] <= tol) {
            report.single_parameter = true;
            report.constant_in = l == 0 ? "t1" : "t2";
        }
    return report;
}

std::vector<Point2> linear_grid(double lo1, double hi1, int n1, double lo2, double hi2, int n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("grid needs at least one point per axis");
    auto at = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
    std::vector<Point2> out;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) out.push_back({at(lo1, hi1, n1, i), at(lo2, hi2, n2, j)});
    return out;
}

}  // namespace infogeo
