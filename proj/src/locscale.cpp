#include "infogeo/locscale.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "infogeo/error.hpp"

namespace infogeo {

namespace {

struct CatalogEntry {
    std::string_view name;
    std::string_view density;
    std::string_view support;
    double breakpoint;  // NaN when absent
};

constexpr double kNoBreak = std::numeric_limits<double>::quiet_NaN();

const CatalogEntry kCatalog[] = {
    {"gaussian", "exp(-x^2)/sqrt(pi)", "(-inf,inf)", kNoBreak},
    {"cauchy", "1/(pi*(1+x^2))", "(-inf,inf)", kNoBreak},
    {"exponential", "exp(-x)", "(0,inf)", kNoBreak},
    {"laplace", "(1/2)*exp(-abs(x))", "(-inf,inf)", 0.0},
};

const CatalogEntry& lookup(std::string_view name) {
    for (const auto& e : kCatalog)
        if (e.name == name) return e;
    throw std::invalid_argument("unknown generatrix '" + std::string(name) + "'");
}

double density_at(const Expr& density, double x) {
    return evaluate(density, Bindings{{"x", x}});
}

// A few interior abscissae per support piece for the sign check.
std::vector<double> probe_points(const SupportSpec& support) {
    std::vector<double> out;
    for (const auto& iv : support.pieces()) {
        for (int k = 1; k < 32; ++k) {
            const double t = k / 32.0;
            double x;
            if (std::isinf(iv.lo) && std::isinf(iv.hi))
                x = (2.0 * t - 1.0) / (1.0 - (2.0 * t - 1.0) * (2.0 * t - 1.0));
            else if (std::isinf(iv.hi))
                x = iv.lo + t / (1.0 - t);
            else if (std::isinf(iv.lo))
                x = iv.hi - t / (1.0 - t);
            else
                x = iv.lo + t * (iv.hi - iv.lo);
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace

Generatrix::Generatrix(Expr density, SupportSpec support, bool normalize, std::optional<Expr> derivative,
                       std::string name)
    : density_(std::move(density)), support_(std::move(support)), name_(std::move(name)) {
    for (const auto& v : density_.variables())
        if (v != "x") throw std::invalid_argument("density may only depend on x, found '" + v + "'");
    derivative_ = derivative ? *derivative : differentiate(density_, "x");

    for (double x : probe_points(support_)) {
        const double p = density_at(density_, x);
        if (p < 0.0) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "density is negative at x = " << x;
            throw std::invalid_argument(msg.str());
        }
    }

    const auto mass = integrate([this](double x) { return density_at(density_, x); }, support_);
    normalization_ = mass.value;
    if (!(normalization_ > 0.0)) throw std::invalid_argument("density has no mass on the support");
    if (normalize) {
        const Expr k = Expr::constant(normalization_);
        density_ = density_ / k;
        derivative_ = derivative_ / k;
    } else if (std::fabs(normalization_ - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "density integrates to " << normalization_ << ", not 1 (request normalization)";
        throw std::invalid_argument(msg.str());
    }
}

Generatrix builtin_generatrix(std::string_view name) {
    const auto& e = lookup(name);
    std::vector<double> breaks;
    if (!std::isnan(e.breakpoint)) breaks.push_back(e.breakpoint);
    return Generatrix(parse(e.density), SupportSpec::parse(e.support, breaks), false, std::nullopt,
                      std::string(e.name));
}

std::vector<std::string> builtin_generatrix_names() {
    std::vector<std::string> out;
    for (const auto& e : kCatalog) out.emplace_back(e.name);
    return out;
}

std::string builtin_density_text(std::string_view name) { return std::string(lookup(name).density); }
std::string builtin_support_text(std::string_view name) { return std::string(lookup(name).support); }

LSCoefficients ls_coefficients(const Generatrix& g, const QuadOptions& options) {
    // score r = p'/p is only formed where p > 0
    enum class Which { a2, b2, c };
    auto integrand = [&g](Which which) {
        return [&g, which](double x) {
            const Bindings b{{"x", x}};
            const double p = evaluate(g.density(), b);
            if (p <= 0.0) {
                if (p < 0.0) throw EvalError("density is negative inside the support");
                return 0.0;
            }
            const double dp = evaluate(g.derivative(), b);
            const double r = dp / p;
            const double scale_score = 1.0 + x * r;
            switch (which) {
                case Which::a2: return dp * r;
                case Which::b2: return p * scale_score * scale_score;
                case Which::c: return dp * scale_score;
            }
            return 0.0;
        };
    };
    const auto a2 = integrate(integrand(Which::a2), g.support(), options);
    const auto b2 = integrate(integrand(Which::b2), g.support(), options);
    const auto c = integrate(integrand(Which::c), g.support(), options);
    return {a2.value, b2.value, c.value, a2.error_estimate, b2.error_estimate, c.error_estimate};
}

SymMatrix2 ls_metric_at(const LSCoefficients& coeffs, double l, double s) {
    (void)l;  // the metric does not depend on location
    if (!(s > 0.0)) throw std::invalid_argument("scale parameter must be positive");
    const double w = 1.0 / (s * s);
    return {w * coeffs.a2, w * coeffs.c, w * coeffs.b2};
}

MetricField ls_metric_field(const LSCoefficients& coeffs) {
    const Expr s2 = pow(Expr::variable("t2"), Expr::constant(2.0));
    return MetricField::symbolic(Expr::constant(coeffs.a2) / s2, Expr::constant(coeffs.c) / s2,
                                 Expr::constant(coeffs.b2) / s2, "t1", "t2");
}

CurvatureReport ls_curvature(const LSCoefficients& coeffs) {
    CurvatureReport report;
    report.pipeline = "locscale-closed-form";
    report.payload = {{"a2", coeffs.a2}, {"b2", coeffs.b2}, {"c", coeffs.c}, {"gram_det", coeffs.gram()}};
    if (coeffs.a2 <= kLocationTol) {
        report.curvature = 0.0;
        report.classification = Classification::flat;
        report.singular = true;
        report.note = "a2 vanishes: rank-1 metric, singular point of the manifold";
        return report;
    }
    if (coeffs.gram() <= kGramTol * coeffs.a2 * coeffs.b2) {
        report.curvature = -std::numeric_limits<double>::infinity();
        report.classification = Classification::degenerate;
        report.note = "a2*b2 - c^2 vanishes: rank-1 metric";
        return report;
    }
    report.curvature = -coeffs.a2 / coeffs.gram();
    report.classification = classify(report.curvature);
    return report;
}

}  // namespace infogeo
