#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "infogeo/error.hpp"
#include "infogeo/locscale.hpp"

using namespace infogeo;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Weighted sum of normal densities as expression text.
std::string mixture_text(const std::vector<double>& w, const std::vector<double>& m, const std::vector<double>& s) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " + ";
        const double k = w[i] / (s[i] * std::sqrt(2.0 * std::numbers::pi));
        out += num(k) + "*exp(-(x - " + num(m[i]) + ")^2/" + num(2.0 * s[i] * s[i]) + ")";
    }
    return out;
}

Generatrix truncated_reciprocal() {
    return Generatrix(parse("1/(3 - x)"), SupportSpec::parse("[1,2]"), true);
}

}  // namespace

TEST(Generatrix, CatalogIntegratesToOne) {
    for (const auto& name : builtin_generatrix_names()) {
        const auto g = builtin_generatrix(name);
        EXPECT_NEAR(g.normalization(), 1.0, 1e-8) << name;
        EXPECT_EQ(g.name(), name);
    }
    EXPECT_THROW(builtin_generatrix("student"), std::invalid_argument);
}

TEST(Generatrix, DerivativeIsAutoDerived) {
    const auto g = builtin_generatrix("gaussian");
    const double x = 0.7;
    const double expected = -2.0 * x * std::exp(-x * x) / std::sqrt(std::numbers::pi);
    EXPECT_NEAR(evaluate(g.derivative(), {{"x", x}}), expected, 1e-15);
}

TEST(Generatrix, RejectsUnnormalizedUnlessAsked) {
    EXPECT_THROW(Generatrix(parse("exp(-x^2)"), SupportSpec::real_line()), std::invalid_argument);
    const Generatrix g(parse("exp(-x^2)"), SupportSpec::real_line(), true);
    EXPECT_NEAR(g.normalization(), std::sqrt(std::numbers::pi), 1e-9);
    EXPECT_NEAR(evaluate(g.density(), {{"x", 0.0}}), 1.0 / std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Generatrix, RejectsNegativeDensity) {
    EXPECT_THROW(Generatrix(parse("x"), SupportSpec::parse("[-1,1]"), true), std::invalid_argument);
}

TEST(Generatrix, RejectsForeignVariables) {
    EXPECT_THROW(Generatrix(parse("t1*exp(-x)"), SupportSpec::parse("(0,inf)")), std::invalid_argument);
}

TEST(LSCoefficients, Gaussian) {
    const auto k = ls_coefficients(builtin_generatrix("gaussian"));
    EXPECT_NEAR(k.a2, 2.0, 1e-7);
    EXPECT_NEAR(k.b2, 2.0, 1e-7);
    EXPECT_NEAR(k.c, 0.0, 1e-7);
    EXPECT_NEAR(ls_curvature(k).curvature, -0.5, 1e-8);
    EXPECT_EQ(ls_curvature(k).classification, Classification::hyperbolic);
}

TEST(LSCoefficients, Cauchy) {
    const auto k = ls_coefficients(builtin_generatrix("cauchy"));
    EXPECT_NEAR(k.a2, 0.5, 1e-7);
    EXPECT_NEAR(k.b2, 0.5, 1e-7);
    EXPECT_NEAR(k.c, 0.0, 1e-7);
    EXPECT_NEAR(ls_curvature(k).curvature, -2.0, 1e-6);
}

TEST(LSCoefficients, Exponential) {
    const auto k = ls_coefficients(builtin_generatrix("exponential"));
    EXPECT_NEAR(k.a2, 1.0, 1e-7);
    EXPECT_NEAR(k.b2, 1.0, 1e-7);
    EXPECT_NEAR(k.c, 0.0, 1e-7);
    EXPECT_NEAR(ls_curvature(k).curvature, -1.0, 1e-7);
}

TEST(LSCoefficients, LaplaceWithKink) {
    const auto k = ls_coefficients(builtin_generatrix("laplace"));
    EXPECT_NEAR(k.a2, 1.0, 1e-7);
    EXPECT_NEAR(k.b2, 1.0, 1e-7);
    EXPECT_NEAR(k.c, 0.0, 1e-7);
    EXPECT_NEAR(ls_curvature(k).curvature, -1.0, 1e-7);
}

TEST(LSCoefficients, ErrorEstimatesReported) {
    const auto k = ls_coefficients(builtin_generatrix("gaussian"));
    EXPECT_GE(k.a2_error, 0.0);
    EXPECT_LE(k.a2_error, 1e-8);
    EXPECT_LE(k.b2_error, 1e-8);
    EXPECT_LE(k.c_error, 1e-8);
}

TEST(LSMetric, ScalesWithInverseSquareScale) {
    const LSCoefficients k{2.0, 2.0, 0.0};
    const auto m1 = ls_metric_at(k, 0.0, 1.0);
    EXPECT_EQ(m1.g11, 2.0);
    EXPECT_EQ(m1.g12, 0.0);
    EXPECT_EQ(m1.g22, 2.0);
    const auto m2 = ls_metric_at(k, 5.0, 2.0);
    EXPECT_EQ(m2.g11, 0.5);
    EXPECT_EQ(m2.g22, 0.5);
    EXPECT_THROW(ls_metric_at({1.0, 1.0, 0.0}, -1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(ls_metric_at({1.0, 1.0, 0.0}, -1.0, -2.0), std::invalid_argument);
}

TEST(LSCurvature, ClosedFormCases) {
    EXPECT_DOUBLE_EQ(ls_curvature({2.0, 2.0, 0.0}).curvature, -0.5);
    EXPECT_DOUBLE_EQ(ls_curvature({0.5, 0.5, 0.0}).curvature, -2.0);
    EXPECT_DOUBLE_EQ(ls_curvature({1.0, 3.0, 1.0}).curvature, -0.5);
}

TEST(LSCurvature, VanishingLocationInformationIsFlatSingular) {
    const auto r = ls_curvature({1e-12, 1.0, 0.0});
    EXPECT_EQ(r.classification, Classification::flat);
    EXPECT_TRUE(r.singular);
}

TEST(LSCurvature, TruncatedReciprocalIsDegenerate) {
    const auto g = truncated_reciprocal();
    EXPECT_NEAR(g.normalization(), std::log(2.0), 1e-12);
    const auto k = ls_coefficients(g);
    // b2 = alpha^2 a2 and c = alpha a2 with alpha = 3
    EXPECT_NEAR(k.b2, 9.0 * k.a2, 1e-8 * k.b2);
    EXPECT_NEAR(k.c, 3.0 * k.a2, 1e-8 * k.c);
    EXPECT_LE(std::fabs(k.gram()), 1e-6 * k.a2 * k.b2);
    const auto r = ls_curvature(k);
    EXPECT_EQ(r.classification, Classification::degenerate);
    EXPECT_TRUE(std::isinf(r.curvature) && r.curvature < 0);
}

TEST(LSProperties, GaussianMixturesAreHyperbolic) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> ncomp(1, 3);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::uniform_real_distribution<double> mean(-3.0, 3.0);
    std::uniform_real_distribution<double> scale(0.3, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = ncomp(rng);
        std::vector<double> w(n), m(n), s(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] = weight(rng);
            m[i] = mean(rng);
            s[i] = scale(rng);
            total += w[i];
        }
        for (auto& wi : w) wi /= total;
        const Generatrix g(parse(mixture_text(w, m, s)), SupportSpec::real_line(), true);
        const auto k = ls_coefficients(g);
        const auto r = ls_curvature(k);
        EXPECT_GT(k.gram(), 0.0) << trial;
        EXPECT_LT(r.curvature, 0.0) << trial;
        EXPECT_EQ(r.classification, Classification::hyperbolic) << trial;
    }
}

TEST(LSProperties, EvenDensitiesHaveNoCrossTerm) {
    for (const char* name : {"gaussian", "cauchy", "laplace"})
        EXPECT_LE(std::fabs(ls_coefficients(builtin_generatrix(name)).c), 1e-7) << name;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mean(0.2, 2.5);
    std::uniform_real_distribution<double> scale(0.3, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        const double mu = mean(rng);
        const double sd = scale(rng);
        const Generatrix g(parse(mixture_text({0.5, 0.5}, {-mu, mu}, {sd, sd})), SupportSpec::real_line(), true);
        EXPECT_LE(std::fabs(ls_coefficients(g).c), 1e-7) << trial;
    }
}

TEST(LSProperties, ClosedFormMatchesRicciPipeline) {
    const Point2 points[] = {{0.0, 1.0}, {-1.5, 0.5}, {2.0, 2.5}, {0.3, 4.0}, {-3.0, 0.8}};
    for (const auto& name : builtin_generatrix_names()) {
        const auto k = ls_coefficients(builtin_generatrix(name));
        const double closed = ls_curvature(k).curvature;
        const auto symbolic = ls_metric_field(k);
        const auto values = MetricField::from_values([&](const Point2& t) { return ls_metric_at(k, t[0], t[1]); });
        for (const auto& p : points) {
            EXPECT_NEAR(scalar_curvature(symbolic, p), closed, 1e-6) << name;
            EXPECT_NEAR(scalar_curvature(values, p), closed, 1e-6) << name;
        }
    }
}

TEST(LSProperties, CauchySchwarz) {
    for (const auto& name : builtin_generatrix_names())
        EXPECT_GE(ls_coefficients(builtin_generatrix(name)).gram(), -1e-9) << name;
    EXPECT_GE(ls_coefficients(truncated_reciprocal()).gram(), -1e-9);
}
