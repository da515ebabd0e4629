#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infogeo/beta.hpp"
#include "infogeo/specfun.hpp"

using namespace infogeo;

namespace {

// Reference curvatures from a 50-digit evaluation of the determinant formula.
struct Reference {
    double alpha, beta, curvature;
};
constexpr Reference kReference[] = {
    {1000.0, 1000.0, -0.49999987491675707},
    {0.001, 0.001, -4.9096721268136095e-06},
    {1000.0, 0.001, -0.25049943287260157},
};

std::vector<double> log_axis() {
    std::vector<double> out;
    for (int i = 0; i < 10; ++i) out.push_back(0.1 * std::pow(1000.0, i / 9.0));
    return out;
}

}  // namespace

TEST(BetaPoint, RejectsNonPositive) {
    EXPECT_THROW(BetaPoint(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(BetaPoint(1.0, -2.0), std::invalid_argument);
    EXPECT_THROW(BetaPoint(std::nan(""), 1.0), std::invalid_argument);
    EXPECT_NO_THROW(BetaPoint(1e-8, 1e8));
}

TEST(BetaMetric, AtUnitParameters) {
    const auto g = beta_metric({1.0, 1.0});
    EXPECT_NEAR(g.g11, 1.0, 1e-14);
    EXPECT_NEAR(g.g12, -0.6449340668482264, 1e-14);
    EXPECT_NEAR(g.g22, 1.0, 1e-14);
}

TEST(BetaMetric, AtTwoTwo) {
    // psi'(2) = pi^2/6 - 1, psi'(4) = pi^2/6 - 1 - 1/4 - 1/9
    const auto g = beta_metric({2.0, 2.0});
    const double t4 = std::numbers::pi * std::numbers::pi / 6.0 - 1.0 - 0.25 - 1.0 / 9.0;
    EXPECT_NEAR(t4, 0.2838229557371153, 1e-15);
    EXPECT_NEAR(g.g11, 0.25 + 1.0 / 9.0, 1e-14);
    EXPECT_NEAR(g.g12, -t4, 1e-14);
    EXPECT_NEAR(g.g22, 0.25 + 1.0 / 9.0, 1e-14);
}

TEST(BetaMetric, NegativeOffDiagonalAndPositiveDefinite) {
    for (double a : log_axis())
        for (double b : log_axis()) {
            const auto g = beta_metric({a, b});
            EXPECT_LT(g.g12, 0.0);
            EXPECT_GT(g.g11, 0.0);
            EXPECT_GT(g.det(), 0.0);
        }
}

TEST(BetaMetric, SwapExchangesEntries) {
    const auto g = beta_metric({0.3, 17.0});
    const auto h = beta_metric({17.0, 0.3});
    EXPECT_EQ(g.g11, h.g22);
    EXPECT_EQ(g.g12, h.g12);
}

TEST(BetaMetric, DerivativesMatchFiniteDifferences) {
    for (BetaPoint p : {BetaPoint(0.7, 2.0), BetaPoint(5.0, 0.2), BetaPoint(30.0, 12.0)}) {
        const auto jet = beta_jet(p);
        const auto hess = beta_hessian(p);
        for (int l = 0; l < 2; ++l) {
            const double h = 1e-4 * (l == 0 ? p.alpha : p.beta);
            const BetaPoint up(p.alpha + (l == 0 ? h : 0.0), p.beta + (l == 1 ? h : 0.0));
            const BetaPoint dn(p.alpha - (l == 0 ? h : 0.0), p.beta - (l == 1 ? h : 0.0));
            const auto gu = beta_metric(up), gd = beta_metric(dn);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const double fd = (gu(i, j) - gd(i, j)) / (2 * h);
                    EXPECT_NEAR(jet.d[l](i, j), fd, 1e-6 * (1.0 + std::fabs(fd)));
                }
            const auto ju = beta_jet(up), jd = beta_jet(dn);
            for (int m = 0; m < 2; ++m)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const double fd = (ju.d[m](i, j) - jd.d[m](i, j)) / (2 * h);
                        EXPECT_NEAR(hess[l + m](i, j), fd, 1e-6 * (1.0 + std::fabs(fd)));
                    }
        }
    }
}

TEST(BetaCurvature, MatchesHighPrecisionReference) {
    for (const auto& r : kReference) {
        const auto report = beta_curvature({r.alpha, r.beta});
        EXPECT_NEAR(report.curvature / r.curvature, 1.0, 1e-9) << r.alpha << ", " << r.beta;
        EXPECT_EQ(report.classification, Classification::hyperbolic);
        EXPECT_EQ(report.pipeline, "beta-ricci");
    }
}

TEST(BetaCurvature, PointLimits) {
    EXPECT_NEAR(beta_curvature({1000.0, 1000.0}).curvature, -0.5, 0.01);
    EXPECT_NEAR(beta_curvature({0.001, 0.001}).curvature, 0.0, 0.01);
    EXPECT_NEAR(beta_curvature({1000.0, 0.001}).curvature, -0.25, 0.01);
}

TEST(BetaCurvature, FiniteDifferenceFieldAgrees) {
    const auto fd = beta_metric_field_fd();
    for (BetaPoint p : {BetaPoint(1.0, 1.0), BetaPoint(0.5, 3.0), BetaPoint(20.0, 0.4)})
        EXPECT_NEAR(scalar_curvature(fd, {p.alpha, p.beta}), beta_curvature(p).curvature, 1e-6);
}

TEST(BetaCurvature, PrintedClosedFormIsReported) {
    const auto r = beta_curvature({1.0, 1.0});
    ASSERT_TRUE(r.payload.count("printed_closed_form"));
    EXPECT_NEAR(r.payload.at("printed_closed_form"), -0.2274347618, 1e-9);
    EXPECT_EQ(r.payload.at("printed_closed_form"), beta_printed_curvature({1.0, 1.0}));
    EXPECT_NEAR(r.curvature, -0.3894030452, 1e-9);
}

TEST(BetaCurvature, NegativeOnLogGrid) {
    for (double a : log_axis())
        for (double b : log_axis()) EXPECT_LT(beta_curvature({a, b}).curvature, 0.0) << a << ", " << b;
}

TEST(BetaCurvature, SymmetricUnderSwap) {
    for (double a : log_axis())
        for (double b : log_axis())
            EXPECT_NEAR(beta_curvature({a, b}).curvature, beta_curvature({b, a}).curvature, 1e-9) << a << ", " << b;
}

TEST(BetaAsymptote, Limits) {
    const auto large = beta_asymptote(BetaDirection::both_large);
    const auto small = beta_asymptote(BetaDirection::both_small);
    const auto mixed = beta_asymptote(BetaDirection::mixed);
    EXPECT_NEAR(large.limit, -0.5, 0.005);
    EXPECT_NEAR(small.limit, 0.0, 0.005);
    EXPECT_NEAR(mixed.limit, -0.25, 0.005);
    for (const auto* a : {&large, &small, &mixed}) {
        EXPECT_TRUE(a->monotone_tail);
        ASSERT_EQ(a->values.size(), 4u);
        EXPECT_EQ(a->t.front(), 10.0);
        EXPECT_EQ(a->t.back(), 10000.0);
    }
    EXPECT_EQ(small.points.back().alpha, 1e-4);
    EXPECT_EQ(mixed.points.back().beta, 1e-4);
}

TEST(BetaAsymptote, MixedDirectionsAgree) {
    const auto a = beta_asymptote(BetaDirection::mixed);
    const auto b = beta_asymptote(BetaDirection::mixed_swapped);
    EXPECT_NEAR(a.limit, b.limit, 1e-3);
}

TEST(BetaAsymptote, DirectionNames) {
    EXPECT_EQ(parse_beta_direction("both-large"), BetaDirection::both_large);
    EXPECT_EQ(to_string(BetaDirection::mixed_swapped), "mixed-swapped");
    EXPECT_THROW(parse_beta_direction("sideways"), std::invalid_argument);
}

TEST(BetaAsymptote, AitkenIsExactOnGeometricSequences) {
    EXPECT_NEAR(aitken(1.5, 1.25, 1.125), 1.0, 1e-15);
    EXPECT_EQ(aitken(2.0, 2.0, 2.0), 2.0);
}
