#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "infogeo/specfun.hpp"

using namespace infogeo;

namespace {

// Direct series sum_{k>=0} 1/(x+k)^p with an Euler-Maclaurin tail after N terms.
double trigamma_series(double x) {
    constexpr int N = 2000;
    double sum = 0.0;
    for (int k = N - 1; k >= 0; --k) sum += 1.0 / ((x + k) * (x + k));
    const double z = x + N;
    return sum + 1.0 / z + 1.0 / (2 * z * z) + 1.0 / (6 * z * z * z) - 1.0 / (30 * std::pow(z, 5));
}

double tetragamma_series(double x) {
    constexpr int N = 2000;
    double sum = 0.0;
    for (int k = N - 1; k >= 0; --k) sum += 1.0 / std::pow(x + k, 3);
    const double z = x + N;
    sum += 1.0 / (2 * z * z) + 1.0 / (2 * z * z * z) + 1.0 / (4 * std::pow(z, 4)) - 1.0 / (12 * std::pow(z, 6));
    return -2.0 * sum;
}

constexpr double kZeta3 = 1.2020569031595942854;

}  // namespace

TEST(Polygamma, TrigammaAtOneIsPiSquaredOverSix) {
    const double oracle = trigamma_series(1.0);
    EXPECT_NEAR(oracle, std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
    EXPECT_NEAR(polygamma(1, 1.0) / oracle, 1.0, 1e-10);
    EXPECT_NEAR(polygamma(1, 1.0), 1.6449340668482264, 1e-13);
}

TEST(Polygamma, TetragammaAtOneIsMinusTwoZeta3) {
    const double oracle = tetragamma_series(1.0);
    EXPECT_NEAR(oracle, -2.0 * kZeta3, 1e-14);
    EXPECT_NEAR(polygamma(2, 1.0) / oracle, 1.0, 1e-10);
}

TEST(Polygamma, AgreesWithSeriesOracleAcrossRange) {
    for (double x : {0.003, 0.1, 0.5, 1.5, 4.2, 7.999, 8.0, 8.5, 13.0, 47.0, 300.0}) {
        EXPECT_NEAR(polygamma(1, x) / trigamma_series(x), 1.0, 1e-12) << x;
        EXPECT_NEAR(polygamma(2, x) / tetragamma_series(x), 1.0, 1e-12) << x;
    }
}

TEST(Polygamma, RecurrenceAtFixedPoints) {
    for (double x : {0.5, 2.0, 7.3}) {
        const double expected = 1.0 / (x * x);
        EXPECT_NEAR((polygamma(1, x) - polygamma(1, x + 1.0)) / expected, 1.0, 1e-12) << x;
    }
}

TEST(Polygamma, RecurrenceAtRandomPoints) {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> dist(0.01, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        const double r1 = (polygamma(1, x) - polygamma(1, x + 1.0)) * x * x;
        const double r2 = (polygamma(2, x) - polygamma(2, x + 1.0)) * x * x * x / -2.0;
        EXPECT_NEAR(r1, 1.0, 1e-12) << x;
        EXPECT_NEAR(r2, 1.0, 1e-12) << x;
    }
}

TEST(Polygamma, CompleteMonotonicitySigns) {
    for (double x = 0.01; x < 200.0; x *= 1.37) {
        EXPECT_GT(polygamma(1, x), 0.0);
        EXPECT_LT(polygamma(2, x), 0.0);
    }
}

TEST(Polygamma, LimitingForms) {
    const double small = 0.01;
    EXPECT_LE(std::fabs(polygamma(1, small) - 1.0 / (small * small)) / polygamma(1, small), 0.02);
    for (double x : {10.0, 25.0, 100.0, 1e4}) {
        EXPECT_LE(std::fabs(polygamma(1, x) - (1.0 / x + 1.0 / (2 * x * x))), 1.0 / (2 * x * x * x)) << x;
    }
}

TEST(Polygamma, RejectsBadArguments) {
    EXPECT_THROW(polygamma(1, 0.0), std::domain_error);
    EXPECT_THROW(polygamma(2, -1.5), std::domain_error);
    EXPECT_THROW(polygamma(3, 1.0), std::invalid_argument);
    EXPECT_THROW(polygamma(0, 1.0), std::invalid_argument);
}

TEST(Polygamma, PentagammaAgreesWithSeries) {
    // psi'''(x) = 6 sum_k 1/(x+k)^4, tail by Euler-Maclaurin.
    auto series = [](double x) {
        constexpr int N = 2000;
        double sum = 0.0;
        for (int k = N - 1; k >= 0; --k) sum += 1.0 / std::pow(x + k, 4);
        const double z = x + N;
        sum += 1.0 / (3 * std::pow(z, 3)) + 1.0 / (2 * std::pow(z, 4)) + 1.0 / (3 * std::pow(z, 5));
        return 6.0 * sum;
    };
    const double pi4 = std::pow(std::numbers::pi, 4);
    EXPECT_NEAR(pentagamma(1.0) / (pi4 / 15.0), 1.0, 1e-13);
    for (double x : {0.01, 0.7, 3.3, 8.0, 21.0, 500.0}) EXPECT_NEAR(pentagamma(x) / series(x), 1.0, 1e-11) << x;
    EXPECT_THROW(pentagamma(0.0), std::domain_error);
}

TEST(PolygammaDifference, MatchesDirectDifferenceWithoutCancellation) {
    for (double x : {0.05, 1.0, 6.5, 40.0})
        for (double h : {0.5 * x, 2.0 * x, 100.0}) {
            EXPECT_NEAR(polygamma_difference(1, x, h) / (polygamma(1, x) - polygamma(1, x + h)), 1.0, 1e-13);
            EXPECT_NEAR(polygamma_difference(2, x, h) / (polygamma(2, x) - polygamma(2, x + h)), 1.0, 1e-13);
            EXPECT_NEAR(polygamma_difference(3, x, h) / (pentagamma(x) - pentagamma(x + h)), 1.0, 1e-13);
        }
}

TEST(PolygammaDifference, TinyShiftMatchesTaylorExpansion) {
    // x = 1e4: psi'' ~ -1/x^2 - 1/x^3 - 1/(2x^4), psi''' ~ 2/x^3 + 3/x^4 + 2/x^5,
    // psi'''' ~ -6/x^4 - 12/x^5; all series are exact to double precision here.
    const double x = 1e4;
    const double h = 1e-4;
    const double d2 = -1 / (x * x) - 1 / (x * x * x) - 1 / (2 * std::pow(x, 4));
    const double d3 = 2 / std::pow(x, 3) + 3 / std::pow(x, 4) + 2 / std::pow(x, 5);
    const double d4 = -6 / std::pow(x, 4) - 12 / std::pow(x, 5);
    EXPECT_NEAR(polygamma_difference(1, x, h) / (-h * d2 - h * h / 2 * d3), 1.0, 1e-12);
    EXPECT_NEAR(polygamma_difference(2, x, h) / (-h * d3 - h * h / 2 * d4), 1.0, 1e-12);
}

TEST(PolygammaDifference, EdgeCases) {
    EXPECT_EQ(polygamma_difference(1, 2.0, 0.0), 0.0);
    EXPECT_THROW(polygamma_difference(1, 2.0, -1.0), std::domain_error);
    EXPECT_THROW(polygamma_difference(4, 2.0, 1.0), std::invalid_argument);
    EXPECT_THROW(polygamma_difference(1, 0.0, 1.0), std::domain_error);
}
