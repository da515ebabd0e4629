#include "infogeo/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace infogeo {

namespace {

constexpr double kSwitch = 8.0;

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,   1.0 / 42.0,          -1.0 / 30.0,     5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,     43867.0 / 798.0, -174611.0 / 330.0,
};

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// (2j + n - 1)! / (2j)!
double rising(int two_j, int n) {
    double r = 1.0;
    for (int i = 1; i < n; ++i) r *= two_j + i;
    return r;
}

// Reciprocal power z^-m, or the difference z^-m - (z+h)^-m computed without
// cancellation when h is given.
struct Power {
    double h = 0.0;
    double operator()(double z, int m) const {
        if (h == 0.0) return std::pow(z, -m);
        return std::pow(z, -m) * -std::expm1(-m * std::log1p(h / z));
    }
};

// psi^(n)(z) ~ (-1)^(n+1) [ (n-1)!/z^n + n!/(2 z^(n+1)) + sum_j B_2j (2j+n-1)!/(2j)! / z^(2j+n) ]
double asymptotic(int n, double z, const Power& power) {
    double sum = 0.0;
    // Smallest terms first.
    for (std::size_t k = kBernoulli.size(); k-- > 0;) {
        const int two_j = static_cast<int>(2 * k + 2);
        sum += kBernoulli[k] * rising(two_j, n) * power(z, two_j + n);
    }
    sum += factorial(n) / 2.0 * power(z, n + 1);
    sum += factorial(n - 1) * power(z, n);
    return n % 2 == 1 ? sum : -sum;
}

// Upward recurrence psi^(n)(x) = psi^(n)(x+1) + (-1)^(n+1) n! / x^(n+1) to
// z >= 8, then the asymptotic series; terms added smallest first.
double evaluate_polygamma(int n, double x, const Power& power) {
    int shifts = 0;
    double z = x;
    while (z < kSwitch) {
        z += 1.0;
        ++shifts;
    }
    double result = asymptotic(n, z, power);
    const double step = (n % 2 == 1 ? 1.0 : -1.0) * factorial(n);
    for (int k = shifts; k-- > 0;) result += step * power(x + static_cast<double>(k), n + 1);
    return result;
}

void check_argument(double x) {
    if (!(x > 0.0)) throw std::domain_error("polygamma requires x > 0");
}

}  // namespace

double polygamma(int order, double x) {
    if (order != 1 && order != 2) throw std::invalid_argument("polygamma order must be 1 or 2, got " + std::to_string(order));
    check_argument(x);
    if (std::isinf(x)) return 0.0;
    return evaluate_polygamma(order, x, Power{});
}

double pentagamma(double x) {
    check_argument(x);
    if (std::isinf(x)) return 0.0;
    return evaluate_polygamma(3, x, Power{});
}

double polygamma_difference(int order, double x, double h) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("polygamma_difference order must be 1, 2 or 3, got " + std::to_string(order));
    check_argument(x);
    if (!(h >= 0.0)) throw std::domain_error("polygamma_difference requires h >= 0");
    if (h == 0.0 || std::isinf(x)) return 0.0;
    if (std::isinf(h)) return order == 3 ? pentagamma(x) : polygamma(order, x);
    return evaluate_polygamma(order, x, Power{h});
}

}  // namespace infogeo
