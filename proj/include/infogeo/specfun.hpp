#pragma once

namespace infogeo {

// Polygamma function of order 1 (trigamma) or 2 (tetragamma) for x > 0.
// Upward recurrence to x >= 8, then the Bernoulli asymptotic series.
// Throws std::domain_error for x <= 0 and std::invalid_argument for any
// other order.
double polygamma(int order, double x);

// Third derivative of the digamma function, same scheme as polygamma.
double pentagamma(double x);

// psi^(order)(x) - psi^(order)(x + h) for order 1..3 and h >= 0, accurate to
// working precision even when h is tiny relative to x. Each recurrence and
// asymptotic term is differenced separately.
double polygamma_difference(int order, double x, double h);

inline double trigamma(double x) { return polygamma(1, x); }
inline double tetragamma(double x) { return polygamma(2, x); }

}  // namespace infogeo
