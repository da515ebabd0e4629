#pragma once

#include <map>
#include <string>
#include <string_view>

namespace infogeo {

enum class Classification { hyperbolic, flat, spherical, degenerate };

std::string_view to_string(Classification c);

inline constexpr double kClassTol = 1e-8;

// Sign classification of a finite curvature value.
Classification classify(double curvature, double tol = kClassTol);

struct CurvatureReport {
    double curvature = 0.0;  // -inf or NaN when degenerate
    Classification classification = Classification::flat;
    std::string pipeline;
    // Rank-1 metric from a vanishing location coefficient; reported as flat.
    bool singular = false;
    // Pipeline-specific numbers (coefficients, determinants, ...). Ordered so
    // serialization is stable.
    std::map<std::string, double> payload;
    std::string note;
};

}  // namespace infogeo
