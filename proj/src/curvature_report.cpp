#include "infogeo/curvature_report.hpp"

#include <cmath>

namespace infogeo {

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::hyperbolic: return "hyperbolic";
        case Classification::flat: return "flat";
        case Classification::spherical: return "spherical";
        case Classification::degenerate: return "degenerate";
    }
    return "unknown";
}

Classification classify(double curvature, double tol) {
    if (!std::isfinite(curvature)) return Classification::degenerate;
    if (curvature < -tol) return Classification::hyperbolic;
    if (curvature > tol) return Classification::spherical;
    return Classification::flat;
}

}  // namespace infogeo
