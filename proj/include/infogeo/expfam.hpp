#pragma once

#include <string>
#include <vector>

#include "infogeo/curvature_report.hpp"
#include "infogeo/expr.hpp"
#include "infogeo/geometry.hpp"

namespace infogeo {

// Two-parameter exponential family given by its log-partition function
// psi(t1, t2). The metric is the Hessian of psi.
class ExpFamilySpec {
public:
    // Throws std::invalid_argument when psi mentions anything but t1, t2.
    explicit ExpFamilySpec(Expr psi, std::string statistic = {}, std::string carrier = {});

    const Expr& psi() const { return psi_; }
    // Descriptors of h(x) and k(x); carried along, never evaluated.
    const std::string& statistic() const { return statistic_; }
    const std::string& carrier() const { return carrier_; }
    // Hessian of psi as a symbolic field over (t1, t2).
    const MetricField& field() const { return field_; }

private:
    Expr psi_;
    std::string statistic_;
    std::string carrier_;
    MetricField field_;
};

// [[d11 psi, d12 psi], [d12 psi, d22 psi]]; throws EvalError outside the
// domain of psi.
SymMatrix2 ef_metric(const ExpFamilySpec& spec, const Point2& theta);

// S = det3 / (4 det2^2) with det3 the determinant of the rows
// (g_ij, d2 g_ij, d1 g_ij) for ij = 11, 12, 22. Degenerate metrics give NaN
// classified degenerate; indefinite ones are computed and noted.
CurvatureReport ef_curvature(const ExpFamilySpec& spec, const Point2& theta);

struct FlatnessReport {
    // some entry vanishes on the whole grid
    bool vanishing_entry = false;
    std::string vanishing_which;  // "g11", "g12" or "g22"
    // g_a = lambda g_b on the whole grid
    bool proportional = false;
    std::string proportional_pair;  // e.g. "g11/g22"
    double lambda = 0.0;
    // all entries independent of one parameter
    bool single_parameter = false;
    std::string constant_in;  // "t1" or "t2"

    double max_abs_curvature = 0.0;
    std::size_t points = 0;

    bool any() const { return vanishing_entry || proportional || single_parameter; }
};

inline constexpr double kFlatnessTol = 1e-8;

// Checks the three flatness criteria numerically on a grid, each with
// tolerance 1e-8 * (1 + max |entry|). Degenerate points do not contribute to
// max_abs_curvature. Throws std::invalid_argument on an empty grid.
FlatnessReport ef_flatness_criteria(const ExpFamilySpec& spec, const std::vector<Point2>& grid);

// Row-major grid lo1..hi1 (n1 points) x lo2..hi2 (n2 points).
std::vector<Point2> linear_grid(double lo1, double hi1, int n1, double lo2, double hi2, int n2);

}  // namespace infogeo
