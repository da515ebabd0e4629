#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "infogeo/curvature_report.hpp"
#include "infogeo/expr.hpp"

namespace infogeo {

using Point2 = std::array<double, 2>;

// Symmetric 2x2 matrix [[g11, g12], [g12, g22]].
struct SymMatrix2 {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;

    double det() const { return g11 * g22 - g12 * g12; }
    SymMatrix2 inverse() const;  // unchecked
    double operator()(int i, int j) const { return i == 0 ? (j == 0 ? g11 : g12) : (j == 0 ? g12 : g22); }
};

SymMatrix2 operator*(double s, const SymMatrix2& m);

inline constexpr double kDegeneracyTol = 1e-12;

// |det| <= tol * (|g11 g22| + g12^2): the determinant is lost in the
// cancellation noise of its own two products.
bool is_degenerate(const SymMatrix2& g, double tol = kDegeneracyTol);

// Metric value with first partial derivatives; d[l] holds d g / d theta_l.
struct MetricJet {
    SymMatrix2 g;
    std::array<SymMatrix2, 2> d;
};

// Second partials d^2 g / (d theta_a d theta_b) indexed [0]=(1,1),
// [1]=(1,2), [2]=(2,2).
using MetricHessian = std::array<SymMatrix2, 3>;

// Finite-difference step h = scale * (offset + |coordinate|).
struct StepPolicy {
    double scale = 1e-5;
    double offset = 1.0;
    double step(double coordinate) const;
};

// Three scalar fields g11, g12, g22 over theta = (theta1, theta2), with a
// derivative strategy:
//   symbolic           Expr-backed; first and second partials by nested
//                      symbolic differentiation.
//   analytic_gradient  caller supplies value and first partials; Christoffel
//                      derivatives by central differences.
//   analytic_hessian   caller supplies value, first and second partials.
//   finite_difference  caller supplies values only; first partials by a
//                      fourth-order central stencil, Christoffel derivatives
//                      by central differences.
class MetricField {
public:
    enum class Strategy { symbolic, analytic_gradient, analytic_hessian, finite_difference };

    static MetricField symbolic(const Expr& g11, const Expr& g12, const Expr& g22, std::string var1 = "t1",
                                std::string var2 = "t2", StepPolicy christoffel_step = {});
    static MetricField from_gradient(std::function<MetricJet(const Point2&)> jet, StepPolicy christoffel_step = {});
    static MetricField from_hessian(std::function<MetricJet(const Point2&)> jet,
                                    std::function<MetricHessian(const Point2&)> hessian);
    static MetricField from_values(std::function<SymMatrix2(const Point2&)> values, StepPolicy gradient_step = {1e-3, 1.0},
                                   StepPolicy christoffel_step = {});

    Strategy strategy() const;
    SymMatrix2 at(const Point2& theta) const;
    MetricJet jet(const Point2& theta) const;
    // Only the symbolic and analytic_hessian strategies have second partials.
    std::optional<MetricHessian> second_derivatives(const Point2& theta) const;
    const StepPolicy& christoffel_step() const;

private:
    struct Impl;
    explicit MetricField(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// Gamma^i_jk at a point, zero-based indices, symmetric in (j, k).
struct ChristoffelAt {
    std::array<double, 8> values{};
    double operator()(int i, int j, int k) const { return values[4 * i + 2 * j + k]; }
    double& operator()(int i, int j, int k) { return values[4 * i + 2 * j + k]; }
};

ChristoffelAt christoffel(const MetricJet& jet);
// Throws DegenerateMetricError when is_degenerate(g(theta)).
ChristoffelAt christoffel(const MetricField& field, const Point2& theta);

// d Gamma / d theta_l for l = 0, 1.
std::array<ChristoffelAt, 2> christoffel_derivatives(const MetricField& field, const Point2& theta);

// S = S_R / 2 with S_R the contracted Ricci curvature; the Gaussian family in
// (mu, sigma^2) coordinates gives -1/2. Throws DegenerateMetricError.
double scalar_curvature(const MetricField& field, const Point2& theta);

// Non-throwing variant: degenerate points are classified, not raised.
CurvatureReport ricci_report(const MetricField& field, const Point2& theta);

}  // namespace infogeo
