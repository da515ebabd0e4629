#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infogeo/curvature_report.hpp"
#include "infogeo/expr.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/quad.hpp"

namespace infogeo {

// Base density p(x) of a location-scale family, restricted to its positive
// support. The derivative defaults to the symbolic derivative of the density.
class Generatrix {
public:
    // Validates non-negativity on a sample of the support and that the
    // density integrates to 1 within 1e-6. With `normalize` the density is
    // divided by its integral instead, which normalization() reports.
    // Throws std::invalid_argument on validation failure.
    Generatrix(Expr density, SupportSpec support, bool normalize = false, std::optional<Expr> derivative = std::nullopt,
               std::string name = {});

    const Expr& density() const { return density_; }
    const Expr& derivative() const { return derivative_; }
    const SupportSpec& support() const { return support_; }
    // Integral of the density as given (1 up to quadrature error unless
    // normalization was requested).
    double normalization() const { return normalization_; }
    const std::string& name() const { return name_; }

private:
    Expr density_;
    Expr derivative_;
    SupportSpec support_;
    double normalization_ = 1.0;
    std::string name_;
};

// Catalog: gaussian exp(-x^2)/sqrt(pi); cauchy 1/(pi*(1+x^2)); exponential
// exp(-x) on (0,inf); laplace (1/2)*exp(-abs(x)) with a breakpoint at 0.
Generatrix builtin_generatrix(std::string_view name);
std::vector<std::string> builtin_generatrix_names();
// Text of a catalog density and support, for echoing in reports.
std::string builtin_density_text(std::string_view name);
std::string builtin_support_text(std::string_view name);

struct LSCoefficients {
    double a2 = 0.0;
    double b2 = 0.0;
    double c = 0.0;
    double a2_error = 0.0;
    double b2_error = 0.0;
    double c_error = 0.0;

    double gram() const { return a2 * b2 - c * c; }
};

//   a2 = int p'^2/p,  b2 = int p (1 + x p'/p)^2,  c = int p' (1 + x p'/p)
// over the positive support; samples with p(x) == 0 contribute nothing.
// Throws QuadratureError or EvalError.
LSCoefficients ls_coefficients(const Generatrix& g, const QuadOptions& options = {});

// (1/s^2) [[a2, c], [c, b2]]; throws std::invalid_argument unless s > 0.
SymMatrix2 ls_metric_at(const LSCoefficients& coeffs, double l, double s);

// The same metric as a symbolic field over (t1, t2) = (l, s).
MetricField ls_metric_field(const LSCoefficients& coeffs);

inline constexpr double kLocationTol = 1e-10;
inline constexpr double kGramTol = 1e-8;

// Closed form S = -a2 / (a2 b2 - c^2). a2 <= 1e-10 is reported as flat and
// singular (rank-1 metric); a2 b2 - c^2 <= 1e-8 a2 b2 as degenerate with
// S = -inf; everything else is classified by sign.
CurvatureReport ls_curvature(const LSCoefficients& coeffs);

}  // namespace infogeo
