#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

namespace infogeo {

struct Interval {
    double lo;
    double hi;
};

// Ordered, disjoint integration intervals (endpoints may be +/-infinity) plus
// interior points where the integrand may be non-smooth.
class SupportSpec {
public:
    // Throws std::invalid_argument if the intervals overlap, are unordered or
    // empty, or a breakpoint lies outside every interval.
    SupportSpec(std::vector<Interval> intervals, std::vector<double> breakpoints = {});

    static SupportSpec real_line(std::vector<double> breakpoints = {});

    // Parses "(-inf,0),(0,inf)" or "[1,2]". Bracket style is accepted but
    // ignored: endpoints have measure zero.
    static SupportSpec parse(std::string_view text, std::vector<double> breakpoints = {});

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // The intervals cut at every breakpoint.
    std::vector<Interval> pieces() const;

private:
    std::vector<Interval> intervals_;
    std::vector<double> breakpoints_;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_panels = 100000;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 7/15-point Gauss-Kronrod quadrature. Infinite endpoints
// are mapped to finite ones (x = l + t/(1-t) on [l,inf), x = t/(1-t^2) on the
// real line). Throws QuadratureError when the tolerance max(abs_tol,
// rel_tol*|value|) is not met within max_panels, or on a non-finite sample.
QuadResult integrate(const Integrand& f, const SupportSpec& support, const QuadOptions& options = {});

// Single finite or infinite interval, no breakpoints.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& options = {});

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace infogeo
