#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace covertlab {

/// Integration domain with extended-real endpoints; infinities allowed at
/// either end.
struct Interval {
    double lower;
    double upper;

    bool finite() const {
        return std::isfinite(lower) && std::isfinite(upper);
    }
    static Interval real_line() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }
    static Interval upper_half_line(double a = 0.0) {
        return {a, std::numeric_limits<double>::infinity()};
    }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 10000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Infinite and
/// semi-infinite domains are mapped to a finite interval by rational
/// substitution before subdividing. A non-convergent run returns the partial
/// value with converged=false; an integrand producing NaN throws
/// std::domain_error naming the offending abscissa.
QuadratureResult integrate(const std::function<double(double)>& f,
                           Interval domain,
                           const QuadratureOptions& opts = {});

QuadratureResult integrate(const std::function<double(double)>& f,
                           Interval domain,
                           double abs_tol,
                           double rel_tol);

}  // namespace covertlab
