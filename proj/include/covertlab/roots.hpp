#pragma once

#include <functional>

namespace covertlab {

/// Bracketed scalar root finder: bisection interleaved with secant steps.
/// Requires f(lo) and f(hi) to have opposite signs (or one of them to vanish).
/// Returns x with bracket width <= tol. Throws std::invalid_argument on a bad
/// bracket or tolerance.
double find_root(const std::function<double(double)>& f,
                 double lo,
                 double hi,
                 double tol = 1e-12);

}  // namespace covertlab
