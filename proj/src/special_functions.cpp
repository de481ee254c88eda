#include "covertlab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace covertlab {

namespace {

void require_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(name) + ": argument must be > 0");
    }
}

}  // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    return std::lgamma(x);
}

double digamma(double x) {
    require_positive(x, "digamma");
    // Shift into the asymptotic regime, then apply the Bernoulli series
    // psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^2k).
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12.0 -
        inv2 * (1.0 / 120.0 -
        inv2 * (1.0 / 252.0 -
        inv2 * (1.0 / 240.0 -
        inv2 * (1.0 / 132.0 -
        inv2 * (691.0 / 32760.0 -
        inv2 * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    // psi'(x) ~ 1/x + 1/(2x^2) + sum B_2k / x^(2k+1) after shifting.
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * inv * (1.0 / 6.0 -
        inv2 * (1.0 / 30.0 -
        inv2 * (1.0 / 42.0 -
        inv2 * (1.0 / 30.0 -
        inv2 * (5.0 / 66.0 -
        inv2 * (691.0 / 2730.0 -
        inv2 * (7.0 / 6.0)))))));
    return acc + inv + 0.5 * inv2 + series;
}

}  // namespace covertlab
