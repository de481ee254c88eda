#pragma once

namespace covertlab {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// psi'(x) = d/dx psi(x) for x > 0.
double trigamma(double x);

}  // namespace covertlab
