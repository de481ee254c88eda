#pragma once

#include <optional>
#include <string>

#include "covertlab/noise.hpp"

namespace covertlab {

/// Why (or whether) the square-root scaling constant is exact for a model.
enum class ExactnessBasis {
    theorem2_gaussian,
    theorem2_exponential,
    theorem2_gg_p_le_1,
    upper_bound_only,
    degenerate_zero,
};

std::string exactness_basis_name(ExactnessBasis basis);

struct ScalingResult {
    double L_upper = 0.0;
    std::optional<double> L_exact;
    ExactnessBasis basis = ExactnessBasis::upper_bound_only;
};

/// L_upper = sqrt(2 Var[ln p_Z(Z)]); L_exact is set only where the matching
/// achievability argument is known to hold (Gaussian, exponential, and
/// generalized Gaussian with p <= 1). Uniform noise collapses to zero.
ScalingResult scaling_constant(const NoiseModel& model);

/// Generalized Gaussian scaling bound sqrt(2/p).
double gg_scaling_upper(double p);

/// Generalized gamma scaling bound sqrt(2 ((r-1/beta)^2 psi'(r) - r + 2/beta)).
double ggamma_scaling_upper(double r, double beta);

/// The five closed-form generalized-gamma moments used to assemble
/// E[(ln p_Z(Z))^2].
struct GGammaMoments {
    double e_ln_z;     // E[ln Z]
    double e_ln_z_sq;  // E[(ln Z)^2]
    double e_zb;       // E[(Z/sigma)^beta]
    double e_z2b;      // E[(Z/sigma)^(2beta)]
    double e_lnz_zb;   // E[ln(Z) (Z/sigma)^beta]
};

GGammaMoments ggamma_moments(double r, double sigma, double beta);

/// Assembles E[(ln p_Z(Z))^2] for the generalized gamma family from the
/// closed-form moments.
double ggamma_log_pdf_second_moment(double r, double sigma, double beta);

}  // namespace covertlab
