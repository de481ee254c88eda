#include "covertlab/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "covertlab/special_functions.hpp"

namespace covertlab {

std::string exactness_basis_name(ExactnessBasis basis) {
    switch (basis) {
        case ExactnessBasis::theorem2_gaussian: return "Theorem2_Gaussian";
        case ExactnessBasis::theorem2_exponential: return "Theorem2_Exponential";
        case ExactnessBasis::theorem2_gg_p_le_1: return "Theorem2_GG_p_le_1";
        case ExactnessBasis::upper_bound_only: return "UpperBoundOnly";
        case ExactnessBasis::degenerate_zero: return "DegenerateZero";
    }
    return "unknown";
}

ScalingResult scaling_constant(const NoiseModel& model) {
    ScalingResult result;
    if (model.is_degenerate_uniform()) {
        result.L_upper = 0.0;
        result.L_exact = 0.0;
        result.basis = ExactnessBasis::degenerate_zero;
        return result;
    }
    const double variance = model.log_pdf_variance();
    result.L_upper = std::sqrt(2.0 * variance);
    switch (model.family()) {
        case Family::gaussian:
            result.L_exact = result.L_upper;
            result.basis = ExactnessBasis::theorem2_gaussian;
            break;
        case Family::exponential:
            result.L_exact = result.L_upper;
            result.basis = ExactnessBasis::theorem2_exponential;
            break;
        case Family::laplace:
            // The Laplace law is the generalized Gaussian at p = 1.
            result.L_exact = result.L_upper;
            result.basis = ExactnessBasis::theorem2_gg_p_le_1;
            break;
        case Family::generalized_gaussian: {
            const double p = std::get<GeneralizedGaussianParams>(model.params()).p;
            if (p == 2.0) {
                result.L_exact = result.L_upper;
                result.basis = ExactnessBasis::theorem2_gaussian;
            } else if (p <= 1.0) {
                result.L_exact = result.L_upper;
                result.basis = ExactnessBasis::theorem2_gg_p_le_1;
            } else {
                result.basis = ExactnessBasis::upper_bound_only;
            }
            break;
        }
        default:
            result.basis = ExactnessBasis::upper_bound_only;
            break;
    }
    return result;
}

double gg_scaling_upper(double p) {
    if (!(p > 0.0)) {
        throw std::domain_error("gg_scaling_upper: p must be > 0");
    }
    return std::sqrt(2.0 / p);
}

double ggamma_scaling_upper(double r, double beta) {
    if (!(r > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("ggamma_scaling_upper: r and beta must be > 0");
    }
    const double a = r - 1.0 / beta;
    double radicand = a * a * trigamma(r) - r + 2.0 / beta;
    // The radicand equals 2 Var >= 0; absorb floating-point noise near
    // r = 1/beta where the squared term vanishes.
    if (radicand < 0.0) {
        if (radicand < -1e-12) {
            throw std::runtime_error(
                "ggamma_scaling_upper: negative radicand beyond roundoff");
        }
        radicand = 0.0;
    }
    return std::sqrt(2.0 * radicand);
}

GGammaMoments ggamma_moments(double r, double sigma, double beta) {
    if (!(r > 0.0) || !(sigma > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("ggamma_moments: parameters must be > 0");
    }
    const double psi_r = digamma(r);
    const double psi1_r = trigamma(r);
    const double ls = std::log(sigma);
    GGammaMoments m;
    m.e_ln_z = psi_r / beta + ls;
    m.e_ln_z_sq = psi1_r / (beta * beta) + psi_r * psi_r / (beta * beta) +
                  2.0 * ls * psi_r / beta + ls * ls;
    m.e_zb = r;
    m.e_z2b = (r + 1.0) * r;
    m.e_lnz_zb = r / beta * psi_r + 1.0 / beta + r * ls;
    return m;
}

double ggamma_log_pdf_second_moment(double r, double sigma, double beta) {
    const GGammaMoments m = ggamma_moments(r, sigma, beta);
    const double br = beta * r;
    const double head =
        std::log(beta) - log_gamma(r) - br * std::log(sigma);
    return head * head +
           2.0 * head * ((br - 1.0) * m.e_ln_z - m.e_zb) +
           (br - 1.0) * (br - 1.0) * m.e_ln_z_sq -
           2.0 * (br - 1.0) * m.e_lnz_zb + m.e_z2b;
}

}  // namespace covertlab
