#pragma once

#include <complex>
#include <optional>

#include "covertlab/noise.hpp"

namespace covertlab {

/// The tilted (escort) companion of a noise model: density proportional to
/// p_Z^(1-gamma), normalized by alpha. Every catalog family is closed under
/// tilting, so the tilted law is itself a NoiseModel and its divergence and
/// entropy have closed forms; quadrature backs the cross-check paths.
class TiltedNoise {
public:
    TiltedNoise(NoiseModel base, double gamma);

    const NoiseModel& base() const { return base_; }
    double gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    double log_alpha() const { return log_alpha_; }

    /// The tilted law as a catalog model (always available: each family maps
    /// into itself).
    const NoiseModel& as_model() const { return tilted_; }

    double log_pdf(double z) const;
    double pdf(double z) const;
    double cdf(double z) const;
    std::complex<double> char_fn(double t) const;

    /// D(P_tilted || P_base) in nats, closed form.
    double kl_to_base() const;
    /// h(tilted) in nats, closed form.
    double entropy() const;

    /// Identity route for the divergence: gamma/(1-gamma) h + ln(alpha)/(1-gamma).
    double kl_identity() const;
    /// Identity route for the entropy: -ln(alpha)/gamma + (1-gamma)/gamma D.
    double entropy_identity() const;

    // Quadrature cross-check routes (independent of the closed forms).
    double alpha_quadrature() const;
    double kl_quadrature() const;
    double entropy_quadrature() const;

private:
    NoiseModel base_;
    double gamma_;
    double log_alpha_;
    double alpha_;
    NoiseModel tilted_;
};

inline TiltedNoise make_tilted(const NoiseModel& base, double gamma) {
    return TiltedNoise(base, gamma);
}

/// Leading Taylor term of D(P_tilted || P_base): gamma^2/2 Var[ln p_Z(Z)].
double kl_taylor(const NoiseModel& model, double gamma);

/// Leading Taylor term of h(tilted) - h(base): gamma Var[ln p_Z(Z)].
double entropy_gap_taylor(const NoiseModel& model, double gamma);

/// Solves n * D(P_tilted || P_base) = delta for the tilt parameter. Refuses
/// degenerate uniform noise and unreachable budgets.
double solve_gamma_converse(const NoiseModel& model, double delta, long n);

/// The achievability schedule gamma_n = sqrt(2/Var (delta/n - n^-chi)),
/// chi in (1, 3/2).
double gamma_achievability(const NoiseModel& model,
                           double delta,
                           long n,
                           double chi = 1.25);

/// A covertness budget (delta, n) together with its solved tilt parameter.
struct CovertBudget {
    double delta;
    long n;
    double gamma_n;
    double chi;  // NaN when solved by the converse equation
};

CovertBudget covert_budget_converse(const NoiseModel& model,
                                    double delta,
                                    long n);
CovertBudget covert_budget_achievability(const NoiseModel& model,
                                         double delta,
                                         long n,
                                         double chi = 1.25);

}  // namespace covertlab
