#include "covertlab/tilt.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "covertlab/roots.hpp"
#include "covertlab/special_functions.hpp"

namespace covertlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_cp(double p) {
    return std::log(p) - (p + 1.0) / p * std::log(2.0) - log_gamma(1.0 / p);
}

/// The image of each family under tilting with parameter gamma.
NoiseModel tilted_image(const NoiseModel& base, double gamma) {
    const double om = 1.0 - gamma;
    switch (base.family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(base.params());
            return NoiseModel::gaussian(p.sigma / std::sqrt(om));
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(base.params());
            return NoiseModel::exponential(om * p.lambda);
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(base.params());
            return NoiseModel::laplace(p.scale / om);
        }
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(base.params());
            return NoiseModel::generalized_gaussian(
                p.p, p.sigma * std::pow(om, -1.0 / p.p));
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(base.params());
            const double r_t = (om * (p.beta * p.r - 1.0) + 1.0) / p.beta;
            return NoiseModel::generalized_gamma(
                r_t, p.sigma * std::pow(om, -1.0 / p.beta), p.beta);
        }
        case Family::uniform:
            return base;  // the uniform law tilts to itself
    }
    return base;
}

/// ln alpha = -ln integral p_Z^(1-gamma), closed form per family.
double log_alpha_closed(const NoiseModel& base, double gamma) {
    const double l1mg = std::log1p(-gamma);
    switch (base.family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(base.params());
            return -gamma * (0.5 * kLog2Pi + std::log(p.sigma)) + 0.5 * l1mg;
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(base.params());
            return l1mg + gamma * std::log(p.lambda);
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(base.params());
            return l1mg - gamma * std::log(2.0 * p.scale);
        }
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(base.params());
            return gamma * (log_cp(p.p) - std::log(p.sigma)) + l1mg / p.p;
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(base.params());
            const double om = 1.0 - gamma;
            const double r_t = (om * (p.beta * p.r - 1.0) + 1.0) / p.beta;
            const double log_sigma_t = std::log(p.sigma) - l1mg / p.beta;
            const double log_c =
                std::log(p.beta) - log_gamma(p.r) - p.beta * p.r * std::log(p.sigma);
            return -(om * log_c + log_gamma(r_t) + p.beta * r_t * log_sigma_t -
                     std::log(p.beta));
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(base.params());
            return -gamma * std::log(u.hi - u.lo);
        }
    }
    return 0.0;
}

}  // namespace

TiltedNoise::TiltedNoise(NoiseModel base, double gamma)
    : base_(std::move(base)),
      gamma_(gamma),
      log_alpha_(0.0),
      alpha_(1.0),
      tilted_(base_) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::domain_error("make_tilted: gamma must lie in [0, 1)");
    }
    log_alpha_ = log_alpha_closed(base_, gamma_);
    alpha_ = std::exp(log_alpha_);
    tilted_ = tilted_image(base_, gamma_);
}

double TiltedNoise::log_pdf(double z) const {
    const double lp = base_.log_pdf(z);
    if (lp == -kInf) return -kInf;
    return log_alpha_ + (1.0 - gamma_) * lp;
}

double TiltedNoise::pdf(double z) const {
    return std::exp(log_pdf(z));
}

double TiltedNoise::cdf(double z) const {
    return tilted_.cdf(z);
}

std::complex<double> TiltedNoise::char_fn(double t) const {
    return tilted_.char_fn(t);
}

double TiltedNoise::kl_to_base() const {
    if (gamma_ == 0.0) return 0.0;
    const double g = gamma_;
    const double ratio = std::log1p(-g) + g / (1.0 - g);
    switch (base_.family()) {
        case Family::gaussian:
            return 0.5 * ratio;
        case Family::exponential:
        case Family::laplace:
            return ratio;
        case Family::generalized_gaussian:
            return ratio / std::get<GeneralizedGaussianParams>(base_.params()).p;
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(base_.params());
            const auto& t = std::get<GeneralizedGammaParams>(tilted_.params());
            return log_gamma(p.r) - log_gamma(t.r) +
                   (t.r - p.r) * digamma(t.r) + p.r * std::log1p(-g) +
                   t.r * g / (1.0 - g);
        }
        case Family::uniform:
            return 0.0;
    }
    return 0.0;
}

double TiltedNoise::entropy() const {
    return tilted_.differential_entropy();
}

double TiltedNoise::kl_identity() const {
    const double om = 1.0 - gamma_;
    return gamma_ / om * entropy() + log_alpha_ / om;
}

double TiltedNoise::entropy_identity() const {
    if (gamma_ == 0.0) return base_.differential_entropy();
    return -log_alpha_ / gamma_ + (1.0 - gamma_) / gamma_ * kl_to_base();
}

double TiltedNoise::alpha_quadrature() const {
    const auto q = integrate(
        [this](double z) {
            const double lp = base_.log_pdf(z);
            if (lp == -kInf) return 0.0;
            return std::exp((1.0 - gamma_) * lp);
        },
        base_.support(), 1e-12, 1e-10);
    if (!q.converged) {
        throw std::runtime_error(
            "make_tilted: quadrature for the normalizer did not converge; "
            "integral of p_Z^(1-gamma) appears divergent");
    }
    return 1.0 / q.value;
}

double TiltedNoise::kl_quadrature() const {
    const auto q = integrate(
        [this](double z) {
            const double lp = base_.log_pdf(z);
            if (lp == -kInf) return 0.0;
            const double lt = log_alpha_ + (1.0 - gamma_) * lp;
            const double w = std::exp(lt);
            if (w == 0.0) return 0.0;
            return w * (lt - lp);
        },
        base_.support(), 1e-12, 1e-10);
    return q.value;
}

double TiltedNoise::entropy_quadrature() const {
    const auto q = integrate(
        [this](double z) {
            const double lt = log_pdf(z);
            if (lt == -kInf) return 0.0;
            const double w = std::exp(lt);
            if (w == 0.0) return 0.0;
            return -w * lt;
        },
        base_.support(), 1e-12, 1e-10);
    return q.value;
}

double kl_taylor(const NoiseModel& model, double gamma) {
    if (!(gamma >= 0.0)) {
        throw std::domain_error("kl_taylor: gamma must be >= 0");
    }
    return 0.5 * gamma * gamma * model.log_pdf_variance();
}

double entropy_gap_taylor(const NoiseModel& model, double gamma) {
    if (!(gamma >= 0.0)) {
        throw std::domain_error("entropy_gap_taylor: gamma must be >= 0");
    }
    return gamma * model.log_pdf_variance();
}

double solve_gamma_converse(const NoiseModel& model, double delta, long n) {
    if (model.is_degenerate_uniform()) {
        throw std::domain_error(
            "solve_gamma_converse: uniform noise is degenerate; "
            "covert communication is not possible (the covertness equation "
            "has no solution with positive divergence)");
    }
    if (!(delta > 0.0) || n < 1) {
        throw std::invalid_argument(
            "solve_gamma_converse: requires delta > 0 and n >= 1");
    }
    const double target = delta / static_cast<double>(n);
    // Solver bracket stays well inside the tilt domain; experiments live at
    // gamma = O(n^-1/2).
    const double gamma_hi = 0.499;
    const auto divergence = [&](double g) {
        return TiltedNoise(model, g).kl_to_base();
    };
    if (divergence(gamma_hi) < target) {
        std::ostringstream msg;
        msg << "solve_gamma_converse: delta/n = " << target
            << " exceeds the divergence reachable with gamma <= " << gamma_hi;
        throw std::range_error(msg.str());
    }
    // First-order guess sqrt(2 delta / (n Var)) seeds a tight bracket.
    const double guess =
        std::sqrt(2.0 * target / model.log_pdf_variance());
    double hi = std::min(gamma_hi, 4.0 * guess);
    while (divergence(hi) < target) hi = std::min(gamma_hi, hi * 2.0);
    const double gamma_n = find_root(
        [&](double g) { return divergence(g) - target; }, 0.0, hi, 1e-15);
    return gamma_n;
}

double gamma_achievability(const NoiseModel& model,
                           double delta,
                           long n,
                           double chi) {
    if (model.is_degenerate_uniform()) {
        throw std::domain_error(
            "gamma_achievability: uniform noise is degenerate; "
            "covert communication is not possible");
    }
    if (!(chi > 1.0 && chi < 1.5)) {
        throw std::invalid_argument("gamma_achievability: chi must lie in (1, 3/2)");
    }
    if (!(delta > 0.0) || n < 1) {
        throw std::invalid_argument(
            "gamma_achievability: requires delta > 0 and n >= 1");
    }
    const double nd = static_cast<double>(n);
    const double slack = delta / nd - std::pow(nd, -chi);
    if (!(slack > 0.0)) {
        std::ostringstream msg;
        msg << "gamma_achievability: blocklength too small; requires "
               "delta/n > n^-chi (delta/n = "
            << delta / nd << ", n^-chi = " << std::pow(nd, -chi) << ")";
        throw std::range_error(msg.str());
    }
    const double gamma_n =
        std::sqrt(2.0 / model.log_pdf_variance() * slack);
    if (!(gamma_n < 1.0)) {
        throw std::range_error(
            "gamma_achievability: schedule leaves the tilt domain; "
            "increase n or decrease delta");
    }
    return gamma_n;
}

CovertBudget covert_budget_converse(const NoiseModel& model,
                                    double delta,
                                    long n) {
    return CovertBudget{delta, n, solve_gamma_converse(model, delta, n),
                        std::numeric_limits<double>::quiet_NaN()};
}

CovertBudget covert_budget_achievability(const NoiseModel& model,
                                         double delta,
                                         long n,
                                         double chi) {
    return CovertBudget{delta, n, gamma_achievability(model, delta, n, chi),
                        chi};
}

}  // namespace covertlab
