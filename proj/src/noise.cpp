#include "covertlab/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "covertlab/special_functions.hpp"

namespace covertlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

/// ln c_p for the generalized Gaussian normalizer c_p = p / (2^((p+1)/p) Gamma(1/p)).
double log_cp(double p) {
    return std::log(p) - (p + 1.0) / p * std::log(2.0) - log_gamma(1.0 / p);
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::gaussian: return "gaussian";
        case Family::exponential: return "exponential";
        case Family::laplace: return "laplace";
        case Family::generalized_gaussian: return "gg";
        case Family::generalized_gamma: return "ggamma";
        case Family::uniform: return "uniform";
    }
    return "unknown";
}

NoiseModel NoiseModel::gaussian(double sigma) {
    return NoiseModel(GaussianParams{sigma});
}
NoiseModel NoiseModel::exponential(double lambda) {
    return NoiseModel(ExponentialParams{lambda});
}
NoiseModel NoiseModel::laplace(double scale) {
    return NoiseModel(LaplaceParams{scale});
}
NoiseModel NoiseModel::generalized_gaussian(double p, double sigma) {
    return NoiseModel(GeneralizedGaussianParams{p, sigma});
}
NoiseModel NoiseModel::generalized_gamma(double r, double sigma, double beta) {
    return NoiseModel(GeneralizedGammaParams{r, sigma, beta});
}
NoiseModel NoiseModel::uniform(double lo, double hi) {
    return NoiseModel(UniformParams{lo, hi});
}

NoiseModel::NoiseModel(Params params) : params_(std::move(params)) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianParams>) {
                require(p.sigma > 0.0, "gaussian: sigma must be > 0");
            } else if constexpr (std::is_same_v<T, ExponentialParams>) {
                require(p.lambda > 0.0, "exponential: lambda must be > 0");
            } else if constexpr (std::is_same_v<T, LaplaceParams>) {
                require(p.scale > 0.0, "laplace: scale must be > 0");
            } else if constexpr (std::is_same_v<T, GeneralizedGaussianParams>) {
                require(p.p > 0.0 && p.sigma > 0.0,
                        "generalized gaussian: p and sigma must be > 0");
            } else if constexpr (std::is_same_v<T, GeneralizedGammaParams>) {
                require(p.r > 0.0 && p.sigma > 0.0 && p.beta > 0.0,
                        "generalized gamma: r, sigma, beta must be > 0");
            } else if constexpr (std::is_same_v<T, UniformParams>) {
                require(std::isfinite(p.lo) && std::isfinite(p.hi) && p.lo < p.hi,
                        "uniform: requires finite lo < hi");
            }
        },
        params_);
}

Family NoiseModel::family() const {
    return static_cast<Family>(params_.index());
}

Interval NoiseModel::support() const {
    switch (family()) {
        case Family::exponential:
        case Family::generalized_gamma:
            return Interval::upper_half_line();
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            return {u.lo, u.hi};
        }
        default:
            return Interval::real_line();
    }
}

double NoiseModel::log_pdf(double z) const {
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            const double s = z / p.sigma;
            return -0.5 * kLog2Pi - std::log(p.sigma) - 0.5 * s * s;
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(params_);
            if (z < 0.0) return -kInf;
            return std::log(p.lambda) - p.lambda * z;
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(params_);
            return -std::log(2.0 * p.scale) - std::abs(z) / p.scale;
        }
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(params_);
            return log_cp(p.p) - std::log(p.sigma) -
                   0.5 * std::pow(std::abs(z) / p.sigma, p.p);
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(params_);
            const double br = p.beta * p.r;
            if (z < 0.0 || (z == 0.0 && br != 1.0)) return -kInf;
            const double head =
                std::log(p.beta) - log_gamma(p.r) - br * std::log(p.sigma);
            if (z == 0.0) return head;  // br == 1, the z-power drops out
            return head + (br - 1.0) * std::log(z) - std::pow(z / p.sigma, p.beta);
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            if (z < u.lo || z > u.hi) return -kInf;
            return -std::log(u.hi - u.lo);
        }
    }
    return -kInf;
}

double NoiseModel::pdf(double z) const {
    return std::exp(log_pdf(z));
}

double NoiseModel::cdf(double z) const {
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            return 0.5 * std::erfc(-z / (p.sigma * std::sqrt(2.0)));
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(params_);
            if (z <= 0.0) return 0.0;
            return -std::expm1(-p.lambda * z);
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(params_);
            if (z < 0.0) return 0.5 * std::exp(z / p.scale);
            return 1.0 - 0.5 * std::exp(-z / p.scale);
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            if (z <= u.lo) return 0.0;
            if (z >= u.hi) return 1.0;
            return (z - u.lo) / (u.hi - u.lo);
        }
        default: {
            // No closed form needed for the toolkit's hot paths; integrate
            // the density up to z.
            const Interval sup = support();
            if (z <= sup.lower) return 0.0;
            auto result = integrate([this](double t) { return pdf(t); },
                                    Interval{sup.lower, z}, 1e-12, 1e-10);
            return std::min(1.0, std::max(0.0, result.value));
        }
    }
}

double NoiseModel::sample_one(RandomStream& rng) const {
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            return p.sigma * rng.normal();
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(params_);
            return rng.exponential(p.lambda);
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(params_);
            const double magnitude = p.scale * rng.exponential(1.0);
            return rng.bernoulli(0.5) ? magnitude : -magnitude;
        }
        case Family::generalized_gaussian: {
            // |Z|^p / (2 sigma^p) is Gamma(1/p, 1) distributed.
            const auto& p = std::get<GeneralizedGaussianParams>(params_);
            const double w = rng.gamma(1.0 / p.p);
            const double magnitude = p.sigma * std::pow(2.0 * w, 1.0 / p.p);
            return rng.bernoulli(0.5) ? magnitude : -magnitude;
        }
        case Family::generalized_gamma: {
            // Z = sigma * G^(1/beta) with G ~ Gamma(r, 1).
            const auto& p = std::get<GeneralizedGammaParams>(params_);
            return p.sigma * std::pow(rng.gamma(p.r), 1.0 / p.beta);
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            return u.lo + (u.hi - u.lo) * rng.uniform();
        }
    }
    return 0.0;
}

std::vector<double> NoiseModel::sample(RandomStream& rng,
                                       std::size_t count) const {
    std::vector<double> out(count);
    for (auto& z : out) z = sample_one(rng);
    return out;
}

double NoiseModel::log_pdf_variance() const {
    switch (family()) {
        case Family::gaussian:
            return 0.5;
        case Family::exponential:
            return 1.0;
        case Family::laplace:
            return 1.0;
        case Family::generalized_gaussian:
            return 1.0 / std::get<GeneralizedGaussianParams>(params_).p;
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(params_);
            const double a = p.r - 1.0 / p.beta;
            return a * a * trigamma(p.r) - p.r + 2.0 / p.beta;
        }
        case Family::uniform:
            return 0.0;  // degenerate: ln p_Z is constant on the support
    }
    return 0.0;
}

double NoiseModel::differential_entropy() const {
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            return 0.5 * (kLog2Pi + 1.0) + std::log(p.sigma);
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(params_);
            return 1.0 - std::log(p.lambda);
        }
        case Family::laplace: {
            const auto& p = std::get<LaplaceParams>(params_);
            return 1.0 + std::log(2.0 * p.scale);
        }
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(params_);
            return std::log(p.sigma) - log_cp(p.p) + 1.0 / p.p;
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(params_);
            return log_gamma(p.r) + std::log(p.sigma) - std::log(p.beta) +
                   p.r + (1.0 / p.beta - p.r) * digamma(p.r);
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            return std::log(u.hi - u.lo);
        }
    }
    return 0.0;
}

double NoiseModel::density_sup() const {
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            return std::exp(-0.5 * kLog2Pi) / p.sigma;
        }
        case Family::exponential:
            return std::get<ExponentialParams>(params_).lambda;
        case Family::laplace:
            return 0.5 / std::get<LaplaceParams>(params_).scale;
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(params_);
            return std::exp(log_cp(p.p)) / p.sigma;
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(params_);
            const double br = p.beta * p.r;
            if (br < 1.0) return kInf;  // density blows up at the origin
            if (br == 1.0) return std::exp(log_pdf(0.0));
            const double mode = p.sigma * std::pow((br - 1.0) / p.beta, 1.0 / p.beta);
            return std::exp(log_pdf(mode));
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            return 1.0 / (u.hi - u.lo);
        }
    }
    return kInf;
}

std::complex<double> NoiseModel::char_fn(double t) const {
    using namespace std::complex_literals;
    switch (family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(params_);
            return std::exp(-0.5 * p.sigma * p.sigma * t * t) + 0.0i;
        }
        case Family::exponential: {
            const double mu = std::get<ExponentialParams>(params_).lambda;
            return mu / (mu - 1.0i * t);
        }
        case Family::laplace: {
            const double b = std::get<LaplaceParams>(params_).scale;
            return 1.0 / (1.0 + b * b * t * t) + 0.0i;
        }
        case Family::uniform: {
            const auto& u = std::get<UniformParams>(params_);
            if (t == 0.0) return 1.0 + 0.0i;
            return (std::exp(1.0i * t * u.hi) - std::exp(1.0i * t * u.lo)) /
                   (1.0i * t * (u.hi - u.lo));
        }
        default: {
            const Interval sup = support();
            const auto real_part = integrate(
                [this, t](double z) {
                    const double w = pdf(z);
                    return w == 0.0 ? 0.0 : w * std::cos(t * z);
                },
                sup, 1e-11, 1e-9);
            const auto imag_part = integrate(
                [this, t](double z) {
                    const double w = pdf(z);
                    return w == 0.0 ? 0.0 : w * std::sin(t * z);
                },
                sup, 1e-11, 1e-9);
            return {real_part.value, imag_part.value};
        }
    }
}

bool NoiseModel::is_degenerate_uniform() const {
    return family() == Family::uniform;
}

namespace {

/// Integrand p_Z(z)^nu |ln p_Z(z)|^k with the off-support limit pinned to 0.
double weighted_log_power(const NoiseModel& model, double z, double nu, int k) {
    const double lp = model.log_pdf(z);
    if (lp == -kInf) return 0.0;
    const double w = std::exp(nu * lp);
    if (w == 0.0) return 0.0;  // underflow dominates any log power
    double result = w;
    for (int i = 0; i < k; ++i) result *= std::abs(lp);
    return result;
}

}  // namespace

IntegrabilityReport integrability_check(const NoiseModel& model, double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0)) {
        throw std::invalid_argument("integrability_check: zeta must lie in (0,1)");
    }
    IntegrabilityReport report;
    report.zeta = zeta;

    const Interval sup = model.support();
    const auto run = [&](double nu, int k) {
        return integrate(
            [&, nu, k](double z) { return weighted_log_power(model, z, nu, k); },
            sup, 1e-10, 1e-8);
    };

    const auto record = [&](double nu, int k, const char* label,
                            double* slot) -> bool {
        const QuadratureResult q = run(nu, k);
        if (slot != nullptr) *slot = q.value;
        if (!q.converged && report.divergent_term.empty()) {
            std::ostringstream msg;
            msg << label << " (exponent " << nu << ", log power " << k << ")";
            report.divergent_term = msg.str();
        }
        return q.converged;
    };

    bool ok = true;
    ok &= record(1.0, 4, "plain log^4 integral", &report.integral_plain_log4);
    ok &= record(zeta, 0, "zeta integral", &report.integral_zeta);
    ok &= record(zeta, 4, "zeta log^4 integral", &report.integral_zeta_log4);

    // Spot-check the uniform-boundedness family over nu in [zeta, 1].
    const double nus[3] = {zeta, 0.5 * (1.0 + zeta), 1.0};
    for (double nu : nus) {
        for (int k = 0; k <= 4; ++k) {
            ok &= record(nu, k, "uniform-boundedness spot check", nullptr);
        }
    }
    report.all_finite = ok;
    return report;
}

}  // namespace covertlab
