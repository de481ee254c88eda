#include "covertlab/key_length.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "covertlab/input_synthesis.hpp"
#include "covertlab/tilt.hpp"

namespace covertlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rho(double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("psi: rho must lie in (0, 1]");
    }
}

}  // namespace

double psi(const NoiseModel& model, double gamma, double rho) {
    check_rho(rho);
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::domain_error("psi: gamma must lie in [0, 1)");
    }
    if (gamma == 0.0) return 0.0;  // degenerate input: p_{Y|X} == p_Y
    switch (model.family()) {
        case Family::gaussian: {
            if (rho * rho * gamma >= 1.0) {
                throw std::range_error(
                    "psi: Gaussian cumulant diverges (rho^2 gamma >= 1)");
            }
            return -0.5 * rho * std::log1p(-gamma) -
                   0.5 * std::log1p(-rho * rho * gamma);
        }
        case Family::exponential: {
            if (rho + gamma - gamma * rho >= 1.0) {
                throw std::range_error(
                    "psi: exponential cumulant diverges "
                    "(rho + gamma - gamma rho >= 1)");
            }
            return -rho * std::log1p(-gamma) - std::log1p(rho * gamma) +
                   std::log1p(gamma * rho / (1.0 - rho));
        }
        default:
            throw std::invalid_argument(
                "psi: closed form available only for gaussian and exponential "
                "noise; see psi_general_upper for bounded families");
    }
}

double psi_quadrature(const NoiseModel& model, double gamma, double rho) {
    check_rho(rho);
    if (gamma == 0.0) return 0.0;
    const TiltedNoise tilted(model, gamma);
    const InputLaw law = synthesize_input(model, gamma);

    // Inner integral over the output given the input value.
    const auto inner = [&](double x) {
        const auto integrand = [&](double y) {
            const double lz = model.log_pdf(y - x);
            if (lz == -kInf) return 0.0;
            const double ly = tilted.log_pdf(y);
            const double value = std::exp(lz + rho * (lz - ly));
            return value;
        };
        Interval dom = model.support();
        if (std::isfinite(dom.lower)) dom.lower += x;
        const auto q = integrate(integrand, dom, 1e-12, 1e-10);
        return q.value;
    };

    double expectation = 0.0;
    if (const auto* g = std::get_if<GaussianInput>(&law.dist)) {
        const double sx = std::sqrt(g->variance);
        const auto outer = [&](double x) {
            const double u = x / sx;
            const double px =
                std::exp(-0.5 * u * u) / (sx * std::sqrt(2.0 * M_PI));
            return px == 0.0 ? 0.0 : px * inner(x);
        };
        expectation = integrate(outer, Interval::real_line(), 1e-10, 1e-8).value;
    } else {
        const auto& m = std::get<MixturePointMassExponential>(law.dist);
        const auto outer = [&](double x) {
            const double px = m.rate * std::exp(-m.rate * x);
            return px == 0.0 ? 0.0 : px * inner(x);
        };
        expectation =
            m.mass_at_zero * inner(0.0) +
            (1.0 - m.mass_at_zero) *
                integrate(outer, Interval::upper_half_line(), 1e-10, 1e-8).value;
    }
    return std::log(expectation);
}

double psi_general_upper(const NoiseModel& model, double gamma, double rho) {
    check_rho(rho);
    if (gamma == 0.0) return 0.0;
    const double b = model.density_sup();
    if (!std::isfinite(b)) {
        throw std::domain_error(
            "psi_general_upper: density is unbounded, the bounded-density "
            "bound does not apply");
    }
    const TiltedNoise tilted(model, gamma);
    // integral p_Y^(1-rho) = alpha^(1-rho) * integral p_Z^((1-gamma)(1-rho))
    const double exponent = (1.0 - gamma) * (1.0 - rho);
    const auto q = integrate(
        [&](double z) {
            const double lp = model.log_pdf(z);
            if (lp == -kInf) return 0.0;
            return std::exp(exponent * lp);
        },
        model.support(), 1e-11, 1e-9);
    if (!q.converged) {
        throw std::range_error(
            "psi_general_upper: integral of p_Z^((1-gamma)(1-rho)) did not "
            "converge; decrease rho");
    }
    return rho * std::log(b) + (1.0 - rho) * tilted.log_alpha() +
           std::log(q.value);
}

double resolvability_bound(double psi_value,
                           double key_nats,
                           double msg_nats,
                           long n,
                           double rho) {
    check_rho(rho);
    const double exponent =
        -rho * (key_nats + msg_nats) + static_cast<double>(n) * psi_value;
    // (1/rho) ln(1 + e^t), stable for either sign of t.
    if (exponent > 0.0) {
        return (exponent + std::log1p(std::exp(-exponent))) / rho;
    }
    return std::log1p(std::exp(exponent)) / rho;
}

std::string key_schedule_name(KeySchedule schedule) {
    return schedule == KeySchedule::general_o_n ? "GeneralOn" : "SubSqrt";
}

KeyLengthReport sufficient_key_length(const NoiseModel& model,
                                      double delta,
                                      long n,
                                      double target_leak,
                                      KeySchedule schedule,
                                      double xi,
                                      double chi) {
    if (!(target_leak > 0.0)) {
        throw std::invalid_argument(
            "sufficient_key_length: target_leak must be positive");
    }
    if (schedule == KeySchedule::sub_sqrt &&
        model.family() != Family::gaussian &&
        model.family() != Family::exponential) {
        throw std::invalid_argument(
            "sufficient_key_length: the sub-sqrt schedule covers gaussian and "
            "exponential noise only");
    }
    if (schedule == KeySchedule::general_o_n &&
        !std::isfinite(model.density_sup())) {
        throw std::domain_error(
            "sufficient_key_length: the general schedule needs a bounded "
            "density");
    }
    const double nd = static_cast<double>(n);
    if (xi < 0.0) xi = std::pow(nd, 0.4);
    const double msg_nats = std::max(0.0, std::sqrt(delta * nd) - xi);
    const double gamma = gamma_achievability(model, delta, n, chi);

    const auto psi_for = [&](double rho) {
        return schedule == KeySchedule::sub_sqrt
                   ? psi(model, gamma, rho)
                   : psi_general_upper(model, gamma, rho);
    };

    KeyLengthReport best;
    best.n = n;
    best.msg_nats = msg_nats;
    best.feasible = false;
    best.key_nats = kInf;

    constexpr int kGridPoints = 40;
    const double rho_lo = std::pow(nd, -0.5);
    const double rho_hi = 0.9;
    for (int i = 0; i < kGridPoints; ++i) {
        const double rho =
            rho_lo * std::pow(rho_hi / rho_lo,
                              static_cast<double>(i) / (kGridPoints - 1));
        double psi_value;
        try {
            psi_value = psi_for(rho);
        } catch (const std::range_error&) {
            continue;  // divergent corner of the grid
        }
        double key;
        if (std::isinf(target_leak)) {
            key = 0.0;
        } else {
            // bound <= target  <=>  key >= (n psi - ln(e^(rho t) - 1))/rho - msg
            const double rhs = std::expm1(rho * target_leak);
            key = (nd * psi_value - std::log(rhs)) / rho - msg_nats;
            key = std::max(0.0, key);
        }
        if (key < best.key_nats) {
            best.rho = rho;
            best.psi_value = psi_value;
            best.key_nats = key;
            best.feasible = true;
        }
    }
    if (!best.feasible) {
        best.key_nats = 0.0;
        best.note =
            "no rho on the search grid gives a finite cumulant; the bound is "
            "infeasible at these parameters";
        return best;
    }
    best.resolvability_bound =
        resolvability_bound(best.psi_value, best.key_nats, msg_nats, n, best.rho);
    return best;
}

}  // namespace covertlab
