#pragma once

#include <string>

#include "covertlab/noise.hpp"

namespace covertlab {

/// Cumulant function Psi(rho) = ln E[(p_{Y|X}(Y|X)/p_Y(Y))^rho] for the
/// synthesized-input channel at tilt gamma. Closed forms exist for Gaussian
/// and exponential noise; other families throw. Parameter combinations whose
/// defining integral diverges (rho >= 1 for exponential, rho^2 gamma >= 1 for
/// Gaussian) throw a range error.
double psi(const NoiseModel& model, double gamma, double rho);

/// Independent 2-D quadrature of the defining expectation; validation path.
double psi_quadrature(const NoiseModel& model, double gamma, double rho);

/// Bound mode for any bounded-density family:
/// Psi <= rho ln b + ln integral p_Y^(1-rho), evaluated by quadrature.
double psi_general_upper(const NoiseModel& model, double gamma, double rho);

/// Channel-resolvability bound (1/rho) ln(1 + exp(-rho(key+msg) + n psi)),
/// evaluated in log space.
double resolvability_bound(double psi_value,
                           double key_nats,
                           double msg_nats,
                           long n,
                           double rho);

enum class KeySchedule {
    general_o_n,  // bounded-density bound mode; gives ln|K| = O(n)
    sub_sqrt,     // Gaussian/exponential closed form; gives ln|K| = o(sqrt(n))
};

std::string key_schedule_name(KeySchedule schedule);

struct KeyLengthReport {
    double rho = 0.0;
    double psi_value = 0.0;
    double resolvability_bound = 0.0;
    double key_nats = 0.0;
    double msg_nats = 0.0;
    long n = 0;
    bool feasible = false;
    std::string note;  // set when infeasible
};

/// Smallest sufficient key length (nats) over a log grid of rho in
/// [n^-1/2, 0.9] such that the resolvability bound meets target_leak, at the
/// achievability tilt gamma_n and message length sqrt(delta n) - xi. The
/// slack xi defaults to n^0.4.
KeyLengthReport sufficient_key_length(const NoiseModel& model,
                                      double delta,
                                      long n,
                                      double target_leak,
                                      KeySchedule schedule,
                                      double xi = -1.0,
                                      double chi = 1.25);

}  // namespace covertlab
