#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "covertlab/noise.hpp"
#include "covertlab/tilt.hpp"

namespace covertlab {

struct GaussianInput {
    double variance;
};

/// Point mass at zero with weight mass_at_zero, exponential tail otherwise.
struct MixturePointMassExponential {
    double mass_at_zero;
    double rate;
};

/// An input law chosen so that X + Z has the tilted law of the paired noise
/// model.
struct InputLaw {
    std::variant<GaussianInput, MixturePointMassExponential> dist;
    double gamma = 0.0;
};

/// Closed-form input construction: Gaussian noise takes a Gaussian input of
/// variance sigma^2 gamma/(1-gamma); exponential noise takes a point mass at
/// zero of weight 1-gamma mixed with an exponential of rate (1-gamma)Lambda.
/// Other families throw (use charfn_factorization_residual to falsify
/// candidate laws instead).
InputLaw synthesize_input(const NoiseModel& model, double gamma);

std::vector<double> sample_input(const InputLaw& law,
                                 RandomStream& rng,
                                 std::size_t count);
double sample_input_one(const InputLaw& law, RandomStream& rng);

std::complex<double> input_char_fn(const InputLaw& law, double t);

/// max over the grid of |phi_tilted(t) - phi_Z(t) phi_X(t)|.
double charfn_factorization_residual(const NoiseModel& model,
                                     const InputLaw& law,
                                     double gamma,
                                     std::span<const double> t_grid);

/// 201 points uniform on [-10, 10].
std::vector<double> default_t_grid();

}  // namespace covertlab
