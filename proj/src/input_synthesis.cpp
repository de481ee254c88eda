#include "covertlab/input_synthesis.hpp"

#include <cmath>
#include <stdexcept>

namespace covertlab {

InputLaw synthesize_input(const NoiseModel& model, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::domain_error("synthesize_input: gamma must lie in [0, 1)");
    }
    switch (model.family()) {
        case Family::gaussian: {
            const auto& p = std::get<GaussianParams>(model.params());
            return InputLaw{
                GaussianInput{p.sigma * p.sigma * gamma / (1.0 - gamma)}, gamma};
        }
        case Family::exponential: {
            const auto& p = std::get<ExponentialParams>(model.params());
            return InputLaw{
                MixturePointMassExponential{1.0 - gamma, (1.0 - gamma) * p.lambda},
                gamma};
        }
        default:
            throw std::invalid_argument(
                "synthesize_input: no closed-form input law for family '" +
                family_name(model.family()) +
                "'; candidate laws can be falsified with "
                "charfn_factorization_residual");
    }
}

double sample_input_one(const InputLaw& law, RandomStream& rng) {
    if (const auto* g = std::get_if<GaussianInput>(&law.dist)) {
        return std::sqrt(g->variance) * rng.normal();
    }
    const auto& m = std::get<MixturePointMassExponential>(law.dist);
    if (rng.bernoulli(m.mass_at_zero)) return 0.0;
    return rng.exponential(m.rate);
}

std::vector<double> sample_input(const InputLaw& law,
                                 RandomStream& rng,
                                 std::size_t count) {
    std::vector<double> out(count);
    for (auto& x : out) x = sample_input_one(law, rng);
    return out;
}

std::complex<double> input_char_fn(const InputLaw& law, double t) {
    using namespace std::complex_literals;
    if (const auto* g = std::get_if<GaussianInput>(&law.dist)) {
        return std::exp(-0.5 * g->variance * t * t) + 0.0i;
    }
    const auto& m = std::get<MixturePointMassExponential>(law.dist);
    return m.mass_at_zero +
           (1.0 - m.mass_at_zero) * (m.rate / (m.rate - 1.0i * t));
}

double charfn_factorization_residual(const NoiseModel& model,
                                     const InputLaw& law,
                                     double gamma,
                                     std::span<const double> t_grid) {
    const TiltedNoise tilted(model, gamma);
    double residual = 0.0;
    for (double t : t_grid) {
        const std::complex<double> lhs = tilted.char_fn(t);
        const std::complex<double> rhs = model.char_fn(t) * input_char_fn(law, t);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return residual;
}

std::vector<double> default_t_grid() {
    std::vector<double> grid(201);
    for (int i = 0; i < 201; ++i) grid[i] = -10.0 + 0.1 * i;
    return grid;
}

}  // namespace covertlab
