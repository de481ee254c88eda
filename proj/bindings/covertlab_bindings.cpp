#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "covertlab/key_length.hpp"
#include "covertlab/serialization.hpp"
#include "covertlab/simulator.hpp"
#include "covertlab/special_functions.hpp"

namespace py = pybind11;
using namespace covertlab;

namespace {

KeySchedule schedule_from_string(const std::string& name) {
    if (name == "subsqrt") return KeySchedule::sub_sqrt;
    if (name == "general") return KeySchedule::general_o_n;
    throw std::invalid_argument("schedule must be 'subsqrt' or 'general'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Numerical toolkit for the square-root scaling constant of covert "
        "communication over additive-noise channels";

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &RandomStream::uniform)
        .def("normal", &RandomStream::normal)
        .def("exponential", &RandomStream::exponential, py::arg("rate"))
        .def("gamma", &RandomStream::gamma, py::arg("shape"));

    py::class_<NoiseModel>(m, "NoiseModel")
        .def_static("gaussian", &NoiseModel::gaussian, py::arg("sigma"))
        .def_static("exponential", &NoiseModel::exponential, py::arg("lambda_"))
        .def_static("laplace", &NoiseModel::laplace, py::arg("scale"))
        .def_static("generalized_gaussian", &NoiseModel::generalized_gaussian,
                    py::arg("p"), py::arg("sigma"))
        .def_static("generalized_gamma", &NoiseModel::generalized_gamma,
                    py::arg("r"), py::arg("sigma"), py::arg("beta"))
        .def_static("uniform", &NoiseModel::uniform, py::arg("lo"),
                    py::arg("hi"))
        .def_static(
            "from_json",
            [](const std::string& text) {
                return model_from_json(json::parse(text));
            },
            py::arg("text"))
        .def_property_readonly(
            "family", [](const NoiseModel& m) { return family_name(m.family()); })
        .def("log_pdf", &NoiseModel::log_pdf, py::arg("z"))
        .def("pdf", &NoiseModel::pdf, py::arg("z"))
        .def("cdf", &NoiseModel::cdf, py::arg("z"))
        .def("sample", &NoiseModel::sample, py::arg("rng"), py::arg("count"))
        .def("log_pdf_variance", &NoiseModel::log_pdf_variance)
        .def("differential_entropy", &NoiseModel::differential_entropy)
        .def("density_sup", &NoiseModel::density_sup)
        .def("is_degenerate_uniform", &NoiseModel::is_degenerate_uniform)
        .def("to_json",
             [](const NoiseModel& m) { return model_to_json(m).dump(); })
        .def("__repr__", [](const NoiseModel& m) {
            return "NoiseModel(" + model_to_json(m).dump() + ")";
        });

    py::class_<TiltedNoise>(m, "TiltedNoise")
        .def(py::init<NoiseModel, double>(), py::arg("base"), py::arg("gamma"))
        .def_property_readonly("gamma", &TiltedNoise::gamma)
        .def_property_readonly("alpha", &TiltedNoise::alpha)
        .def("log_pdf", &TiltedNoise::log_pdf, py::arg("z"))
        .def("pdf", &TiltedNoise::pdf, py::arg("z"))
        .def("cdf", &TiltedNoise::cdf, py::arg("z"))
        .def("kl_to_base", &TiltedNoise::kl_to_base)
        .def("entropy", &TiltedNoise::entropy)
        .def("kl_quadrature", &TiltedNoise::kl_quadrature)
        .def("entropy_quadrature", &TiltedNoise::entropy_quadrature);

    m.def("make_tilted", &make_tilted, py::arg("base"), py::arg("gamma"));
    m.def("kl_taylor", &kl_taylor, py::arg("model"), py::arg("gamma"));
    m.def("entropy_gap_taylor", &entropy_gap_taylor, py::arg("model"),
          py::arg("gamma"));
    m.def("solve_gamma_converse", &solve_gamma_converse, py::arg("model"),
          py::arg("delta"), py::arg("n"));
    m.def("gamma_achievability", &gamma_achievability, py::arg("model"),
          py::arg("delta"), py::arg("n"), py::arg("chi") = 1.25);

    py::class_<ScalingResult>(m, "ScalingResult")
        .def_readonly("L_upper", &ScalingResult::L_upper)
        .def_property_readonly(
            "L_exact",
            [](const ScalingResult& r) -> py::object {
                if (r.L_exact.has_value()) return py::float_(*r.L_exact);
                return py::none();
            })
        .def_property_readonly(
            "basis",
            [](const ScalingResult& r) { return exactness_basis_name(r.basis); })
        .def("__repr__", [](const ScalingResult& r) {
            return "ScalingResult(" + to_json(r).dump() + ")";
        });

    m.def("scaling_constant", &scaling_constant, py::arg("model"));
    m.def("gg_scaling_upper", &gg_scaling_upper, py::arg("p"));
    m.def("ggamma_scaling_upper", &ggamma_scaling_upper, py::arg("r"),
          py::arg("beta"));

    py::class_<GGammaMoments>(m, "GGammaMoments")
        .def_readonly("e_ln_z", &GGammaMoments::e_ln_z)
        .def_readonly("e_ln_z_sq", &GGammaMoments::e_ln_z_sq)
        .def_readonly("e_zb", &GGammaMoments::e_zb)
        .def_readonly("e_z2b", &GGammaMoments::e_z2b)
        .def_readonly("e_lnz_zb", &GGammaMoments::e_lnz_zb);
    m.def("ggamma_moments", &ggamma_moments, py::arg("r"), py::arg("sigma"),
          py::arg("beta"));

    py::class_<IntegrabilityReport>(m, "IntegrabilityReport")
        .def_readonly("zeta", &IntegrabilityReport::zeta)
        .def_readonly("integral_plain_log4",
                      &IntegrabilityReport::integral_plain_log4)
        .def_readonly("integral_zeta", &IntegrabilityReport::integral_zeta)
        .def_readonly("integral_zeta_log4",
                      &IntegrabilityReport::integral_zeta_log4)
        .def_readonly("all_finite", &IntegrabilityReport::all_finite)
        .def_readonly("divergent_term", &IntegrabilityReport::divergent_term);
    m.def("integrability_check", &integrability_check, py::arg("model"),
          py::arg("zeta") = 0.5);

    py::class_<InputLaw>(m, "InputLaw")
        .def_readonly("gamma", &InputLaw::gamma)
        .def_property_readonly(
            "kind",
            [](const InputLaw& law) {
                return std::holds_alternative<GaussianInput>(law.dist)
                           ? "gaussian"
                           : "mixture_point_mass_exponential";
            })
        .def_property_readonly(
            "variance",
            [](const InputLaw& law) -> py::object {
                if (const auto* g = std::get_if<GaussianInput>(&law.dist)) {
                    return py::float_(g->variance);
                }
                return py::none();
            })
        .def_property_readonly(
            "mass_at_zero",
            [](const InputLaw& law) -> py::object {
                if (const auto* m =
                        std::get_if<MixturePointMassExponential>(&law.dist)) {
                    return py::float_(m->mass_at_zero);
                }
                return py::none();
            })
        .def_property_readonly(
            "rate",
            [](const InputLaw& law) -> py::object {
                if (const auto* m =
                        std::get_if<MixturePointMassExponential>(&law.dist)) {
                    return py::float_(m->rate);
                }
                return py::none();
            });

    m.def("synthesize_input", &synthesize_input, py::arg("model"),
          py::arg("gamma"));
    m.def("sample_input", &sample_input, py::arg("law"), py::arg("rng"),
          py::arg("count"));
    m.def(
        "charfn_factorization_residual",
        [](const NoiseModel& model, const InputLaw& law, double gamma,
           const std::vector<double>& grid) {
            return charfn_factorization_residual(model, law, gamma, grid);
        },
        py::arg("model"), py::arg("law"), py::arg("gamma"), py::arg("t_grid"));
    m.def("default_t_grid", &default_t_grid);

    py::class_<SimulationReport>(m, "SimulationReport")
        .def_readonly("n", &SimulationReport::n)
        .def_readonly("gamma_n", &SimulationReport::gamma_n)
        .def_readonly("log_num_messages", &SimulationReport::log_num_messages)
        .def_readonly("threshold", &SimulationReport::threshold)
        .def_readonly("error_rate", &SimulationReport::error_rate)
        .def_readonly("error_ci_lo", &SimulationReport::error_ci_lo)
        .def_readonly("error_ci_hi", &SimulationReport::error_ci_hi)
        .def_readonly("info_density_mean", &SimulationReport::info_density_mean)
        .def_readonly("info_density_var", &SimulationReport::info_density_var)
        .def_readonly("analytic_mutual_info",
                      &SimulationReport::analytic_mutual_info)
        .def_readonly("covert_divergence", &SimulationReport::covert_divergence)
        .def_readonly("delta_budget", &SimulationReport::delta_budget)
        .def_readonly("feinstein_envelope",
                      &SimulationReport::feinstein_envelope)
        .def_readonly("trials", &SimulationReport::trials)
        .def_readonly("seed", &SimulationReport::seed)
        .def("to_json", [](const SimulationReport& r) { return to_json(r).dump(); })
        .def("__repr__", [](const SimulationReport& r) {
            return "SimulationReport(" + to_json(r).dump() + ")";
        });

    m.def(
        "run_experiment",
        [](const NoiseModel& model, double delta, long n, double rate_fraction,
           long trials, double chi, std::uint64_t seed, int threads) {
            return run_experiment(ExperimentConfig{
                model, delta, n, rate_fraction, trials, chi, seed, threads});
        },
        py::arg("model"), py::arg("delta"), py::arg("n"),
        py::arg("rate_fraction"), py::arg("trials"), py::arg("chi") = 1.25,
        py::arg("seed") = 0, py::arg("threads") = 0);
    m.def(
        "sweep",
        [](const NoiseModel& model, double delta,
           const std::vector<long>& blocklengths, double rate_fraction,
           long trials, double chi, std::uint64_t seed, int threads) {
            return sweep(ExperimentConfig{model, delta, 0, rate_fraction,
                                          trials, chi, seed, threads},
                         blocklengths);
        },
        py::arg("model"), py::arg("delta"), py::arg("blocklengths"),
        py::arg("rate_fraction"), py::arg("trials"), py::arg("chi") = 1.25,
        py::arg("seed") = 0, py::arg("threads") = 0);
    m.def(
        "reports_to_csv",
        [](const std::vector<SimulationReport>& reports) {
            return reports_to_csv(reports);
        },
        py::arg("reports"));

    py::class_<KeyLengthReport>(m, "KeyLengthReport")
        .def_readonly("rho", &KeyLengthReport::rho)
        .def_readonly("psi_value", &KeyLengthReport::psi_value)
        .def_readonly("resolvability_bound",
                      &KeyLengthReport::resolvability_bound)
        .def_readonly("key_nats", &KeyLengthReport::key_nats)
        .def_readonly("msg_nats", &KeyLengthReport::msg_nats)
        .def_readonly("n", &KeyLengthReport::n)
        .def_readonly("feasible", &KeyLengthReport::feasible)
        .def_readonly("note", &KeyLengthReport::note);

    m.def("psi", &psi, py::arg("model"), py::arg("gamma"), py::arg("rho"));
    m.def("psi_quadrature", &psi_quadrature, py::arg("model"), py::arg("gamma"),
          py::arg("rho"));
    m.def("psi_general_upper", &psi_general_upper, py::arg("model"),
          py::arg("gamma"), py::arg("rho"));
    m.def("resolvability_bound", &resolvability_bound, py::arg("psi_value"),
          py::arg("key_nats"), py::arg("msg_nats"), py::arg("n"),
          py::arg("rho"));
    m.def(
        "sufficient_key_length",
        [](const NoiseModel& model, double delta, long n, double target_leak,
           const std::string& schedule, double xi, double chi) {
            return sufficient_key_length(model, delta, n, target_leak,
                                         schedule_from_string(schedule), xi,
                                         chi);
        },
        py::arg("model"), py::arg("delta"), py::arg("n"),
        py::arg("target_leak"), py::arg("schedule") = "subsqrt",
        py::arg("xi") = -1.0, py::arg("chi") = 1.25);

    m.def("log_gamma", &log_gamma, py::arg("x"));
    m.def("digamma", &digamma, py::arg("x"));
    m.def("trigamma", &trigamma, py::arg("x"));
}
