#include "covertlab/serialization.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace covertlab {

namespace {

double require_number(const json& params, const std::string& key) {
    if (!params.contains(key) || !params[key].is_number()) {
        throw std::invalid_argument("model params: missing numeric field '" +
                                    key + "'");
    }
    return params[key].get<double>();
}

void reject_unknown(const json& object, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw std::invalid_argument(where + ": unknown field '" + key + "'");
        }
    }
}

}  // namespace

json model_to_json(const NoiseModel& model) {
    json params = json::object();
    switch (model.family()) {
        case Family::gaussian:
            params["sigma"] = std::get<GaussianParams>(model.params()).sigma;
            break;
        case Family::exponential:
            params["lambda"] = std::get<ExponentialParams>(model.params()).lambda;
            break;
        case Family::laplace:
            params["scale"] = std::get<LaplaceParams>(model.params()).scale;
            break;
        case Family::generalized_gaussian: {
            const auto& p = std::get<GeneralizedGaussianParams>(model.params());
            params["p"] = p.p;
            params["sigma"] = p.sigma;
            break;
        }
        case Family::generalized_gamma: {
            const auto& p = std::get<GeneralizedGammaParams>(model.params());
            params["r"] = p.r;
            params["sigma"] = p.sigma;
            params["beta"] = p.beta;
            break;
        }
        case Family::uniform: {
            const auto& p = std::get<UniformParams>(model.params());
            params["lo"] = p.lo;
            params["hi"] = p.hi;
            break;
        }
    }
    return json{{"family", family_name(model.family())}, {"params", params}};
}

NoiseModel model_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("model: expected a JSON object");
    }
    reject_unknown(j, {"family", "params"}, "model");
    if (!j.contains("family") || !j["family"].is_string()) {
        throw std::invalid_argument("model: missing string field 'family'");
    }
    const json params = j.value("params", json::object());
    const std::string family = j["family"].get<std::string>();
    if (family == "gaussian") {
        reject_unknown(params, {"sigma"}, "gaussian params");
        return NoiseModel::gaussian(require_number(params, "sigma"));
    }
    if (family == "exponential") {
        reject_unknown(params, {"lambda"}, "exponential params");
        return NoiseModel::exponential(require_number(params, "lambda"));
    }
    if (family == "laplace") {
        reject_unknown(params, {"scale"}, "laplace params");
        return NoiseModel::laplace(require_number(params, "scale"));
    }
    if (family == "gg") {
        reject_unknown(params, {"p", "sigma"}, "gg params");
        return NoiseModel::generalized_gaussian(require_number(params, "p"),
                                                require_number(params, "sigma"));
    }
    if (family == "ggamma") {
        reject_unknown(params, {"r", "sigma", "beta"}, "ggamma params");
        return NoiseModel::generalized_gamma(require_number(params, "r"),
                                             require_number(params, "sigma"),
                                             require_number(params, "beta"));
    }
    if (family == "uniform") {
        reject_unknown(params, {"lo", "hi"}, "uniform params");
        return NoiseModel::uniform(require_number(params, "lo"),
                                   require_number(params, "hi"));
    }
    throw std::invalid_argument("model: unknown family '" + family + "'");
}

json to_json(const ScalingResult& result) {
    json j{{"L_upper", result.L_upper},
           {"basis", exactness_basis_name(result.basis)}};
    if (result.L_exact.has_value()) j["L_exact"] = *result.L_exact;
    return j;
}

json to_json(const IntegrabilityReport& report) {
    json j{{"zeta", report.zeta},
           {"integral_plain_log4", report.integral_plain_log4},
           {"integral_zeta", report.integral_zeta},
           {"integral_zeta_log4", report.integral_zeta_log4},
           {"all_finite", report.all_finite}};
    if (!report.divergent_term.empty()) j["divergent_term"] = report.divergent_term;
    return j;
}

json to_json(const InputLaw& law) {
    json j{{"gamma", law.gamma}};
    if (const auto* g = std::get_if<GaussianInput>(&law.dist)) {
        j["kind"] = "gaussian";
        j["variance"] = g->variance;
    } else {
        const auto& m = std::get<MixturePointMassExponential>(law.dist);
        j["kind"] = "mixture_point_mass_exponential";
        j["mass_at_zero"] = m.mass_at_zero;
        j["rate"] = m.rate;
    }
    return j;
}

json to_json(const SimulationReport& report) {
    return json{{"n", report.n},
                {"gamma_n", report.gamma_n},
                {"log_num_messages", report.log_num_messages},
                {"threshold", report.threshold},
                {"error_rate", report.error_rate},
                {"error_ci_lo", report.error_ci_lo},
                {"error_ci_hi", report.error_ci_hi},
                {"info_density_mean", report.info_density_mean},
                {"info_density_var", report.info_density_var},
                {"analytic_mutual_info", report.analytic_mutual_info},
                {"covert_divergence", report.covert_divergence},
                {"delta_budget", report.delta_budget},
                {"feinstein_envelope", report.feinstein_envelope},
                {"trials", report.trials},
                {"seed", report.seed}};
}

json to_json(const KeyLengthReport& report) {
    json j{{"rho", report.rho},
           {"psi_value", report.psi_value},
           {"resolvability_bound", report.resolvability_bound},
           {"key_nats", report.key_nats},
           {"msg_nats", report.msg_nats},
           {"n", report.n},
           {"feasible", report.feasible}};
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

json to_json(const RunConfig& config) {
    return json{{"command", config.command},
                {"model", config.model},
                {"params", config.params},
                {"format", config.format},
                {"seed", config.seed}};
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("run config: expected a JSON object");
    }
    reject_unknown(j, {"command", "model", "params", "format", "seed"},
                   "run config");
    RunConfig config;
    config.command = j.at("command").get<std::string>();
    config.model = j.value("model", json());
    if (!config.model.is_null()) {
        model_from_json(config.model);  // validates family and params
    }
    config.params = j.value("params", json::object());
    config.format = j.value("format", std::string("json"));
    if (config.format != "json" && config.format != "csv") {
        throw std::invalid_argument("run config: format must be json or csv");
    }
    config.seed = j.value("seed", std::uint64_t{0});
    return config;
}

}  // namespace covertlab
