// covertlab: command-line front end for the covert-communication scaling
// toolkit. Every subcommand prints JSON (or CSV) to stdout or --out; all
// information quantities are in nats, --bits adds a human-readable
// conversion on stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "covertlab/key_length.hpp"
#include "covertlab/serialization.hpp"
#include "covertlab/simulator.hpp"

namespace {

using covertlab::json;

struct ModelFlags {
    std::string family;
    double sigma = 1.0;
    double lambda = 1.0;
    double scale = 1.0;
    double p = 2.0;
    double r = 1.0;
    double beta = 1.0;
    double lo = 0.0;
    double hi = 1.0;

    CLI::Option* sigma_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* scale_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* r_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* lo_opt = nullptr;
    CLI::Option* hi_opt = nullptr;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--family", flags.family,
                    "noise family: gaussian | exponential | laplace | gg | "
                    "ggamma | uniform")
        ->required();
    flags.sigma_opt = cmd->add_option("--sigma", flags.sigma,
                                      "scale (gaussian, gg, ggamma)");
    flags.lambda_opt =
        cmd->add_option("--lambda", flags.lambda, "rate (exponential)");
    flags.scale_opt = cmd->add_option("--scale", flags.scale, "scale (laplace)");
    flags.p_opt = cmd->add_option("--p", flags.p, "shape (gg)");
    flags.r_opt = cmd->add_option("--r", flags.r, "shape (ggamma)");
    flags.beta_opt = cmd->add_option("--beta", flags.beta, "power (ggamma)");
    flags.lo_opt = cmd->add_option("--lo", flags.lo, "lower end (uniform)");
    flags.hi_opt = cmd->add_option("--hi", flags.hi, "upper end (uniform)");
}

void reject_stray(const ModelFlags& flags,
                  std::initializer_list<CLI::Option*> allowed) {
    const CLI::Option* all[] = {flags.sigma_opt, flags.lambda_opt,
                                flags.scale_opt, flags.p_opt,
                                flags.r_opt,     flags.beta_opt,
                                flags.lo_opt,    flags.hi_opt};
    for (const CLI::Option* opt : all) {
        if (opt == nullptr || opt->count() == 0) continue;
        bool ok = false;
        for (const CLI::Option* good : allowed) ok = ok || (opt == good);
        if (!ok) {
            throw CLI::ValidationError("family '" + flags.family +
                                       "' does not take " + opt->get_name());
        }
    }
}

covertlab::NoiseModel build_model(const ModelFlags& flags) {
    using covertlab::NoiseModel;
    if (flags.family == "gaussian") {
        reject_stray(flags, {flags.sigma_opt});
        return NoiseModel::gaussian(flags.sigma);
    }
    if (flags.family == "exponential") {
        reject_stray(flags, {flags.lambda_opt});
        return NoiseModel::exponential(flags.lambda);
    }
    if (flags.family == "laplace") {
        reject_stray(flags, {flags.scale_opt});
        return NoiseModel::laplace(flags.scale);
    }
    if (flags.family == "gg") {
        reject_stray(flags, {flags.p_opt, flags.sigma_opt});
        return NoiseModel::generalized_gaussian(flags.p, flags.sigma);
    }
    if (flags.family == "ggamma") {
        reject_stray(flags, {flags.r_opt, flags.sigma_opt, flags.beta_opt});
        return NoiseModel::generalized_gamma(flags.r, flags.sigma, flags.beta);
    }
    if (flags.family == "uniform") {
        reject_stray(flags, {flags.lo_opt, flags.hi_opt});
        return NoiseModel::uniform(flags.lo, flags.hi);
    }
    throw CLI::ValidationError("unknown family '" + flags.family + "'");
}

struct OutputFlags {
    std::string format = "json";
    std::string out;
    bool bits = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags,
                      const std::string& default_format = "json") {
    flags.format = default_format;
    cmd->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", flags.out, "write output to FILE instead of stdout");
    cmd->add_flag("--bits", flags.bits,
                  "also print nat-valued fields converted to bits on stderr");
}

// Keys holding nat-valued quantities, for the --bits display.
bool is_nat_field(const std::string& key) {
    static const char* kNatKeys[] = {
        "L_upper",          "L_exact",        "kl",
        "kl_taylor",        "entropy",        "entropy_base",
        "entropy_gap",      "entropy_gap_taylor", "n_times_divergence",
        "log_num_messages", "threshold",      "info_density_mean",
        "analytic_mutual_info", "covert_divergence", "delta_budget",
        "key_nats",         "msg_nats",       "psi_value",
        "resolvability_bound", "delta"};
    for (const char* k : kNatKeys) {
        if (key == k) return true;
    }
    return false;
}

std::string csv_flatten(const json& object) {
    std::string header, row;
    bool first = true;
    for (const auto& [key, value] : object.items()) {
        if (value.is_object() || value.is_array() || value.is_null()) continue;
        if (!first) {
            header += ',';
            row += ',';
        }
        first = false;
        header += key;
        if (value.is_string()) {
            row += value.get<std::string>();
        } else {
            row += value.dump();
        }
    }
    return header + "\n" + row + "\n";
}

void emit(const json& payload, const OutputFlags& flags) {
    std::string text;
    if (flags.format == "json") {
        text = payload.dump(2) + "\n";
    } else if (payload.contains("csv")) {
        text = payload["csv"].get<std::string>();
    } else {
        text = csv_flatten(payload);
    }
    if (flags.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(flags.out, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot open output file '" + flags.out +
                                     "'");
        }
        file << text;
    }
    if (flags.bits) {
        constexpr double kLn2 = 0.6931471805599453;
        for (const auto& [key, value] : payload.items()) {
            if (value.is_number() && is_nat_field(key)) {
                std::fprintf(stderr, "%s = %.6g bits\n", key.c_str(),
                             value.get<double>() / kLn2);
            }
        }
    }
}

covertlab::RunConfig make_config(const std::string& command,
                                 const json& model,
                                 json params,
                                 const OutputFlags& out,
                                 std::uint64_t seed) {
    covertlab::RunConfig config;
    config.command = command;
    config.model = model;
    config.params = std::move(params);
    config.format = out.format;
    config.seed = seed;
    // Round-trip guard: what we emit must parse back to itself.
    (void)covertlab::run_config_from_json(covertlab::to_json(config));
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covert-communication scaling toolkit"};
    app.require_subcommand(1);

    // ---- scaling ----
    ModelFlags scaling_model;
    OutputFlags scaling_out;
    auto* scaling_cmd = app.add_subcommand(
        "scaling", "square-root scaling constant for a noise model");
    add_model_flags(scaling_cmd, scaling_model);
    add_output_flags(scaling_cmd, scaling_out);

    // ---- tilt ----
    ModelFlags tilt_model;
    OutputFlags tilt_out;
    double tilt_gamma = -1.0;
    double tilt_delta = 0.0;
    long tilt_n = 0;
    auto* tilt_cmd = app.add_subcommand(
        "tilt", "tilted-distribution diagnostics at a tilt or a budget");
    add_model_flags(tilt_cmd, tilt_model);
    auto* tilt_gamma_opt =
        tilt_cmd->add_option("--gamma", tilt_gamma, "tilt parameter in [0,1)");
    auto* tilt_delta_opt =
        tilt_cmd->add_option("--delta", tilt_delta, "covertness budget (nats)");
    auto* tilt_n_opt = tilt_cmd->add_option("--n", tilt_n, "blocklength");
    tilt_delta_opt->needs(tilt_n_opt);
    tilt_n_opt->needs(tilt_delta_opt);
    tilt_gamma_opt->excludes(tilt_delta_opt);
    add_output_flags(tilt_cmd, tilt_out);

    // ---- solve-gamma ----
    ModelFlags solve_model;
    OutputFlags solve_out;
    double solve_delta = 1.0;
    long solve_n = 0;
    double solve_chi = 1.25;
    std::string solve_mode = "converse";
    auto* solve_cmd = app.add_subcommand(
        "solve-gamma", "tilt parameter from a covertness budget");
    add_model_flags(solve_cmd, solve_model);
    solve_cmd->add_option("--delta", solve_delta, "covertness budget (nats)")
        ->required();
    solve_cmd->add_option("--n", solve_n, "blocklength")->required();
    solve_cmd->add_option("--mode", solve_mode, "converse | achievability")
        ->check(CLI::IsMember({"converse", "achievability"}))
        ->capture_default_str();
    solve_cmd->add_option("--chi", solve_chi, "achievability exponent in (1,1.5)")
        ->capture_default_str();
    add_output_flags(solve_cmd, solve_out);

    // ---- synth-input ----
    ModelFlags synth_model;
    OutputFlags synth_out;
    double synth_gamma = 0.1;
    auto* synth_cmd = app.add_subcommand(
        "synth-input", "input law whose sum with the noise is the tilted law");
    add_model_flags(synth_cmd, synth_model);
    synth_cmd->add_option("--gamma", synth_gamma, "tilt parameter")->required();
    add_output_flags(synth_cmd, synth_out);

    // ---- simulate ----
    ModelFlags sim_model;
    OutputFlags sim_out;
    double sim_delta = 1.0, sim_rate = 0.7, sim_chi = 1.25;
    long sim_n = 1024, sim_trials = 2000;
    std::uint64_t sim_seed = 0;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "random-coding achievability experiment at one blocklength");
    add_model_flags(sim_cmd, sim_model);
    sim_cmd->add_option("--delta", sim_delta, "covertness budget (nats)")
        ->capture_default_str();
    sim_cmd->add_option("--n", sim_n, "blocklength")->capture_default_str();
    sim_cmd->add_option("--rate-fraction", sim_rate,
                        "fraction of the optimal message length")
        ->capture_default_str();
    sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials")
        ->capture_default_str();
    sim_cmd->add_option("--chi", sim_chi, "achievability exponent")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "PRNG seed")->capture_default_str();
    add_output_flags(sim_cmd, sim_out);

    // ---- sweep ----
    ModelFlags sweep_model;
    OutputFlags sweep_out;
    double sweep_delta = 1.0, sweep_rate = 0.7, sweep_chi = 1.25;
    std::vector<long> sweep_ns;
    long sweep_trials = 2000;
    std::uint64_t sweep_seed = 0;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "experiment ladder over blocklengths, CSV by default");
    add_model_flags(sweep_cmd, sweep_model);
    sweep_cmd->add_option("--delta", sweep_delta, "covertness budget (nats)")
        ->capture_default_str();
    sweep_cmd->add_option("--n", sweep_ns, "blocklength ladder (repeatable)")
        ->required()
        ->expected(-1);
    sweep_cmd->add_option("--rate-fraction", sweep_rate,
                          "fraction of the optimal message length")
        ->capture_default_str();
    sweep_cmd->add_option("--trials", sweep_trials, "Monte Carlo trials")
        ->capture_default_str();
    sweep_cmd->add_option("--chi", sweep_chi, "achievability exponent")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_seed, "PRNG seed")
        ->capture_default_str();
    add_output_flags(sweep_cmd, sweep_out, "csv");

    // ---- keylen ----
    ModelFlags key_model;
    OutputFlags key_out;
    double key_delta = 1.0, key_target = 1e-3, key_xi = -1.0, key_chi = 1.25;
    double key_rho = -1.0;
    std::vector<long> key_ns{10000};
    std::string key_schedule = "subsqrt";
    auto* key_cmd = app.add_subcommand(
        "keylen", "sufficient key length from the resolvability bound");
    add_model_flags(key_cmd, key_model);
    key_cmd->add_option("--delta", key_delta, "covertness budget (nats)")
        ->capture_default_str();
    key_cmd->add_option("--n", key_ns, "blocklength ladder (repeatable)")
        ->expected(-1)
        ->capture_default_str();
    key_cmd->add_option("--target-leak", key_target,
                        "resolvability target (nats)")
        ->capture_default_str();
    key_cmd->add_option("--schedule", key_schedule, "subsqrt | general")
        ->check(CLI::IsMember({"subsqrt", "general"}))
        ->capture_default_str();
    key_cmd->add_option("--rho", key_rho,
                        "fix the cumulant order instead of searching");
    key_cmd->add_option("--xi", key_xi,
                        "message-length slack (nats); default n^0.4");
    key_cmd->add_option("--chi", key_chi, "achievability exponent")
        ->capture_default_str();
    add_output_flags(key_cmd, key_out);

    // ---- check-integrability ----
    ModelFlags integ_model;
    OutputFlags integ_out;
    double integ_zeta = 0.5;
    auto* integ_cmd = app.add_subcommand(
        "check-integrability", "finiteness of the defining integrals");
    add_model_flags(integ_cmd, integ_model);
    integ_cmd->add_option("--zeta", integ_zeta, "exponent in (0,1)")
        ->capture_default_str();
    add_output_flags(integ_cmd, integ_out);

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace covertlab;
        if (scaling_cmd->parsed()) {
            const NoiseModel model = build_model(scaling_model);
            const json model_json = model_to_json(model);
            make_config("scaling", model_json, json::object(), scaling_out, 0);
            json out = to_json(scaling_constant(model));
            out["model"] = model_json;
            emit(out, scaling_out);
        } else if (tilt_cmd->parsed()) {
            const NoiseModel model = build_model(tilt_model);
            const json model_json = model_to_json(model);
            double gamma = tilt_gamma;
            json params = json::object();
            if (tilt_delta_opt->count() > 0) {
                gamma = solve_gamma_converse(model, tilt_delta, tilt_n);
                params["delta"] = tilt_delta;
                params["n"] = tilt_n;
            } else if (tilt_gamma_opt->count() == 0) {
                throw CLI::ValidationError(
                    "tilt needs --gamma or --delta with --n");
            }
            params["gamma"] = gamma;
            make_config("tilt", model_json, params, tilt_out, 0);
            const TiltedNoise tilted(model, gamma);
            json out{{"gamma", gamma},
                     {"alpha", tilted.alpha()},
                     {"kl", tilted.kl_to_base()},
                     {"kl_taylor", kl_taylor(model, gamma)},
                     {"entropy", tilted.entropy()},
                     {"entropy_base", model.differential_entropy()},
                     {"entropy_gap",
                      tilted.entropy() - model.differential_entropy()},
                     {"entropy_gap_taylor", entropy_gap_taylor(model, gamma)},
                     {"model", model_json}};
            if (tilt_delta_opt->count() > 0) {
                out["delta"] = tilt_delta;
                out["n"] = tilt_n;
            }
            emit(out, tilt_out);
        } else if (solve_cmd->parsed()) {
            const NoiseModel model = build_model(solve_model);
            const json model_json = model_to_json(model);
            make_config("solve-gamma", model_json,
                        json{{"delta", solve_delta},
                             {"n", solve_n},
                             {"mode", solve_mode},
                             {"chi", solve_chi}},
                        solve_out, 0);
            double gamma;
            if (solve_mode == "converse") {
                gamma = solve_gamma_converse(model, solve_delta, solve_n);
            } else {
                gamma = gamma_achievability(model, solve_delta, solve_n,
                                            solve_chi);
            }
            const double total = static_cast<double>(solve_n) *
                                 TiltedNoise(model, gamma).kl_to_base();
            json out{{"delta", solve_delta}, {"n", solve_n},
                     {"mode", solve_mode},   {"gamma", gamma},
                     {"n_times_divergence", total}, {"model", model_json}};
            if (solve_mode == "achievability") out["chi"] = solve_chi;
            emit(out, solve_out);
        } else if (synth_cmd->parsed()) {
            const NoiseModel model = build_model(synth_model);
            const json model_json = model_to_json(model);
            make_config("synth-input", model_json, json{{"gamma", synth_gamma}},
                        synth_out, 0);
            const InputLaw law = synthesize_input(model, synth_gamma);
            const auto grid = default_t_grid();
            json out = to_json(law);
            out["charfn_residual"] =
                charfn_factorization_residual(model, law, synth_gamma, grid);
            out["model"] = model_json;
            emit(out, synth_out);
        } else if (sim_cmd->parsed()) {
            const NoiseModel model = build_model(sim_model);
            const json model_json = model_to_json(model);
            make_config("simulate", model_json,
                        json{{"delta", sim_delta},
                             {"n", sim_n},
                             {"rate_fraction", sim_rate},
                             {"trials", sim_trials},
                             {"chi", sim_chi}},
                        sim_out, sim_seed);
            ExperimentConfig config{model, sim_delta, sim_n, sim_rate,
                                    sim_trials, sim_chi, sim_seed};
            const SimulationReport report = run_experiment(config);
            if (sim_out.format == "csv") {
                json out{{"csv", reports_to_csv({&report, 1})}};
                emit(out, sim_out);
            } else {
                json out = to_json(report);
                out["model"] = model_json;
                emit(out, sim_out);
            }
        } else if (sweep_cmd->parsed()) {
            const NoiseModel model = build_model(sweep_model);
            const json model_json = model_to_json(model);
            make_config("sweep", model_json,
                        json{{"delta", sweep_delta},
                             {"n", sweep_ns},
                             {"rate_fraction", sweep_rate},
                             {"trials", sweep_trials},
                             {"chi", sweep_chi}},
                        sweep_out, sweep_seed);
            ExperimentConfig config{model,        sweep_delta, 0,
                                    sweep_rate,   sweep_trials, sweep_chi,
                                    sweep_seed};
            const auto reports = sweep(config, sweep_ns);
            if (sweep_out.format == "csv") {
                emit(json{{"csv", reports_to_csv(reports)}}, sweep_out);
            } else {
                json out = json::array();
                for (const auto& r : reports) out.push_back(to_json(r));
                if (sweep_out.out.empty()) {
                    std::cout << out.dump(2) << "\n";
                } else {
                    std::ofstream file(sweep_out.out, std::ios::binary);
                    file << out.dump(2) << "\n";
                }
            }
        } else if (key_cmd->parsed()) {
            const NoiseModel model = build_model(key_model);
            const json model_json = model_to_json(model);
            const KeySchedule schedule = key_schedule == "subsqrt"
                                             ? KeySchedule::sub_sqrt
                                             : KeySchedule::general_o_n;
            make_config("keylen", model_json,
                        json{{"delta", key_delta},
                             {"n", key_ns},
                             {"target_leak", key_target},
                             {"schedule", key_schedule},
                             {"xi", key_xi},
                             {"chi", key_chi}},
                        key_out, 0);
            const auto report_at = [&](long n) {
                KeyLengthReport report;
                if (key_rho > 0.0) {
                    // Fixed-rho evaluation instead of the grid search.
                    const double nd = static_cast<double>(n);
                    const double xi = key_xi < 0.0 ? std::pow(nd, 0.4) : key_xi;
                    const double msg =
                        std::max(0.0, std::sqrt(key_delta * nd) - xi);
                    const double gamma =
                        gamma_achievability(model, key_delta, n, key_chi);
                    report.rho = key_rho;
                    report.psi_value =
                        schedule == KeySchedule::sub_sqrt
                            ? psi(model, gamma, key_rho)
                            : psi_general_upper(model, gamma, key_rho);
                    const double rhs = std::expm1(key_rho * key_target);
                    report.key_nats = std::max(
                        0.0,
                        (nd * report.psi_value - std::log(rhs)) / key_rho - msg);
                    report.msg_nats = msg;
                    report.n = n;
                    report.feasible = true;
                    report.resolvability_bound = resolvability_bound(
                        report.psi_value, report.key_nats, msg, n, key_rho);
                } else {
                    report = sufficient_key_length(model, key_delta, n,
                                                   key_target, schedule, key_xi,
                                                   key_chi);
                }
                return report;
            };
            if (key_out.format == "csv") {
                // Sweep-plot rows over the blocklength ladder.
                std::string csv = "n,rho,key_nats,bound\n";
                char line[256];
                for (long n : key_ns) {
                    const KeyLengthReport report = report_at(n);
                    std::snprintf(line, sizeof(line), "%ld,%.17g,%.17g,%.17g\n",
                                  report.n, report.rho, report.key_nats,
                                  report.resolvability_bound);
                    csv += line;
                }
                emit(json{{"csv", csv}}, key_out);
            } else if (key_ns.size() == 1) {
                json out = to_json(report_at(key_ns.front()));
                out["schedule"] = key_schedule_name(schedule);
                out["model"] = model_json;
                emit(out, key_out);
            } else {
                json out = json::array();
                for (long n : key_ns) {
                    json item = to_json(report_at(n));
                    item["schedule"] = key_schedule_name(schedule);
                    item["model"] = model_json;
                    out.push_back(item);
                }
                if (key_out.out.empty()) {
                    std::cout << out.dump(2) << "\n";
                } else {
                    std::ofstream file(key_out.out, std::ios::binary);
                    file << out.dump(2) << "\n";
                }
            }
        } else if (integ_cmd->parsed()) {
            const NoiseModel model = build_model(integ_model);
            const json model_json = model_to_json(model);
            make_config("check-integrability", model_json,
                        json{{"zeta", integ_zeta}}, integ_out, 0);
            json out = to_json(integrability_check(model, integ_zeta));
            out["model"] = model_json;
            emit(out, integ_out);
        }
    } catch (const std::exception& error) {
        std::cerr << "covertlab: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
