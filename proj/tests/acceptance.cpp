// Acceptance suite: runs every toolkit-level criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "covertlab/input_synthesis.hpp"
#include "covertlab/key_length.hpp"
#include "covertlab/scaling.hpp"
#include "covertlab/simulator.hpp"

using namespace covertlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

std::string fmt(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

double quadrature_log_pdf_variance(const NoiseModel& model) {
    const auto moment = [&](int power) {
        auto q = integrate(
            [&](double z) {
                const double lp = model.log_pdf(z);
                if (lp == -kInf) return 0.0;
                const double w = std::exp(lp);
                if (w == 0.0) return 0.0;
                double result = w;
                for (int i = 0; i < power; ++i) result *= lp;
                return result;
            },
            model.support(), 1e-11, 1e-9);
        return q.value;
    };
    const double m1 = moment(1);
    return moment(2) - m1 * m1;
}

// --- criterion bodies ---------------------------------------------------

Check exponential_scaling() {
    Check check;
    for (double lambda : {0.5, 1.0, 3.0}) {
        const auto result = scaling_constant(NoiseModel::exponential(lambda));
        check.require(result.L_exact.has_value(), "missing L_exact");
        check.require(std::abs(*result.L_exact - std::sqrt(2.0)) <= 1e-9,
                      "closed form off sqrt(2): " + fmt(*result.L_exact));
        const double via_quadrature = std::sqrt(
            2.0 * quadrature_log_pdf_variance(NoiseModel::exponential(lambda)));
        check.require(std::abs(*result.L_exact - via_quadrature) <= 1e-6,
                      "quadrature route disagrees: " + fmt(via_quadrature));
    }
    return check;
}

Check gaussian_and_gg_scaling() {
    Check check;
    const auto gauss = scaling_constant(NoiseModel::gaussian(1.0));
    check.require(gauss.L_exact.has_value() &&
                      std::abs(*gauss.L_exact - 1.0) <= 1e-6,
                  "gaussian L_exact != 1");
    for (double p : {0.5, 1.0, 4.0}) {
        const double formula = gg_scaling_upper(p);
        check.require(std::abs(formula - std::sqrt(2.0 / p)) <= 1e-12,
                      "gg formula mismatch at p=" + fmt(p));
        const double via_quadrature = std::sqrt(
            2.0 * quadrature_log_pdf_variance(
                      NoiseModel::generalized_gaussian(p, 1.0)));
        check.require(std::abs(formula - via_quadrature) <= 1e-6,
                      "gg quadrature off at p=" + fmt(p) + ": " +
                          fmt(via_quadrature));
    }
    return check;
}

Check ggamma_scaling_grid() {
    Check check;
    for (double r : {0.5, 1.0, 2.0}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const double formula = ggamma_scaling_upper(r, beta);
            const double via_quadrature = std::sqrt(
                2.0 * quadrature_log_pdf_variance(
                          NoiseModel::generalized_gamma(r, 1.0, beta)));
            check.require(std::abs(formula - via_quadrature) <= 1e-6,
                          "grid point (r=" + fmt(r) + ", beta=" + fmt(beta) +
                              "): formula " + fmt(formula) + " vs quadrature " +
                              fmt(via_quadrature));
        }
    }
    for (double beta : {0.5, 1.0, 2.0}) {
        check.require(std::abs(ggamma_scaling_upper(1.0 / beta, beta) -
                               std::sqrt(2.0 / beta)) <= 1e-9,
                      "reduction r = 1/beta failed at beta=" + fmt(beta));
    }
    return check;
}

Check ggamma_moment_suite() {
    Check check;
    const double points[3][3] = {{1, 1, 1}, {2, 1, 1}, {3, 2, 1.5}};
    RandomStream rng(4242);
    for (const auto& point : points) {
        const double r = point[0], sigma = point[1], beta = point[2];
        const auto closed = ggamma_moments(r, sigma, beta);
        const NoiseModel model = NoiseModel::generalized_gamma(r, sigma, beta);

        // Monte Carlo within 4 standard errors, all five moments from one
        // sample set.
        constexpr std::size_t kDraws = 1000000;
        double s[5] = {0, 0, 0, 0, 0}, ss[5] = {0, 0, 0, 0, 0};
        for (std::size_t i = 0; i < kDraws; ++i) {
            const double z = model.sample_one(rng);
            const double lz = std::log(z);
            const double zb = std::pow(z / sigma, beta);
            const double vals[5] = {lz, lz * lz, zb, zb * zb, lz * zb};
            for (int k = 0; k < 5; ++k) {
                s[k] += vals[k];
                ss[k] += vals[k] * vals[k];
            }
        }
        const double expected[5] = {closed.e_ln_z, closed.e_ln_z_sq,
                                    closed.e_zb, closed.e_z2b,
                                    closed.e_lnz_zb};
        const char* names[5] = {"E[ln Z]", "E[ln^2 Z]", "E[Z^b]", "E[Z^2b]",
                                "E[lnZ Z^b]"};
        for (int k = 0; k < 5; ++k) {
            const double mean = s[k] / kDraws;
            const double se = std::sqrt(
                std::max(ss[k] / kDraws - mean * mean, 0.0) / kDraws);
            check.require(std::abs(mean - expected[k]) <= 4.0 * se,
                          std::string(names[k]) + " outside 4 SE at r=" +
                              fmt(r) + ", beta=" + fmt(beta));
        }

        // Quadrature within 1e-6.
        const auto weighted = [&](const std::function<double(double)>& g) {
            return integrate(
                       [&](double z) {
                           const double w = model.pdf(z);
                           return w == 0.0 ? 0.0 : w * g(z);
                       },
                       model.support(), 1e-11, 1e-9)
                .value;
        };
        const double quads[5] = {
            weighted([](double z) { return std::log(z); }),
            weighted([](double z) { return std::log(z) * std::log(z); }),
            weighted([&](double z) { return std::pow(z / sigma, beta); }),
            weighted([&](double z) { return std::pow(z / sigma, 2.0 * beta); }),
            weighted([&](double z) {
                return std::log(z) * std::pow(z / sigma, beta);
            })};
        for (int k = 0; k < 5; ++k) {
            check.require(std::abs(quads[k] - expected[k]) <= 1e-6,
                          std::string(names[k]) + " quadrature off at r=" +
                              fmt(r) + ": " + fmt(quads[k]) + " vs " +
                              fmt(expected[k]));
        }
    }
    return check;
}

Check tilt_identities() {
    Check check;
    for (const auto& model :
         {NoiseModel::exponential(1.0), NoiseModel::gaussian(1.0)}) {
        for (double gamma : {0.01, 0.05, 0.1}) {
            const TiltedNoise tilted(model, gamma);
            const double kl_direct = tilted.kl_quadrature();
            const double entropy_direct = tilted.entropy_quadrature();
            check.require(std::abs(tilted.kl_identity() - kl_direct) <= 1e-8,
                          "divergence identity off at gamma=" + fmt(gamma));
            check.require(
                std::abs(tilted.entropy_identity() - entropy_direct) <= 1e-8,
                "entropy identity off at gamma=" + fmt(gamma));
            check.require(std::abs(tilted.kl_to_base() - kl_direct) <= 1e-8,
                          "closed divergence off at gamma=" + fmt(gamma));
            check.require(std::abs(tilted.entropy() - entropy_direct) <= 1e-8,
                          "closed entropy off at gamma=" + fmt(gamma));
        }
        const auto ratio_error = [&](double gamma) {
            return std::abs(TiltedNoise(model, gamma).kl_to_base() /
                                kl_taylor(model, gamma) - 1.0);
        };
        check.require(ratio_error(1e-3) <= 0.1 * ratio_error(1e-2),
                      "taylor ratio error does not vanish to first order");
    }
    return check;
}

Check converse_solver() {
    Check check;
    for (const auto& model :
         {NoiseModel::exponential(1.0), NoiseModel::gaussian(1.0)}) {
        for (double delta : {1.0, 0.1}) {
            for (long n : {1000L, 100000L}) {
                const double gamma = solve_gamma_converse(model, delta, n);
                const double residual =
                    std::abs(static_cast<double>(n) *
                                 TiltedNoise(model, gamma).kl_to_base() -
                             delta);
                check.require(residual <= 1e-9 * delta,
                              "residual " + fmt(residual) + " at delta=" +
                                  fmt(delta) + ", n=" + std::to_string(n));
            }
        }
    }
    return check;
}

Check input_synthesis_checks() {
    Check check;
    const auto grid = default_t_grid();
    int stream = 0;
    for (double gamma : {0.05, 0.2}) {
        for (const auto& model :
             {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
            const InputLaw law = synthesize_input(model, gamma);
            const double residual =
                charfn_factorization_residual(model, law, gamma, grid);
            check.require(residual <= 1e-8,
                          "charfn residual " + fmt(residual) + " for " +
                              family_name(model.family()) + " at gamma=" +
                              fmt(gamma));

            constexpr std::size_t kDraws = 1000000;
            const TiltedNoise tilted(model, gamma);
            RandomStream rng(8800 + stream++);
            std::vector<double> sums(kDraws);
            for (auto& value : sums) {
                value = sample_input_one(law, rng) + model.sample_one(rng);
            }
            std::sort(sums.begin(), sums.end());
            double stat = 0.0;
            for (std::size_t i = 0; i < kDraws; ++i) {
                const double f = tilted.cdf(sums[i]);
                stat = std::max(stat, std::abs((i + 1.0) / kDraws - f));
                stat = std::max(stat, std::abs(f - static_cast<double>(i) /
                                                       kDraws));
            }
            const double threshold = 1.9494746035204052 / std::sqrt(1e6);
            check.require(stat < threshold,
                          "KS statistic " + fmt(stat) + " for " +
                              family_name(model.family()) + " at gamma=" +
                              fmt(gamma));
        }
    }
    return check;
}

Check simulator_properties() {
    Check check;
    ExperimentConfig config{NoiseModel::exponential(1.0)};
    config.delta = 1.0;
    config.rate_fraction = 0.7;
    config.trials = 2000;
    config.seed = 31337;
    config.threads = 1;
    const std::vector<long> ladder{256, 1024, 4096};
    const auto reports = sweep(config, ladder);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& report = reports[i];
        const double expected =
            report.analytic_mutual_info /
            std::sqrt(static_cast<double>(report.n));
        const double se = std::sqrt(report.info_density_var /
                                    static_cast<double>(report.trials));
        check.require(std::abs(report.info_density_mean - expected) <=
                          4.0 * se,
                      "(a) info-density mean off at n=" +
                          std::to_string(report.n));
        check.require(report.covert_divergence < report.delta_budget,
                      "(d) covertness violated at n=" +
                          std::to_string(report.n));
        if (i > 0) {
            check.require(
                report.info_density_var < reports[i - 1].info_density_var,
                "(b) variance not decreasing at n=" +
                    std::to_string(report.n));
            check.require(report.error_rate <= reports[i - 1].error_rate,
                          "(c) error rate increased at n=" +
                              std::to_string(report.n));
        }
    }
    return check;
}

Check key_length_suite() {
    Check check;
    for (const auto& model :
         {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
        for (double gamma : {0.05, 0.1}) {
            for (double rho : {0.25, 0.5}) {
                const double closed = psi(model, gamma, rho);
                const double numeric = psi_quadrature(model, gamma, rho);
                check.require(std::abs(closed - numeric) <= 1e-5,
                              "psi mismatch " + fmt(closed) + " vs " +
                                  fmt(numeric) + " (" +
                                  family_name(model.family()) + ", gamma=" +
                                  fmt(gamma) + ", rho=" + fmt(rho) + ")");
            }
        }
    }
    for (double rho : {0.25, 0.5}) {
        const auto ratio_error = [&](double gamma) {
            const double lead = gamma * rho / (1.0 - rho);
            return std::abs(psi(NoiseModel::exponential(1.0), gamma, rho) /
                                lead - 1.0);
        };
        check.require(ratio_error(1e-3) <= 0.5 * ratio_error(1e-2),
                      "exponential leading-order error does not halve");
    }
    for (const auto& model :
         {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
        const auto small = sufficient_key_length(model, 1.0, 10000, 1e-3,
                                                 KeySchedule::sub_sqrt);
        const auto large = sufficient_key_length(model, 1.0, 1000000, 1e-3,
                                                 KeySchedule::sub_sqrt);
        check.require(small.feasible && large.feasible,
                      "key search infeasible");
        check.require(small.key_nats / 100.0 > large.key_nats / 1000.0,
                      "key_nats/sqrt(n) not decreasing for " +
                          family_name(model.family()));
    }
    return check;
}

Check degenerate_uniform() {
    Check check;
    const auto result = scaling_constant(NoiseModel::uniform(0.0, 1.0));
    check.require(result.L_upper == 0.0 &&
                      result.basis == ExactnessBasis::degenerate_zero,
                  "uniform scaling not degenerate-zero");
    bool threw = false;
    std::string message;
    try {
        solve_gamma_converse(NoiseModel::uniform(0.0, 1.0), 1.0, 100);
    } catch (const std::domain_error& error) {
        threw = true;
        message = error.what();
    }
    check.require(threw, "solve_gamma accepted uniform noise");
    check.require(
        message.find("covert communication is not possible") !=
            std::string::npos,
        "diagnostic missing: " + message);
    return check;
}

Check sweep_reproducibility() {
    Check check;
    const std::string base = std::string(COVERTLAB_CLI_PATH) +
                             " sweep --family exponential --lambda 1"
                             " --n 256 1024 --trials 500 --seed 424242 --out ";
    const std::string file_a = "/tmp/covertlab_accept_sweep_a.csv";
    const std::string file_b = "/tmp/covertlab_accept_sweep_b.csv";
    check.require(std::system((base + file_a).c_str()) == 0,
                  "first sweep run failed");
    check.require(std::system((base + file_b).c_str()) == 0,
                  "second sweep run failed");
    std::ifstream a(file_a, std::ios::binary), b(file_b, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    check.require(!sa.str().empty(), "sweep produced no output");
    check.require(sa.str() == sb.str(), "sweep CSV bytes differ across runs");
    std::remove(file_a.c_str());
    std::remove(file_b.c_str());
    return check;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        double time_limit_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {"exponential scaling constant", 1.0, exponential_scaling},
        {"gaussian and generalized-gaussian scaling", 5.0,
         gaussian_and_gg_scaling},
        {"generalized-gamma scaling grid", 10.0, ggamma_scaling_grid},
        {"generalized-gamma moment suite", 20.0, ggamma_moment_suite},
        {"tilted-distribution identities", 10.0, tilt_identities},
        {"converse tilt solver", 5.0, converse_solver},
        {"input synthesis", 30.0, input_synthesis_checks},
        {"achievability simulator", 300.0, simulator_properties},
        {"key-length bounds", 60.0, key_length_suite},
        {"degenerate uniform noise", 1.0, degenerate_uniform},
        {"sweep reproducibility", 300.0, sweep_reproducibility},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Check check;
        try {
            check = criteria[i].run();
        } catch (const std::exception& error) {
            check.ok = false;
            check.detail = std::string("exception: ") + error.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (elapsed > criteria[i].time_limit_s) {
            check.ok = false;
            check.detail = "runtime " + fmt(elapsed) + "s over the " +
                           fmt(criteria[i].time_limit_s) + "s limit";
        }
        std::printf("[%2zu] %-46s %s  %7.2fs\n", i + 1, criteria[i].label,
                    check.ok ? "PASS" : "FAIL", elapsed);
        if (!check.ok) {
            std::printf("     %s\n", check.detail.c_str());
            ++failures;
        }
    }
    std::printf("acceptance: %zu/%zu criteria passed\n",
                criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
