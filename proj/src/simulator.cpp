#include "covertlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace covertlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + kGolden * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int worker_count(int requested) {
    int count = requested;
    if (count <= 0) {
        count = static_cast<int>(std::thread::hardware_concurrency());
        if (count <= 0) count = 1;
    }
    if (const char* cap = std::getenv("COVERTLAB_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit > 0) count = std::min(count, limit);
    }
    return std::max(count, 1);
}

struct WilsonInterval {
    double lo, hi;
};

WilsonInterval wilson_95(long successes, long trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double nd = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = phat + z2 / (2.0 * nd);
    const double spread =
        z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd));
    return {std::max(0.0, (center - spread) / denom),
            std::min(1.0, (center + spread) / denom)};
}

}  // namespace

Codebook::Codebook(const CodebookSpec& spec, const InputLaw& law) : spec_(spec) {
    if (spec.n < 1 || spec.num_messages < 1 || spec.num_keys < 1) {
        throw std::invalid_argument("codebook: all dimensions must be >= 1");
    }
    const bool oversized =
        spec.n > kMaxCodebookEntries ||
        spec.num_keys > kMaxCodebookEntries / spec.n ||
        spec.num_messages > kMaxCodebookEntries / (spec.n * spec.num_keys);
    if (oversized) {
        std::ostringstream msg;
        msg << "codebook: " << spec.num_messages << " x " << spec.num_keys
            << " codewords of length " << spec.n
            << " exceed the memory budget of " << kMaxCodebookEntries
            << " entries";
        throw std::length_error(msg.str());
    }
    words_.resize(
        static_cast<std::size_t>(spec.n * spec.num_messages * spec.num_keys));
    RandomStream rng(spec.seed);
    for (auto& w : words_) w = sample_input_one(law, rng);
}

std::span<const double> Codebook::codeword(long message, long key) const {
    if (message < 0 || message >= spec_.num_messages || key < 0 ||
        key >= spec_.num_keys) {
        throw std::out_of_range("codebook: message/key index out of range");
    }
    const std::size_t offset = static_cast<std::size_t>(
        (key * spec_.num_messages + message) * spec_.n);
    return {words_.data() + offset, static_cast<std::size_t>(spec_.n)};
}

std::vector<double> transmit(std::span<const double> codeword,
                             const NoiseModel& model,
                             RandomStream& rng) {
    std::vector<double> y(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        y[i] = codeword[i] + model.sample_one(rng);
    }
    return y;
}

double information_density(std::span<const double> x,
                           std::span<const double> y,
                           const NoiseModel& model,
                           const TiltedNoise& tilted) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("information_density: size mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lz = model.log_pdf(y[i] - x[i]);
        if (lz == -kInf) return -kInf;
        sum += lz - tilted.log_pdf(y[i]);
    }
    return sum;
}

DecodeOutcome threshold_decode(std::span<const double> y,
                               const Codebook& codebook,
                               long key,
                               double threshold,
                               const NoiseModel& model,
                               const TiltedNoise& tilted) {
    for (long m = 0; m < codebook.spec().num_messages; ++m) {
        const double density =
            information_density(codebook.codeword(m, key), y, model, tilted);
        if (density > threshold) return DecodeOutcome{false, m};
    }
    return DecodeOutcome{};
}

SimulationReport run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("run_experiment: trials must be >= 1");
    }
    const NoiseModel& model = config.model;
    const long n = config.n;
    const double gamma =
        gamma_achievability(model, config.delta, n, config.chi);
    const TiltedNoise tilted(model, gamma);
    const InputLaw law = synthesize_input(model, gamma);

    const double variance = model.log_pdf_variance();
    const double ln_messages =
        config.rate_fraction *
        std::sqrt(2.0 * variance) *
        std::sqrt(static_cast<double>(n) * config.delta);
    const double tau = std::pow(static_cast<double>(n), 0.25);
    const double threshold = ln_messages + tau;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double log_alpha = tilted.log_alpha();
    const double one_minus_gamma = 1.0 - gamma;

    std::vector<double> density_norm(static_cast<std::size_t>(config.trials));
    std::vector<unsigned char> failed(static_cast<std::size_t>(config.trials));

    const auto run_trial = [&](long trial) {
        RandomStream rng(mix_seed(config.seed, static_cast<std::uint64_t>(trial)));
        double density = 0.0;
        for (long i = 0; i < n; ++i) {
            const double x = sample_input_one(law, rng);
            const double z = model.sample_one(rng);
            const double lz = model.log_pdf(z);
            const double ly = model.log_pdf(x + z);
            density += lz - (log_alpha + one_minus_gamma * ly);
        }
        density_norm[static_cast<std::size_t>(trial)] = density / sqrt_n;
        failed[static_cast<std::size_t>(trial)] =
            density <= threshold ? 1 : 0;
    };

    const int workers = worker_count(config.threads);
    if (workers == 1 || config.trials < 2 * workers) {
        for (long t = 0; t < config.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (long t = w; t < config.trials; t += workers) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Serial reduction in trial order keeps reports bit-identical regardless
    // of the worker count.
    long failures = 0;
    double mean = 0.0;
    for (long t = 0; t < config.trials; ++t) {
        failures += failed[static_cast<std::size_t>(t)];
        mean += density_norm[static_cast<std::size_t>(t)];
    }
    mean /= static_cast<double>(config.trials);
    double var = 0.0;
    for (long t = 0; t < config.trials; ++t) {
        const double d = density_norm[static_cast<std::size_t>(t)] - mean;
        var += d * d;
    }
    var /= static_cast<double>(std::max<long>(config.trials - 1, 1));

    const WilsonInterval ci = wilson_95(failures, config.trials);
    SimulationReport report;
    report.n = n;
    report.gamma_n = gamma;
    report.log_num_messages = ln_messages;
    report.threshold = threshold;
    report.error_rate =
        static_cast<double>(failures) / static_cast<double>(config.trials);
    report.error_ci_lo = ci.lo;
    report.error_ci_hi = ci.hi;
    report.info_density_mean = mean;
    report.info_density_var = var;
    report.analytic_mutual_info =
        static_cast<double>(n) *
        (tilted.entropy() - model.differential_entropy());
    report.covert_divergence = static_cast<double>(n) * tilted.kl_to_base();
    report.delta_budget = config.delta;
    report.feinstein_envelope = std::exp(-tau);
    report.trials = config.trials;
    report.seed = config.seed;
    return report;
}

std::vector<SimulationReport> sweep(const ExperimentConfig& config,
                                    std::span<const long> blocklengths) {
    std::vector<SimulationReport> reports;
    reports.reserve(blocklengths.size());
    for (long n : blocklengths) {
        ExperimentConfig point = config;
        point.n = n;
        point.seed = mix_seed(config.seed, static_cast<std::uint64_t>(n));
        reports.push_back(run_experiment(point));
    }
    return reports;
}

std::string reports_to_csv(std::span<const SimulationReport> reports) {
    std::string csv =
        "n,gamma,rate,error_rate,ci_lo,ci_hi,idensity_mean,idensity_var,"
        "covert_div\n";
    char line[512];
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line),
                      "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.n, r.gamma_n,
                      r.log_num_messages / static_cast<double>(r.n),
                      r.error_rate, r.error_ci_lo, r.error_ci_hi,
                      r.info_density_mean, r.info_density_var,
                      r.covert_divergence);
        csv += line;
    }
    return csv;
}

}  // namespace covertlab
