#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covertlab/input_synthesis.hpp"
#include "covertlab/noise.hpp"
#include "covertlab/tilt.hpp"

namespace covertlab {

struct CodebookSpec {
    long n = 1;
    long num_messages = 1;
    long num_keys = 1;
    std::uint64_t seed = 0;
};

/// Explicit random codebook: num_messages * num_keys codewords of length n,
/// generated i.i.d. from the input law, deterministically in the seed.
/// Sized codebooks are capped at kMaxCodebookEntries doubles.
class Codebook {
public:
    static constexpr long kMaxCodebookEntries = 1L << 24;

    Codebook(const CodebookSpec& spec, const InputLaw& law);

    const CodebookSpec& spec() const { return spec_; }
    std::span<const double> codeword(long message, long key) const;

private:
    CodebookSpec spec_;
    std::vector<double> words_;
};

/// y_i = x_i + z_i with fresh noise.
std::vector<double> transmit(std::span<const double> codeword,
                             const NoiseModel& model,
                             RandomStream& rng);

/// Sum over letters of ln p_Z(y_i - x_i) - ln p_tilted(y_i); the output law
/// is the analytic product tilted density. -infinity when y - x leaves the
/// noise support (a legitimate value, not an error).
double information_density(std::span<const double> x,
                           std::span<const double> y,
                           const NoiseModel& model,
                           const TiltedNoise& tilted);

struct DecodeOutcome {
    bool erasure = true;
    long message = -1;  // valid when !erasure
};

/// Threshold (first-exceed) decoding over the key's slice of the codebook.
DecodeOutcome threshold_decode(std::span<const double> y,
                               const Codebook& codebook,
                               long key,
                               double threshold,
                               const NoiseModel& model,
                               const TiltedNoise& tilted);

struct ExperimentConfig {
    NoiseModel model;
    double delta = 1.0;
    long n = 1024;
    double rate_fraction = 0.7;  // of the optimal sqrt(2 Var) sqrt(n delta)
    long trials = 2000;
    double chi = 1.25;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: hardware count, capped by COVERTLAB_THREADS
};

struct SimulationReport {
    long n = 0;
    double gamma_n = 0.0;
    double log_num_messages = 0.0;  // ln|M| in nats
    double threshold = 0.0;         // ln|M| + n^(1/4)
    double error_rate = 0.0;
    double error_ci_lo = 0.0;  // 95% Wilson interval
    double error_ci_hi = 0.0;
    double info_density_mean = 0.0;  // mean of i/sqrt(n) over trials
    double info_density_var = 0.0;   // sample variance of i/sqrt(n)
    double analytic_mutual_info = 0.0;  // n I(X;Y) = n (h(tilted) - h(Z))
    double covert_divergence = 0.0;     // n D(P_tilted || P_Z), analytic
    double delta_budget = 0.0;
    double feinstein_envelope = 0.0;  // exp(-n^(1/4)) union-bound term
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo achievability experiment at ln|M| = rate_fraction *
/// sqrt(2 Var) sqrt(n delta). Codewords at this rate are astronomically many,
/// so each trial materializes only the transmitted codeword of a fresh random
/// codebook; the reported error_rate is the threshold-failure frequency
/// P{i <= ln|M| + n^(1/4)} and feinstein_envelope carries the analytic
/// union bound exp(-n^(1/4)) for the unsampled wrong-codeword event.
SimulationReport run_experiment(const ExperimentConfig& config);

/// Runs the experiment over a ladder of blocklengths (per-n seeds derived
/// from the base seed).
std::vector<SimulationReport> sweep(const ExperimentConfig& config,
                                    std::span<const long> blocklengths);

/// CSV rows: n, gamma, rate, error_rate, ci_lo, ci_hi, idensity_mean,
/// idensity_var, covert_div. Header row mandatory; rate is ln|M|/n in nats
/// per channel use.
std::string reports_to_csv(std::span<const SimulationReport> reports);

}  // namespace covertlab
