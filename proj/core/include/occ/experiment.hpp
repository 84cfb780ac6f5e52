#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occ/camera.hpp"
#include "occ/config.hpp"
#include "occ/modulation.hpp"
#include "occ/pipeline.hpp"

namespace occ {

// Sweep descriptor: the cartesian product of the axis vectors times
// `seeds` runs per point, each rendered once and decoded per method.
struct ExperimentConfig {
    PacketSpec spec;

    // Channel basics. The exposure window equals one symbol period so a
    // row reads the symbol mean; stripe width then sets the row clock.
    double t_exp = 250e-6;
    double led_tau = 0.0;
    double envelope_peak = 1.0;  // peak/edge illumination ratio; 1 = flat
    int quantize_bits = 8;
    // Slightly unequal drive keeps the mid-level transition slopes from
    // canceling, which would smear plateau edges across symbol bounds.
    double i1 = 0.70;
    double i2 = 0.665;

    // Waveform framing around the packet burst.
    double lead_symbols = 2.0;
    double tail_symbols = 2.0;
    int samples_per_half = 8;

    // Sweep axes.
    std::vector<double> stripe_width = {15.0};  // rows per symbol
    std::vector<double> noise_sigma = {0.0};
    std::vector<double> drift_ppm = {0.0};
    std::vector<double> jitter_sigma = {0.0};
    std::vector<SamplingMethod> methods = {SamplingMethod::adaptive,
                                           SamplingMethod::clock_recovery};
    int seeds = 1;
    std::uint64_t base_seed = 1;

    DecodeParams decode;

    static const std::vector<std::string>& known_keys();
    static ExperimentConfig from_config(const Config& kv);
};

struct RunResult {
    std::size_t run_index = 0;
    double stripe_width = 0.0;
    double noise_sigma = 0.0;
    double drift_ppm = 0.0;
    double jitter_sigma = 0.0;
    SamplingMethod method = SamplingMethod::adaptive;
    int seed = 0;
    bool ok = false;
    std::string error;
    DecodeReport report;
};

// Builds the padded burst waveform for one packet.
Waveform experiment_waveform(const ExperimentConfig& cfg, const DualBitstream& stream,
                             double stripe_width, double drift_ppm, double jitter_sigma);

// Channel for one grid point. rows covers `symbol_count` stripes plus
// the configured lead/tail margin.
ChannelConfig experiment_channel(const ExperimentConfig& cfg, double stripe_width,
                                 double noise_sigma, double drift_ppm, double jitter_sigma,
                                 std::uint64_t seed, std::size_t symbol_count);

// Runs the whole grid; stage failures become per-run error records, the
// sweep itself never aborts.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg);

// One row per run, ordered by grid index; byte-identical across reruns.
std::string aggregate_csv(const std::vector<RunResult>& results);

// Flat key,value listing of a single decode.
std::string report_text(const DecodeReport& report);

}  // namespace occ
