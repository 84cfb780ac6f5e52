#include "occ/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "occ/errors.hpp"
#include "occ/io.hpp"
#include "occ/rng.hpp"

namespace occ {

namespace {

SamplingMethod method_from_string(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "asm" || lower == "adaptive") return SamplingMethod::adaptive;
    if (lower == "cr" || lower == "clock_recovery") return SamplingMethod::clock_recovery;
    throw Error(ErrorKind::config, "unknown method: " + name + " (expected asm or cr)");
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = base ^ 0x9E3779B97F4A7C15ULL;
    s = s * 6364136223846793005ULL + a;
    s ^= s >> 31;
    s = s * 6364136223846793005ULL + b;
    s ^= s >> 31;
    return s;
}

Bits random_payload(std::size_t bits, GaussianRng& rng) {
    Bits out(bits);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    return out;
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::known_keys() {
    static const std::vector<std::string> keys = {
        "payload_bits", "repetitions", "symbol_period", "t_exp", "led_tau",
        "envelope_peak", "quantize_bits", "i1", "i2", "lead_symbols", "tail_symbols",
        "samples_per_half", "stripe_width", "noise_sigma", "drift_ppm", "jitter_sigma",
        "methods", "seeds", "base_seed", "d_len", "min_prominence", "equalize",
        "hist_bins", "frame_rate",
    };
    return keys;
}

ExperimentConfig ExperimentConfig::from_config(const Config& kv) {
    kv.validate(known_keys());

    ExperimentConfig cfg;
    cfg.spec.payload_len_bits =
        static_cast<std::size_t>(kv.get_int("payload_bits", static_cast<int>(cfg.spec.payload_len_bits)));
    cfg.spec.repetitions = kv.get_int("repetitions", cfg.spec.repetitions);
    cfg.spec.symbol_period = kv.get_double("symbol_period", cfg.spec.symbol_period);
    cfg.t_exp = kv.get_double("t_exp", cfg.spec.symbol_period);
    cfg.led_tau = kv.get_double("led_tau", cfg.led_tau);
    cfg.envelope_peak = kv.get_double("envelope_peak", cfg.envelope_peak);
    cfg.quantize_bits = kv.get_int("quantize_bits", cfg.quantize_bits);
    cfg.i1 = kv.get_double("i1", cfg.i1);
    cfg.i2 = kv.get_double("i2", cfg.i2);
    cfg.lead_symbols = kv.get_double("lead_symbols", cfg.lead_symbols);
    cfg.tail_symbols = kv.get_double("tail_symbols", cfg.tail_symbols);
    cfg.samples_per_half = kv.get_int("samples_per_half", cfg.samples_per_half);
    cfg.stripe_width = kv.get_double_list("stripe_width", cfg.stripe_width);
    cfg.noise_sigma = kv.get_double_list("noise_sigma", cfg.noise_sigma);
    cfg.drift_ppm = kv.get_double_list("drift_ppm", cfg.drift_ppm);
    cfg.jitter_sigma = kv.get_double_list("jitter_sigma", cfg.jitter_sigma);
    const auto method_names = kv.get_string_list("methods", {"asm", "cr"});
    cfg.methods.clear();
    for (const auto& name : method_names) cfg.methods.push_back(method_from_string(name));
    cfg.seeds = kv.get_int("seeds", cfg.seeds);
    cfg.base_seed = kv.get_u64("base_seed", cfg.base_seed);
    cfg.decode.d_len = kv.get_int("d_len", cfg.decode.d_len);
    cfg.decode.min_prominence = kv.get_double("min_prominence", cfg.decode.min_prominence);
    cfg.decode.equalize = kv.get_int("equalize", cfg.decode.equalize ? 1 : 0) != 0;
    cfg.decode.hist_bins = kv.get_int("hist_bins", cfg.decode.hist_bins);
    cfg.decode.frame_rate = kv.get_double("frame_rate", cfg.decode.frame_rate);

    if (cfg.seeds < 1) throw Error(ErrorKind::config, "seeds must be >= 1");
    if (cfg.samples_per_half < 1) throw Error(ErrorKind::config, "samples_per_half must be >= 1");
    for (double w : cfg.stripe_width)
        if (w < 1.0) throw Error(ErrorKind::config, "stripe_width must be >= 1 row");
    return cfg;
}

ChannelConfig experiment_channel(const ExperimentConfig& cfg, double stripe_width,
                                 double noise_sigma, double drift_ppm, double jitter_sigma,
                                 std::uint64_t seed, std::size_t symbol_count) {
    ChannelConfig ch;
    ch.t_row = cfg.spec.symbol_period / stripe_width;
    ch.t_exp = cfg.t_exp;
    ch.led_tau = cfg.led_tau;
    ch.envelope_coeffs =
        cfg.envelope_peak > 1.0 ? peaked_envelope(cfg.envelope_peak) : std::vector<double>{1.0};
    ch.noise_sigma = noise_sigma;
    ch.drift_ppm = drift_ppm;
    ch.jitter_sigma = jitter_sigma;
    ch.quantize_bits = cfg.quantize_bits;
    ch.full_scale_intensity = cfg.i1 + 0.5 * cfg.i2;
    ch.rng_seed = seed;

    const double total_symbols =
        cfg.lead_symbols + static_cast<double>(symbol_count) + cfg.tail_symbols;
    ch.rows = static_cast<int>(std::ceil(stripe_width * total_symbols));
    return ch;
}

Waveform experiment_waveform(const ExperimentConfig& cfg, const DualBitstream& stream,
                             double stripe_width, double drift_ppm, double jitter_sigma) {
    const double T = cfg.spec.symbol_period;
    const double dt = T / (2.0 * cfg.samples_per_half);
    Waveform burst = synthesize_waveform(stream, dt, cfg.i1, cfg.i2);

    const ChannelConfig ch = experiment_channel(cfg, stripe_width, 0.0, drift_ppm,
                                                jitter_sigma, 0, stream.bits_a.size());
    const double drift = 1.0 + std::abs(drift_ppm) * 1e-6;
    const double needed = static_cast<double>(ch.rows) * ch.t_row * drift + ch.t_exp +
                          6.0 * jitter_sigma + 2.0 * T;

    const auto lead = static_cast<std::size_t>(
        std::lround(cfg.lead_symbols * T / dt));
    std::size_t total = lead + burst.samples.size();
    const auto needed_samples = static_cast<std::size_t>(std::ceil(needed / dt));
    total = std::max(total, needed_samples);

    Waveform w;
    w.dt = dt;
    w.samples.assign(total, 0.0);
    std::copy(burst.samples.begin(), burst.samples.end(), w.samples.begin() + lead);
    return w;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg) {
    cfg.spec.validate();
    if (cfg.methods.empty()) throw Error(ErrorKind::config, "no methods selected");

    std::vector<RunResult> results;
    std::size_t run_index = 0;
    std::size_t point_index = 0;
    for (double w : cfg.stripe_width) {
        for (double ns : cfg.noise_sigma) {
            for (double dp : cfg.drift_ppm) {
                for (double js : cfg.jitter_sigma) {
                    ++point_index;
                    for (int seed = 0; seed < cfg.seeds; ++seed) {
                        const std::uint64_t payload_seed =
                            mix_seed(cfg.base_seed, point_index, static_cast<std::uint64_t>(seed));
                        GaussianRng payload_rng(payload_seed);
                        const Bits payload_a =
                            random_payload(cfg.spec.payload_len_bits, payload_rng);
                        const Bits payload_b =
                            random_payload(cfg.spec.payload_len_bits, payload_rng);

                        GrayColumn column;
                        std::string render_error;
                        try {
                            const DualBitstream stream =
                                build_packet(payload_a, payload_b, cfg.spec);
                            const Waveform waveform =
                                experiment_waveform(cfg, stream, w, dp, js);
                            const ChannelConfig channel =
                                experiment_channel(cfg, w, ns, dp, js,
                                                   payload_seed ^ 0x5DEECE66DULL,
                                                   stream.bits_a.size());
                            column = rolling_shutter_capture(waveform, channel);
                        } catch (const Error& e) {
                            render_error = std::string(e.kind_name()) + ": " + e.what();
                        }

                        for (SamplingMethod method : cfg.methods) {
                            RunResult run;
                            run.run_index = run_index++;
                            run.stripe_width = w;
                            run.noise_sigma = ns;
                            run.drift_ppm = dp;
                            run.jitter_sigma = js;
                            run.method = method;
                            run.seed = seed;
                            if (!render_error.empty()) {
                                run.ok = false;
                                run.error = render_error;
                                results.push_back(std::move(run));
                                continue;
                            }
                            try {
                                DecodeParams params = cfg.decode;
                                params.method = method;
                                run.report = decode_column(column, cfg.spec, params);
                                score_report(run.report, payload_a, payload_b, cfg.spec);
                                run.ok = true;
                            } catch (const Error& e) {
                                run.ok = false;
                                run.error = std::string(e.kind_name()) + ": " + e.what();
                            }
                            results.push_back(std::move(run));
                        }
                    }
                }
            }
        }
    }
    return results;
}

std::string aggregate_csv(const std::vector<RunResult>& results) {
    std::string text =
        "run,stripe_width,noise_sigma,drift_ppm,jitter_sigma,method,seed,ok,error,"
        "ber,symbol_error_rate,header_index,copies_used,width_w,width_x,throughput_bps\n";
    for (const auto& r : results) {
        text += std::to_string(r.run_index) + ",";
        text += format_double(r.stripe_width) + ",";
        text += format_double(r.noise_sigma) + ",";
        text += format_double(r.drift_ppm) + ",";
        text += format_double(r.jitter_sigma) + ",";
        text += std::string(method_name(r.method)) + ",";
        text += std::to_string(r.seed) + ",";
        text += (r.ok ? "1" : "0");
        text += ",";
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        text += err + ",";
        if (r.ok) {
            text += format_double(r.report.ber) + ",";
            text += format_double(r.report.symbol_error_rate) + ",";
            text += std::to_string(r.report.header_index) + ",";
            text += std::to_string(r.report.copies_used) + ",";
            text += format_double(r.report.width.rows_per_symbol) + ",";
            text += std::to_string(r.report.width.odd_width) + ",";
            text += format_double(r.report.throughput_bps);
        } else {
            text += ",,,,,,";
        }
        text.push_back('\n');
    }
    return text;
}

std::string report_text(const DecodeReport& report) {
    std::string text;
    text += "method," + std::string(method_name(report.method)) + "\n";
    text += "header_index," + std::to_string(report.header_index) + "\n";
    text += "symbols," + std::to_string(report.symbols.size()) + "\n";
    text += "ber," + (report.ber < 0 ? std::string("") : format_double(report.ber)) + "\n";
    text += "symbol_error_rate," +
            (report.symbol_error_rate < 0 ? std::string("") : format_double(report.symbol_error_rate)) +
            "\n";
    text += "throughput_bps," + format_double(report.throughput_bps) + "\n";
    text += "copies_used," + std::to_string(report.copies_used) + "\n";
    text += "width_w," + format_double(report.width.rows_per_symbol) + "\n";
    text += "width_x," + std::to_string(report.width.odd_width) + "\n";
    text += "header_start_row," + std::to_string(report.width.header_start) + "\n";

    std::string bits_a, bits_b;
    for (auto b : report.payload_a) bits_a.push_back(b ? '1' : '0');
    for (auto b : report.payload_b) bits_b.push_back(b ? '1' : '0');
    text += "payload_a," + bits_a + "\n";
    text += "payload_b," + bits_b + "\n";
    for (const auto& [key, value] : report.config_echo) text += key + "," + value + "\n";
    return text;
}

}  // namespace occ
