// occsim: encode, simulate, decode and evaluate for the multilevel
// rolling-shutter link. Configuration is flat key=value, from a file
// (--config) and/or per-key command line flags; flags win.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "occ/config.hpp"
#include "occ/errors.hpp"
#include "occ/experiment.hpp"
#include "occ/io.hpp"
#include "occ/modulation.hpp"
#include "occ/pipeline.hpp"

namespace {

using occ::Config;
using occ::Error;
using occ::ErrorKind;

// Keys a subcommand accepts, each mirrored as a --key flag.
struct KeyedOptions {
    std::vector<std::string> keys;
    std::map<std::string, std::string> cli_values;
    std::string config_path;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "key=value config file");
        for (const auto& key : keys) {
            app->add_option_function<std::string>(
                "--" + key,
                [this, key](const std::string& v) { cli_values[key] = v; },
                "config key " + key);
        }
    }

    Config merged() const {
        Config cfg;
        if (!config_path.empty()) cfg = Config::from_file(config_path);
        cfg.validate(keys);
        for (const auto& [key, value] : cli_values) cfg.set(key, value);
        return cfg;
    }
};

occ::PacketSpec spec_from(const Config& cfg) {
    occ::PacketSpec spec;
    if (cfg.has("header"))
        spec.header_bits = occ::parse_bits(cfg.get_string("header", ""));
    spec.payload_len_bits = static_cast<std::size_t>(
        cfg.get_int("payload_bits", static_cast<int>(spec.payload_len_bits)));
    spec.repetitions = cfg.get_int("repetitions", spec.repetitions);
    spec.symbol_period = cfg.get_double("symbol_period", spec.symbol_period);
    spec.validate();
    return spec;
}

int run_encode(const KeyedOptions& opts, const std::string& payload_path,
               const std::string& out_prefix) {
    const Config cfg = opts.merged();
    const occ::PacketSpec spec = spec_from(cfg);

    std::ifstream in(payload_path);
    if (!in) throw Error(ErrorKind::config, "cannot open payload file: " + payload_path);
    std::string line_a, line_b;
    if (!std::getline(in, line_a) || !std::getline(in, line_b))
        throw Error(ErrorKind::config, "payload file needs two lines of 0/1 (stream a, stream b)");

    const occ::Bits payload_a = occ::parse_bits(line_a);
    const occ::Bits payload_b = occ::parse_bits(line_b);
    const occ::DualBitstream stream = occ::build_packet(payload_a, payload_b, spec);

    occ::write_bits(out_prefix + "_a.txt", stream.bits_a);
    occ::write_bits(out_prefix + "_b.txt", stream.bits_b);
    std::cout << "wrote " << out_prefix << "_a.txt and " << out_prefix << "_b.txt ("
              << stream.bits_a.size() << " bits per stream)\n";
    return 0;
}

int run_simulate(const KeyedOptions& opts, const std::string& bits_a_path,
                 const std::string& bits_b_path, const std::string& out_path) {
    const Config cfg = opts.merged();

    occ::ExperimentConfig exp;
    exp.spec.symbol_period = cfg.get_double("symbol_period", exp.spec.symbol_period);
    exp.t_exp = cfg.get_double("t_exp", exp.spec.symbol_period);
    exp.led_tau = cfg.get_double("led_tau", exp.led_tau);
    exp.envelope_peak = cfg.get_double("envelope_peak", exp.envelope_peak);
    exp.quantize_bits = cfg.get_int("quantize_bits", exp.quantize_bits);
    exp.i1 = cfg.get_double("i1", exp.i1);
    exp.i2 = cfg.get_double("i2", exp.i2);
    exp.lead_symbols = cfg.get_double("lead_symbols", exp.lead_symbols);
    exp.tail_symbols = cfg.get_double("tail_symbols", exp.tail_symbols);
    exp.samples_per_half = cfg.get_int("samples_per_half", exp.samples_per_half);

    occ::DualBitstream stream;
    stream.bits_a = occ::read_bits(bits_a_path);
    stream.bits_b = occ::read_bits(bits_b_path);
    stream.spec = exp.spec;
    if (stream.bits_a.size() != stream.bits_b.size())
        throw Error(ErrorKind::config, "bitstream files differ in length");

    const double stripe_width = cfg.get_double("stripe_width", 15.0);
    const double noise_sigma = cfg.get_double("noise_sigma", 0.0);
    const double drift_ppm = cfg.get_double("drift_ppm", 0.0);
    const double jitter_sigma = cfg.get_double("jitter_sigma", 0.0);
    const auto seed = cfg.get_u64("rng_seed", 1);
    const int width = cfg.get_int("frame_width", 1);

    const occ::Waveform waveform =
        occ::experiment_waveform(exp, stream, stripe_width, drift_ppm, jitter_sigma);
    occ::ChannelConfig channel = occ::experiment_channel(
        exp, stripe_width, noise_sigma, drift_ppm, jitter_sigma, seed, stream.bits_a.size());

    const occ::Frame frame = occ::make_frame(waveform, channel, width);
    const int maxval = (1 << channel.quantize_bits) - 1;
    occ::write_frame(out_path, frame, maxval);
    std::cout << "wrote " << out_path << " (" << frame.rows() << "x" << frame.width() << ")\n";
    return 0;
}

int run_decode(const KeyedOptions& opts, const std::string& frame_path,
               const std::string& out_path) {
    const Config cfg = opts.merged();
    const occ::PacketSpec spec = spec_from(cfg);

    occ::DecodeParams params;
    const std::string method = cfg.get_string("method", "asm");
    if (method == "asm" || method == "ASM") params.method = occ::SamplingMethod::adaptive;
    else if (method == "cr" || method == "CR") params.method = occ::SamplingMethod::clock_recovery;
    else throw Error(ErrorKind::config, "method must be asm or cr, got " + method);
    params.d_len = cfg.get_int("d_len", params.d_len);
    params.min_prominence = cfg.get_double("min_prominence", params.min_prominence);
    params.equalize = cfg.get_int("equalize", params.equalize ? 1 : 0) != 0;
    params.hist_bins = cfg.get_int("hist_bins", params.hist_bins);
    params.frame_rate = cfg.get_double("frame_rate", params.frame_rate);

    const occ::Frame frame = occ::read_frame(frame_path);
    const occ::GrayColumn column = occ::select_column(frame);
    occ::DecodeReport report = occ::decode_column(column, spec, params);

    if (cfg.has("expected_a") && cfg.has("expected_b")) {
        const occ::Bits tx_a = occ::read_bits(cfg.get_string("expected_a", ""));
        const occ::Bits tx_b = occ::read_bits(cfg.get_string("expected_b", ""));
        occ::score_report(report, tx_a, tx_b, spec);
    }

    const std::string text = occ::report_text(report);
    if (out_path.empty()) std::cout << text;
    else {
        occ::write_text(out_path, text);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int run_evaluate(const KeyedOptions& opts, const std::string& out_csv,
                 const std::string& reports_dir) {
    const Config cfg = opts.merged();
    const occ::ExperimentConfig exp = occ::ExperimentConfig::from_config(cfg);
    const std::vector<occ::RunResult> results = occ::run_experiment(exp);

    occ::write_text(out_csv, occ::aggregate_csv(results));
    std::cout << "wrote " << out_csv << " (" << results.size() << " runs)\n";

    if (!reports_dir.empty()) {
        std::filesystem::create_directories(reports_dir);
        for (const auto& run : results) {
            if (!run.ok) continue;
            const std::string path =
                reports_dir + "/run_" + std::to_string(run.run_index) + ".txt";
            occ::write_text(path, occ::report_text(run.report));
        }
        std::cout << "per-run reports under " << reports_dir << "\n";
    }

    std::size_t failures = 0;
    for (const auto& run : results) failures += !run.ok;
    if (failures)
        std::cout << failures << " of " << results.size() << " runs failed to decode\n";
    return 0;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::config:
        case ErrorKind::invalid_argument:
        case ErrorKind::degenerate_levels:
            return 2;
        default:
            return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel rolling-shutter optical camera link simulator"};
    app.require_subcommand(1);

    // encode
    auto* encode = app.add_subcommand("encode", "payload file -> framed bitstream files");
    KeyedOptions encode_opts;
    encode_opts.keys = {"header", "payload_bits", "repetitions", "symbol_period"};
    std::string payload_path, out_prefix = "bits";
    encode->add_option("payload", payload_path, "two-line payload file (stream a, stream b)")
        ->required();
    encode->add_option("--out", out_prefix, "output prefix for _a.txt/_b.txt");
    encode_opts.attach(encode);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "bitstreams -> rendered frame file");
    KeyedOptions sim_opts;
    sim_opts.keys = {"symbol_period", "t_exp", "led_tau", "envelope_peak", "quantize_bits",
                     "i1", "i2", "lead_symbols", "tail_symbols", "samples_per_half",
                     "stripe_width", "noise_sigma", "drift_ppm", "jitter_sigma", "rng_seed",
                     "frame_width"};
    std::string bits_a_path, bits_b_path, frame_out = "frame.txt";
    simulate->add_option("bits_a", bits_a_path, "NRZ stream bit file")->required();
    simulate->add_option("bits_b", bits_b_path, "RZ stream bit file")->required();
    simulate->add_option("--out", frame_out, "frame file to write");
    sim_opts.attach(simulate);

    // decode
    auto* decode = app.add_subcommand("decode", "frame file -> decode report");
    KeyedOptions decode_opts;
    decode_opts.keys = {"header", "payload_bits", "repetitions", "symbol_period", "method",
                        "d_len", "min_prominence", "equalize", "hist_bins", "frame_rate",
                        "expected_a", "expected_b"};
    std::string frame_path, report_out;
    decode->add_option("frame", frame_path, "frame file to decode")->required();
    decode->add_option("--out", report_out, "report file (stdout when omitted)");
    decode_opts.attach(decode);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "experiment descriptor -> aggregate CSV");
    KeyedOptions eval_opts;
    eval_opts.keys = occ::ExperimentConfig::known_keys();
    std::string csv_out = "results.csv", reports_dir;
    evaluate->add_option("--out", csv_out, "aggregate CSV path");
    evaluate->add_option("--reports", reports_dir, "directory for per-run reports");
    eval_opts.attach(evaluate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (encode->parsed()) return run_encode(encode_opts, payload_path, out_prefix);
        if (simulate->parsed()) return run_simulate(sim_opts, bits_a_path, bits_b_path, frame_out);
        if (decode->parsed()) return run_decode(decode_opts, frame_path, report_out);
        if (evaluate->parsed()) return run_evaluate(eval_opts, csv_out, reports_dir);
    } catch (const Error& e) {
        std::cerr << "error (" << e.kind_name() << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
