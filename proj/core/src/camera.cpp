#include "occ/camera.hpp"

#include <algorithm>
#include <cmath>

#include "occ/errors.hpp"
#include "occ/rng.hpp"

namespace occ {

void ChannelConfig::validate() const {
    if (rows < 1) throw Error(ErrorKind::invalid_argument, "rows must be >= 1");
    if (t_row <= 0.0) throw Error(ErrorKind::invalid_argument, "t_row must be positive");
    if (t_exp <= 0.0) throw Error(ErrorKind::invalid_argument, "t_exp must be positive");
    if (noise_sigma < 0.0) throw Error(ErrorKind::invalid_argument, "noise_sigma must be >= 0");
    if (jitter_sigma < 0.0) throw Error(ErrorKind::invalid_argument, "jitter_sigma must be >= 0");
    if (led_tau < 0.0) throw Error(ErrorKind::invalid_argument, "led_tau must be >= 0");
    if (quantize_bits < 1 || quantize_bits > 16)
        throw Error(ErrorKind::invalid_argument, "quantize_bits must lie in [1, 16]");
    if (full_scale_intensity <= 0.0)
        throw Error(ErrorKind::invalid_argument, "full_scale_intensity must be positive");
    if (envelope_coeffs.empty())
        throw Error(ErrorKind::invalid_argument, "envelope needs at least one coefficient");
}

Waveform led_response(const Waveform& w, double tau) {
    if (tau < 0.0) throw Error(ErrorKind::invalid_argument, "tau must be >= 0");
    if (tau == 0.0 || w.samples.empty()) return w;

    Waveform out;
    out.dt = w.dt;
    out.samples.resize(w.samples.size());
    const double alpha = 1.0 - std::exp(-w.dt / tau);
    double state = w.samples.front();
    out.samples[0] = state;
    for (std::size_t i = 1; i < w.samples.size(); ++i) {
        state += alpha * (w.samples[i] - state);
        out.samples[i] = state;
    }
    return out;
}

double envelope_at(const ChannelConfig& cfg, double u) {
    // Horner evaluation of the row-position polynomial.
    double acc = 0.0;
    for (std::size_t i = cfg.envelope_coeffs.size(); i-- > 0;)
        acc = acc * u + cfg.envelope_coeffs[i];
    return acc;
}

std::vector<double> peaked_envelope(double peak_to_edge) {
    if (peak_to_edge < 1.0)
        throw Error(ErrorKind::invalid_argument, "peak/edge ratio must be >= 1");
    // edge + (1-edge) * 4u(1-u) * (1 + skew*(u - 1/2)), expanded in powers of u.
    const double edge = 1.0 / peak_to_edge;
    const double a = 1.0 - edge;
    const double skew = 0.2;
    return {edge,
            a * (4.0 - 2.0 * skew),
            a * (6.0 * skew - 4.0),
            a * (-4.0 * skew)};
}

namespace {

// Integral of the piecewise-constant waveform over [t0, t1], exact on the
// sample grid. prefix[i] holds the integral of samples[0..i).
double grid_integral(const std::vector<double>& prefix, const std::vector<double>& samples,
                     double dt, double t) {
    const double n = static_cast<double>(samples.size());
    double x = t / dt;
    if (x <= 0.0) return 0.0;
    if (x >= n) return prefix.back();
    const auto idx = static_cast<std::size_t>(x);
    return prefix[idx] + (x - static_cast<double>(idx)) * dt * samples[idx];
}

GrayColumn capture_one(const std::vector<double>& prefix, const Waveform& w,
                       const ChannelConfig& cfg, GaussianRng& rng) {
    const double levels = static_cast<double>((1u << cfg.quantize_bits) - 1u);
    const double drift = 1.0 + cfg.drift_ppm * 1e-6;

    GrayColumn col;
    col.values.resize(static_cast<std::size_t>(cfg.rows));
    for (int r = 0; r < cfg.rows; ++r) {
        const double jitter = rng.normal() * cfg.jitter_sigma;
        const double noise = rng.normal() * cfg.noise_sigma;
        double start = static_cast<double>(r) * cfg.t_row * drift + jitter;
        start = std::clamp(start, 0.0, w.duration());
        const double stop = std::min(start + cfg.t_exp, w.duration());
        const double mean =
            (grid_integral(prefix, w.samples, w.dt, stop) -
             grid_integral(prefix, w.samples, w.dt, start)) /
            cfg.t_exp / cfg.full_scale_intensity;

        const double u = cfg.rows > 1 ? static_cast<double>(r) / (cfg.rows - 1) : 0.0;
        double v = envelope_at(cfg, u) * mean + noise;
        v = std::clamp(v, 0.0, 1.0);
        col.values[static_cast<std::size_t>(r)] = std::round(v * levels) / levels;
    }
    return col;
}

}  // namespace

GrayColumn rolling_shutter_capture(const Waveform& w, const ChannelConfig& cfg) {
    cfg.validate();
    const double needed = static_cast<double>(cfg.rows) * cfg.t_row + cfg.t_exp;
    if (w.duration() < needed - 1e-12)
        throw Error(ErrorKind::invalid_argument, "waveform shorter than the frame readout");

    const Waveform filtered = led_response(w, cfg.led_tau);
    std::vector<double> prefix(filtered.samples.size() + 1, 0.0);
    for (std::size_t i = 0; i < filtered.samples.size(); ++i)
        prefix[i + 1] = prefix[i] + filtered.samples[i] * filtered.dt;

    GaussianRng rng(cfg.rng_seed);
    return capture_one(prefix, filtered, cfg, rng);
}

Frame make_frame(const Waveform& w, const ChannelConfig& cfg, int width) {
    cfg.validate();
    if (width < 1) throw Error(ErrorKind::invalid_argument, "frame width must be >= 1");
    const double needed = static_cast<double>(cfg.rows) * cfg.t_row + cfg.t_exp;
    if (w.duration() < needed - 1e-12)
        throw Error(ErrorKind::invalid_argument, "waveform shorter than the frame readout");

    const Waveform filtered = led_response(w, cfg.led_tau);
    std::vector<double> prefix(filtered.samples.size() + 1, 0.0);
    for (std::size_t i = 0; i < filtered.samples.size(); ++i)
        prefix[i + 1] = prefix[i] + filtered.samples[i] * filtered.dt;

    GaussianRng rng(cfg.rng_seed);
    Frame frame;
    frame.columns.reserve(static_cast<std::size_t>(width));
    for (int c = 0; c < width; ++c) {
        // Flat-topped horizontal taper: unity over the middle half of the
        // frame, cosine falloff to 60% at the edges.
        double taper = 1.0;
        if (width > 1) {
            const double x = std::abs(static_cast<double>(c) / (width - 1) - 0.5);
            if (x > 0.25) taper = 0.6 + 0.4 * std::cos((x - 0.25) * 2.0 * 3.14159265358979323846);
        }
        ChannelConfig col_cfg = cfg;
        for (double& coeff : col_cfg.envelope_coeffs) coeff *= taper;
        frame.columns.push_back(capture_one(prefix, filtered, col_cfg, rng));
    }
    return frame;
}

}  // namespace occ
