#pragma once

#include <cstdint>
#include <vector>

#include "occ/modulation.hpp"

namespace occ {

// Rolling-shutter channel model. Row r integrates the LED-filtered
// waveform over [start_r, start_r + exposure] with
//   start_r = r * t_row * (1 + drift_ppm * 1e-6) + jitter_r,
// scales by the illumination envelope, adds Gaussian noise, then clips
// to [0, 1] and quantizes. Fully deterministic for a given rng_seed.
struct ChannelConfig {
    int rows = 1080;
    double t_row = 1.0 / 60.0 / 1080.0;   // seconds per row readout
    double t_exp = 250e-6;                // exposure seconds
    double led_tau = 0.0;                 // first-order LED lag
    std::vector<double> envelope_coeffs = {1.0};  // polynomial in row pos [0,1]
    double noise_sigma = 0.0;             // gray-value sigma, normalized units
    double drift_ppm = 0.0;               // fractional row-clock error, ppm
    double jitter_sigma = 0.0;            // per-row timing jitter seconds
    int quantize_bits = 8;
    double full_scale_intensity = 1.0;    // intensity mapped to gray 1.0
    std::uint64_t rng_seed = 1;

    void validate() const;
};

// One column of per-row gray values, the receiver's 1-D signal.
struct GrayColumn {
    std::vector<double> values;
    bool normalized = false;
    double interp_factor = 1.0;  // resampling factor applied so far

    std::size_t size() const { return values.size(); }
};

struct Frame {
    std::vector<GrayColumn> columns;

    std::size_t width() const { return columns.size(); }
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// First-order low-pass modelling the LED transition time. tau = 0 is the
// identity; output length equals input length.
Waveform led_response(const Waveform& w, double tau);

// Polynomial envelope evaluated at normalized row position u in [0,1].
double envelope_at(const ChannelConfig& cfg, double u);

// Cubic envelope peaked near mid-column with the requested peak/edge
// ratio, slightly skewed so all four coefficients are exercised.
std::vector<double> peaked_envelope(double peak_to_edge);

GrayColumn rolling_shutter_capture(const Waveform& w, const ChannelConfig& cfg);

// `width` columns sharing the illumination but with independent noise
// draws from the seeded stream. A flat-topped horizontal taper dims the
// outer quarter of the frame.
Frame make_frame(const Waveform& w, const ChannelConfig& cfg, int width);

}  // namespace occ
