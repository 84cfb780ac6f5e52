#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "occ/camera.hpp"
#include "occ/modulation.hpp"
#include "occ/preprocess.hpp"
#include "occ/sampler.hpp"

namespace occ {

// Receiver-side knobs for a single column decode.
// Histogram equalization is part of the receiver chain for low-contrast
// captures but defaults off: on clean stripes the CDF remap spaces the
// levels by occupancy mass, which skews the threshold cascade.
struct DecodeParams {
    SamplingMethod method = SamplingMethod::adaptive;
    int order = 4;
    int d_len = 16;                // N, length of the stride table
    double min_prominence = 0.1;
    bool equalize = false;
    int hist_bins = 256;
    double frame_rate = 60.0;
};

struct DecodeReport {
    SamplingMethod method = SamplingMethod::adaptive;
    std::size_t header_index = 0;      // symbol position of the located header
    std::vector<int> symbols;          // recovered symbol sequence
    Bits payload_a;
    Bits payload_b;
    double ber = -1.0;                 // -1 until scored against a reference
    double symbol_error_rate = -1.0;
    double throughput_bps = 0.0;
    int copies_used = 0;               // repetitions that entered the vote
    WidthEstimate width;
    std::map<std::string, std::string> config_echo;
};

// Index minimizing the Hamming distance to the header symbol pattern;
// ties resolve to the earliest index. Distances above 20% of the header
// length are rejected.
std::size_t locate_header(const std::vector<int>& symbols, const PacketSpec& spec);

// Splits payload symbols back into the two bit streams, majority-voting
// per position across every repetition fully visible after the header.
std::pair<Bits, Bits> reconstruct_packet(const std::vector<int>& symbols,
                                         std::size_t header_index, const PacketSpec& spec);

double bit_error_rate(const Bits& tx, const Bits& rx);

// Delivered bits per second: frame_rate * (two payload streams per frame).
double throughput(const PacketSpec& spec, double frame_rate);

// Full receiver chain on a raw captured column:
// normalize -> width estimate -> equalize -> (ASM: odd-width resample)
// -> thresholds -> sample -> classify -> locate -> reconstruct.
DecodeReport decode_column(const GrayColumn& raw, const PacketSpec& spec,
                           const DecodeParams& params);

// Fills ber / symbol_error_rate against the transmitted payloads.
void score_report(DecodeReport& report, const Bits& tx_payload_a, const Bits& tx_payload_b,
                  const PacketSpec& spec);

}  // namespace occ
