#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace occ {

using Bits = std::vector<std::uint8_t>;

// Framing parameters shared by the transmitter and the receiver.
// The header must alternate 1/0 so the header region swings between the
// extreme symbols; both clock recovery and threshold construction rely
// on that full contrast.
struct PacketSpec {
    Bits header_bits = {1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
    std::size_t payload_len_bits = 70;
    int repetitions = 3;
    double symbol_period = 250e-6;  // seconds per symbol

    std::size_t packet_bits() const { return header_bits.size() + payload_len_bits; }
    std::size_t total_bits() const { return packet_bits() * static_cast<std::size_t>(repetitions); }
    void validate() const;
};

// One bit sequence per LED. Stream a drives the NRZ LED, stream b the
// RZ LED; the two are symbol aligned (headers coincide).
struct DualBitstream {
    Bits bits_a;
    Bits bits_b;
    PacketSpec spec;
};

// Piecewise-constant optical intensity, sampled every dt seconds.
struct Waveform {
    std::vector<double> samples;
    double dt = 0.0;

    double duration() const { return static_cast<double>(samples.size()) * dt; }
};

// Ideal normalized row-mean gray value per symbol, ascending.
struct LevelTable {
    int order = 4;
    std::vector<double> levels;
};

DualBitstream build_packet(const Bits& payload_a, const Bits& payload_b, const PacketSpec& spec);

// 4-ary symbol per position: 2*a + b.
std::vector<int> symbols_of(const DualBitstream& stream);

// Realizes the hybrid waveform: within symbol n the first half period
// carries a_n*i1 + b_n*i2 (the RZ pulse), the second half a_n*i1 alone.
// dt must divide half a symbol period evenly.
Waveform synthesize_waveform(const DualBitstream& stream, double dt, double i1, double i2);

// Raw symbol means {0, duty*i2, i1, i1 + duty*i2}, sorted and normalized
// onto [0, 1]. Fails if the mid levels collapse or reorder.
LevelTable ideal_levels(int order, double i1, double i2, double duty);

}  // namespace occ
