#include "occ/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occ/errors.hpp"

namespace occ {

void PacketSpec::validate() const {
    if (header_bits.size() < 2)
        throw Error(ErrorKind::invalid_argument, "header must carry at least 2 bits");
    for (std::size_t i = 0; i < header_bits.size(); ++i) {
        if (header_bits[i] > 1)
            throw Error(ErrorKind::invalid_argument, "header bits must be 0/1");
        if (i > 0 && header_bits[i] == header_bits[i - 1])
            throw Error(ErrorKind::invalid_argument, "header bits must alternate 1/0");
    }
    if (repetitions < 1)
        throw Error(ErrorKind::invalid_argument, "repetitions must be >= 1");
    if (symbol_period <= 0.0)
        throw Error(ErrorKind::invalid_argument, "symbol period must be positive");
}

DualBitstream build_packet(const Bits& payload_a, const Bits& payload_b, const PacketSpec& spec) {
    spec.validate();
    if (payload_a.size() != spec.payload_len_bits || payload_b.size() != spec.payload_len_bits)
        throw Error(ErrorKind::invalid_argument,
                    "payload length mismatch: expected " + std::to_string(spec.payload_len_bits) +
                        " bits per stream");

    DualBitstream out;
    out.spec = spec;
    out.bits_a.reserve(spec.total_bits());
    out.bits_b.reserve(spec.total_bits());
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        out.bits_a.insert(out.bits_a.end(), spec.header_bits.begin(), spec.header_bits.end());
        out.bits_a.insert(out.bits_a.end(), payload_a.begin(), payload_a.end());
        out.bits_b.insert(out.bits_b.end(), spec.header_bits.begin(), spec.header_bits.end());
        out.bits_b.insert(out.bits_b.end(), payload_b.begin(), payload_b.end());
    }
    return out;
}

std::vector<int> symbols_of(const DualBitstream& stream) {
    if (stream.bits_a.size() != stream.bits_b.size())
        throw Error(ErrorKind::invalid_argument, "bit streams must have equal length");
    std::vector<int> symbols(stream.bits_a.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        symbols[i] = 2 * stream.bits_a[i] + stream.bits_b[i];
    return symbols;
}

Waveform synthesize_waveform(const DualBitstream& stream, double dt, double i1, double i2) {
    if (dt <= 0.0)
        throw Error(ErrorKind::invalid_argument, "dt must be positive");
    if (i1 <= 0.0 || i2 <= 0.0)
        throw Error(ErrorKind::invalid_argument, "intensities must be positive");
    const double half = stream.spec.symbol_period / 2.0;
    const double steps = half / dt;
    const long per_half = std::lround(steps);
    if (per_half < 1 || std::abs(steps - static_cast<double>(per_half)) > 1e-9 * steps)
        throw Error(ErrorKind::invalid_argument, "dt must divide half a symbol period evenly");

    const std::size_t n = stream.bits_a.size();
    Waveform w;
    w.dt = dt;
    w.samples.resize(2 * static_cast<std::size_t>(per_half) * n);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const double on = stream.bits_a[s] * i1 + stream.bits_b[s] * i2;
        const double off = stream.bits_a[s] * i1;
        for (long k = 0; k < per_half; ++k) w.samples[pos++] = on;
        for (long k = 0; k < per_half; ++k) w.samples[pos++] = off;
    }
    return w;
}

LevelTable ideal_levels(int order, double i1, double i2, double duty) {
    if (order != 4)
        throw Error(ErrorKind::invalid_argument, "transmitter is fixed 4-ary");
    if (duty <= 0.0 || duty >= 1.0)
        throw Error(ErrorKind::invalid_argument, "duty must lie in (0, 1)");
    if (i1 <= 0.0 || i2 <= 0.0)
        throw Error(ErrorKind::degenerate_levels, "levels collapse with a dark LED");

    std::vector<double> raw = {0.0, duty * i2, i1, i1 + duty * i2};
    std::sort(raw.begin(), raw.end());
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i] <= raw[i - 1])
            throw Error(ErrorKind::degenerate_levels, "symbol means are not strictly increasing");
    }
    // Sorting must not have reordered the symbol values themselves.
    if (duty * i2 >= i1)
        throw Error(ErrorKind::degenerate_levels, "RZ mean reaches the NRZ mean; symbol order lost");

    LevelTable table;
    table.order = order;
    table.levels.resize(raw.size());
    const double span = raw.back();
    for (std::size_t i = 0; i < raw.size(); ++i) table.levels[i] = raw[i] / span;
    return table;
}

}  // namespace occ
