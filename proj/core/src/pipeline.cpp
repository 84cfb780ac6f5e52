#include "occ/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occ/errors.hpp"
#include "occ/preprocess.hpp"
#include "occ/prt.hpp"

namespace occ {

std::size_t locate_header(const std::vector<int>& symbols, const PacketSpec& spec) {
    spec.validate();
    const std::size_t h = spec.header_bits.size();
    if (symbols.size() < h)
        throw Error(ErrorKind::header_not_found, "symbol stream shorter than the header");

    std::vector<int> pattern(h);
    for (std::size_t i = 0; i < h; ++i) pattern[i] = spec.header_bits[i] ? 3 : 0;

    const auto tolerance = static_cast<std::size_t>(0.2 * static_cast<double>(h));
    std::size_t best_index = 0;
    std::size_t best_distance = h + 1;
    for (std::size_t start = 0; start + h <= symbols.size(); ++start) {
        std::size_t distance = 0;
        for (std::size_t i = 0; i < h && distance < best_distance; ++i)
            distance += symbols[start + i] != pattern[i];
        if (distance < best_distance) {
            best_distance = distance;
            best_index = start;
            if (best_distance == 0) break;
        }
    }
    if (best_distance > tolerance)
        throw Error(ErrorKind::header_not_found,
                    "no window within " + std::to_string(tolerance) + " symbol errors of the header");
    return best_index;
}

std::pair<Bits, Bits> reconstruct_packet(const std::vector<int>& symbols,
                                         std::size_t header_index, const PacketSpec& spec) {
    spec.validate();
    const std::size_t packet = spec.packet_bits();
    const std::size_t header = spec.header_bits.size();
    const std::size_t payload = spec.payload_len_bits;

    if (header_index + packet > symbols.size())
        throw Error(ErrorKind::incomplete_packet, "no complete packet after the header");

    std::vector<int> pattern(header);
    for (std::size_t i = 0; i < header; ++i) pattern[i] = spec.header_bits[i] ? 3 : 0;
    const auto tolerance = static_cast<std::size_t>(0.2 * static_cast<double>(header));

    // Payload offsets of every repetition whose payload region is fully
    // visible. The located header may belong to a later repetition, in
    // which case earlier copies still contribute their payload even
    // though their own header was clipped. A copy only joins the vote if
    // its own header verifies at the expected position (or is clipped at
    // the stream edge); a symbol slip shifts the alternating header and
    // fails this check, keeping the damaged copy out.
    std::vector<std::size_t> starts;
    for (int r = -(spec.repetitions - 1); r < spec.repetitions; ++r) {
        const long head = static_cast<long>(header_index) +
                          static_cast<long>(r) * static_cast<long>(packet);
        const long start = head + static_cast<long>(header);
        if (start < 0) continue;
        if (static_cast<std::size_t>(start) + payload > symbols.size()) continue;

        if (head >= 0) {
            std::size_t distance = 0;
            for (std::size_t i = 0; i < header; ++i)
                distance += symbols[static_cast<std::size_t>(head) + i] != pattern[i];
            if (distance > tolerance) continue;
        }
        starts.push_back(static_cast<std::size_t>(start));
        if (starts.size() == static_cast<std::size_t>(spec.repetitions)) break;
    }
    if (starts.empty())
        throw Error(ErrorKind::incomplete_packet, "no verifiable packet copy");

    Bits bits_a(payload), bits_b(payload);
    for (std::size_t i = 0; i < payload; ++i) {
        int votes[4] = {0, 0, 0, 0};
        int first_symbol = -1;
        for (const std::size_t start : starts) {
            const int s = symbols[start + i];
            if (s >= 0 && s <= 3) {
                ++votes[s];
                if (first_symbol < 0) first_symbol = s;
            }
        }
        int winner = first_symbol < 0 ? 0 : first_symbol;
        for (int s = 0; s < 4; ++s)
            if (votes[s] > votes[winner]) winner = s;  // ties keep the earliest copy
        bits_a[i] = static_cast<std::uint8_t>(winner / 2);
        bits_b[i] = static_cast<std::uint8_t>(winner % 2);
    }
    return {std::move(bits_a), std::move(bits_b)};
}

double bit_error_rate(const Bits& tx, const Bits& rx) {
    if (tx.size() != rx.size())
        throw Error(ErrorKind::invalid_argument, "bit sequences differ in length");
    if (tx.empty()) return 0.0;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < tx.size(); ++i) errors += tx[i] != rx[i];
    return static_cast<double>(errors) / static_cast<double>(tx.size());
}

double throughput(const PacketSpec& spec, double frame_rate) {
    if (frame_rate < 0.0)
        throw Error(ErrorKind::invalid_argument, "frame rate must be >= 0");
    return frame_rate * 2.0 * static_cast<double>(spec.payload_len_bits);
}

DecodeReport decode_column(const GrayColumn& raw, const PacketSpec& spec,
                           const DecodeParams& params) {
    const GrayColumn normalized = normalize(raw);
    const WidthEstimate est = estimate_stripe_width(normalized, spec);
    const GrayColumn front_end =
        params.equalize ? equalize_histogram(normalized, params.hist_bins) : normalized;

    DecodeReport report;
    report.method = params.method;
    report.width = est;

    SamplePlan plan;
    const GrayColumn* classified_signal = nullptr;
    GrayColumn resampled;
    if (params.method == SamplingMethod::adaptive) {
        resampled = resample_to_odd_width(front_end, est);
        plan = asm_sample(resampled, est.odd_width, params.d_len, params.min_prominence);
        classified_signal = &resampled;
    } else {
        plan = cr_sample(front_end, est);
        classified_signal = &front_end;
    }

    const ThresholdSet thresholds = prt_thresholds(*classified_signal, params.order);
    report.symbols.reserve(plan.positions.size());
    for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        const auto row = std::min(static_cast<std::size_t>(std::max(plan.positions[i], 0)),
                                  thresholds.length - 1);
        report.symbols.push_back(classify(plan.values[i], row, thresholds));
    }

    report.header_index = locate_header(report.symbols, spec);
    auto payloads = reconstruct_packet(report.symbols, report.header_index, spec);
    report.payload_a = std::move(payloads.first);
    report.payload_b = std::move(payloads.second);

    const std::size_t packet = spec.packet_bits();
    const std::size_t header_len = spec.header_bits.size();
    for (int r = -(spec.repetitions - 1); r < spec.repetitions; ++r) {
        const long start = static_cast<long>(report.header_index) +
                           static_cast<long>(r) * static_cast<long>(packet) +
                           static_cast<long>(header_len);
        if (start < 0) continue;
        if (static_cast<std::size_t>(start) + spec.payload_len_bits > report.symbols.size())
            continue;
        if (report.copies_used < spec.repetitions) ++report.copies_used;
    }

    report.throughput_bps = throughput(spec, params.frame_rate);
    report.config_echo["method"] = method_name(params.method);
    report.config_echo["order"] = std::to_string(params.order);
    report.config_echo["d_len"] = std::to_string(params.d_len);
    report.config_echo["equalize"] = params.equalize ? "1" : "0";
    report.config_echo["hist_bins"] = std::to_string(params.hist_bins);
    report.config_echo["preprocess_order"] =
        params.equalize ? "normalize,equalize,resample" : "normalize,resample";
    return report;
}

void score_report(DecodeReport& report, const Bits& tx_payload_a, const Bits& tx_payload_b,
                  const PacketSpec& spec) {
    const double ber_a = bit_error_rate(tx_payload_a, report.payload_a);
    const double ber_b = bit_error_rate(tx_payload_b, report.payload_b);
    report.ber = (ber_a + ber_b) / 2.0;

    if (tx_payload_a.size() != tx_payload_b.size())
        throw Error(ErrorKind::invalid_argument, "reference payloads differ in length");
    std::size_t symbol_errors = 0;
    for (std::size_t i = 0; i < tx_payload_a.size(); ++i) {
        const int tx = 2 * tx_payload_a[i] + tx_payload_b[i];
        const int rx = 2 * report.payload_a[i] + report.payload_b[i];
        symbol_errors += tx != rx;
    }
    report.symbol_error_rate =
        tx_payload_a.empty() ? 0.0
                             : static_cast<double>(symbol_errors) /
                                   static_cast<double>(tx_payload_a.size());
    (void)spec;
}

}  // namespace occ
