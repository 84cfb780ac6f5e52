#include "occ/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "occ/errors.hpp"

namespace occ {

GrayColumn select_column(const Frame& frame) {
    if (frame.columns.empty())
        throw Error(ErrorKind::invalid_argument, "frame has no columns");

    std::size_t best = 0;
    double best_var = -1.0;
    for (std::size_t c = 0; c < frame.columns.size(); ++c) {
        const auto& v = frame.columns[c].values;
        if (v.empty()) continue;
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= static_cast<double>(v.size());
        if (var > best_var) {
            best_var = var;
            best = c;
        }
    }
    return frame.columns[best];
}

GrayColumn normalize(const GrayColumn& col) {
    if (col.values.empty())
        throw Error(ErrorKind::invalid_argument, "empty column");
    const auto [lo_it, hi_it] = std::minmax_element(col.values.begin(), col.values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo))
        throw Error(ErrorKind::degenerate_signal, "constant column cannot be normalized");

    GrayColumn out = col;
    const double scale = 1.0 / (hi - lo);
    for (double& v : out.values) v = (v - lo) * scale;
    out.normalized = true;
    return out;
}

GrayColumn equalize_histogram(const GrayColumn& col, int bins) {
    if (!col.normalized)
        throw Error(ErrorKind::invalid_argument, "equalization expects a normalized column");
    if (bins < 2)
        throw Error(ErrorKind::invalid_argument, "need at least 2 histogram bins");

    const auto n = col.values.size();
    std::vector<std::size_t> hist(static_cast<std::size_t>(bins), 0);
    auto bin_of = [bins](double v) {
        auto b = static_cast<int>(v * bins);
        return static_cast<std::size_t>(std::clamp(b, 0, bins - 1));
    };
    for (double v : col.values) ++hist[bin_of(v)];

    std::vector<double> cdf(hist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        acc += static_cast<double>(hist[i]);
        cdf[i] = acc / static_cast<double>(n);
    }

    GrayColumn out = col;
    for (double& v : out.values) v = cdf[bin_of(v)];
    return out;
}

namespace {

// Mid-level (0.5) crossing positions, sub-row interpolated. A hysteresis
// band keeps noise chatter around the mid level from fragmenting the
// header run.
std::vector<double> mid_level_crossings(const std::vector<double>& v) {
    constexpr double kMid = 0.5;
    constexpr double kBand = 0.1;
    std::vector<double> out;

    int state = 0;  // -1 below, +1 above, 0 undecided
    for (std::size_t i = 0; i < v.size(); ++i) {
        int next = state;
        if (v[i] < kMid - kBand) next = -1;
        else if (v[i] > kMid + kBand) next = +1;
        if (next != state && state != 0) {
            // Last 0.5 crossing in the committed direction before index i.
            std::size_t j = i;
            if (next > 0) {
                while (j > 0 && !(v[j] >= kMid && v[j - 1] < kMid)) --j;
            } else {
                while (j > 0 && !(v[j] <= kMid && v[j - 1] > kMid)) --j;
            }
            if (j > 0) {
                out.push_back(static_cast<double>(j - 1) +
                              (kMid - v[j - 1]) / (v[j] - v[j - 1]));
            }
        }
        state = next;
    }
    return out;
}

}  // namespace

WidthEstimate estimate_stripe_width(const GrayColumn& col, const PacketSpec& spec) {
    if (!col.normalized)
        throw Error(ErrorKind::invalid_argument, "width estimation expects a normalized column");
    spec.validate();

    const auto crossings = mid_level_crossings(col.values);
    const std::size_t min_gaps = std::max<std::size_t>(1, spec.header_bits.size() - 2);
    if (crossings.size() < min_gaps + 1)
        throw Error(ErrorKind::header_not_found, "too few mid-level crossings for a header");

    // Longest run of mutually consistent crossing gaps; the header's
    // alternation gives uniform spacing while payload regions break it.
    constexpr double kGapTolerance = 0.25;
    const std::size_t n_gaps = crossings.size() - 1;
    std::vector<double> gaps(n_gaps);
    for (std::size_t i = 0; i < n_gaps; ++i) gaps[i] = crossings[i + 1] - crossings[i];

    std::size_t best_start = 0, best_count = 1;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i < n_gaps; ++i) {
        if (std::abs(gaps[i] - gaps[i - 1]) > kGapTolerance * std::max(gaps[i], gaps[i - 1]))
            run_start = i;
        if (i - run_start + 1 > best_count) {
            best_count = i - run_start + 1;
            best_start = run_start;
        }
    }

    if (best_count < min_gaps)
        throw Error(ErrorKind::header_not_found,
                    "no alternating run of at least the header length");

    const double first = crossings[best_start];
    const double last = crossings[best_start + best_count];
    const double w = (last - first) / static_cast<double>(best_count);
    if (!(w > 0.5))
        throw Error(ErrorKind::header_not_found, "estimated stripe width is degenerate");

    long rounded = std::lround(w);
    if (rounded < 3) rounded = 3;
    if (rounded % 2 == 0) ++rounded;

    WidthEstimate est;
    est.rows_per_symbol = w;
    est.odd_width = static_cast<int>(rounded);
    est.resample_factor = static_cast<double>(rounded) / w;
    est.header_start = static_cast<int>(std::lround(first));
    return est;
}

GrayColumn resample_to_odd_width(const GrayColumn& col, const WidthEstimate& est) {
    if (!est.valid())
        throw Error(ErrorKind::invalid_argument, "invalid width estimate");
    if (col.values.empty())
        throw Error(ErrorKind::invalid_argument, "empty column");

    const double factor = est.resample_factor;
    if (factor == 1.0) return col;

    const std::size_t old_len = col.values.size();
    const auto new_len = static_cast<std::size_t>(
        std::lround(static_cast<double>(old_len) * factor));

    GrayColumn out;
    out.normalized = col.normalized;
    out.interp_factor = col.interp_factor * factor;
    out.values.resize(new_len);
    const double max_src = static_cast<double>(old_len - 1);
    for (std::size_t i = 0; i < new_len; ++i) {
        const double src = std::min(static_cast<double>(i) / factor, max_src);
        const auto idx = static_cast<std::size_t>(src);
        const double frac = src - static_cast<double>(idx);
        const double a = col.values[idx];
        const double b = col.values[std::min(idx + 1, old_len - 1)];
        out.values[i] = a + frac * (b - a);
    }
    return out;
}

}  // namespace occ
