#include "occ/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occ/errors.hpp"

namespace occ {

const char* method_name(SamplingMethod method) {
    return method == SamplingMethod::adaptive ? "ASM" : "CR";
}

ExtremaList find_local_extrema(const GrayColumn& col, double min_prominence) {
    const auto& v = col.values;
    if (v.size() < 3)
        throw Error(ErrorKind::invalid_argument, "need at least 3 rows for extrema");
    ExtremaList out;

    const std::size_t n = v.size();
    // Drop on one side of a candidate before a strictly higher (lower)
    // value appears; the boundary counts as an open end.
    auto prominence = [&](std::size_t s, std::size_t e, bool is_max) {
        double left_ref = v[s];
        for (std::size_t i = s; i-- > 0;) {
            if (is_max ? v[i] > v[s] : v[i] < v[s]) break;
            left_ref = is_max ? std::min(left_ref, v[i]) : std::max(left_ref, v[i]);
        }
        double right_ref = v[e];
        for (std::size_t i = e + 1; i < n; ++i) {
            if (is_max ? v[i] > v[e] : v[i] < v[e]) break;
            right_ref = is_max ? std::min(right_ref, v[i]) : std::max(right_ref, v[i]);
        }
        const double left_drop = is_max ? v[s] - left_ref : left_ref - v[s];
        const double right_drop = is_max ? v[e] - right_ref : right_ref - v[e];
        return std::min(left_drop, right_drop);
    };

    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && v[i] == v[run_start]) continue;
        const std::size_t run_end = i - 1;
        // Interior plateaus only: both neighbors must exist.
        if (run_start > 0 && run_end + 1 < n) {
            const double left = v[run_start - 1];
            const double right = v[run_end + 1];
            const double val = v[run_start];
            const bool is_max = val > left && val > right;
            const bool is_min = val < left && val < right;
            if (is_max || is_min) {
                if (prominence(run_start, run_end, is_max) >= min_prominence) {
                    // Plateau center; midpoints round up.
                    out.positions.push_back(static_cast<int>((run_start + run_end + 1) / 2));
                    out.kinds.push_back(is_max ? ExtremumKind::maximum : ExtremumKind::minimum);
                }
            }
        }
        run_start = i;
    }
    return out;
}

AuxiliaryExtrema auxiliary_extrema(const ExtremaList& extrema, int odd_width) {
    if (odd_width < 3 || odd_width % 2 == 0)
        throw Error(ErrorKind::invalid_argument, "stripe width must be odd and >= 3");

    const int lo = (odd_width + 1) / 2;      // ceil(X/2)
    const int hi = (3 * odd_width) / 2;      // floor(3X/2)

    AuxiliaryExtrema out;
    for (std::size_t i = 0; i + 1 < extrema.positions.size(); ++i) {
        const int gap = extrema.positions[i + 1] - extrema.positions[i];
        if (gap >= lo && gap <= hi) {
            out.positions.push_back(extrema.positions[i]);
            out.positions.push_back(extrema.positions[i + 1]);
        }
    }
    std::sort(out.positions.begin(), out.positions.end());
    out.positions.erase(std::unique(out.positions.begin(), out.positions.end()),
                        out.positions.end());
    if (out.positions.size() < 2)
        throw Error(ErrorKind::insufficient_extrema,
                    "fewer than two extrema passed the stripe-width window");
    return out;
}

std::vector<double> segment_rescale(std::span<const double> segment, int k, int odd_width,
                                    double next_extremum) {
    if (segment.empty())
        throw Error(ErrorKind::invalid_argument, "empty segment");
    if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
    if (odd_width < 3 || odd_width % 2 == 0)
        throw Error(ErrorKind::invalid_argument, "stripe width must be odd and >= 3");

    const std::size_t target = static_cast<std::size_t>(k) * static_cast<std::size_t>(odd_width);
    const std::size_t len = segment.size();
    std::vector<double> out;
    out.reserve(target);

    if (len == target) {
        out.assign(segment.begin(), segment.end());
    } else if (len < target) {
        // Expand by linear interpolation across the original span.
        if (len == 1) {
            out.assign(target, segment[0]);
        } else {
            const double step = static_cast<double>(len - 1) / static_cast<double>(target - 1);
            for (std::size_t i = 0; i < target; ++i) {
                const double src = static_cast<double>(i) * step;
                auto idx = static_cast<std::size_t>(src);
                if (idx >= len - 1) idx = len - 2;
                const double frac = src - static_cast<double>(idx);
                out.push_back(segment[idx] + frac * (segment[idx + 1] - segment[idx]));
            }
        }
    } else {
        // Shrink by keeping target samples at even spacing (deterministic
        // stand-in for the random removal).
        for (std::size_t i = 0; i < target; ++i) {
            const auto idx = static_cast<std::size_t>(
                (static_cast<unsigned long long>(i) * len) / target);
            out.push_back(segment[idx]);
        }
    }

    out.back() = next_extremum;
    return out;
}

SamplePlan asm_sample(const GrayColumn& col, int odd_width, int d_len, double min_prominence) {
    if (d_len < 1)
        throw Error(ErrorKind::invalid_argument, "objective table length must be >= 1");

    const ExtremaList extrema = find_local_extrema(col, min_prominence);
    const AuxiliaryExtrema anchors = auxiliary_extrema(extrema, odd_width);
    const auto& fl = anchors.positions;

    SamplePlan plan;
    plan.method = SamplingMethod::adaptive;
    plan.odd_width = odd_width;

    // Rebuild the signal segment by segment, each stretched or shrunk to
    // k*X samples. anchor_new[t] is the displaced position of fl[t+1].
    std::vector<double> rebuilt;
    std::vector<long> anchor_new;
    const long origin = fl.front();
    long new_pos = origin;
    for (std::size_t j = 0; j + 1 < fl.size(); ++j) {
        const long delta = fl[j + 1] - fl[j];
        int k = 1;
        double best = std::abs(delta - static_cast<long>(odd_width));
        for (int cand = 2; cand <= d_len; ++cand) {
            const double err =
                std::abs(delta - static_cast<long>(cand) * static_cast<long>(odd_width));
            if (err < best) {
                best = err;
                k = cand;
            }
        }

        auto begin = col.values.begin() + fl[j];
        const std::span<const double> segment(&*begin, static_cast<std::size_t>(delta));
        const double next_value = col.values[static_cast<std::size_t>(fl[j + 1])];
        auto rescaled = segment_rescale(segment, k, odd_width, next_value);
        rebuilt.insert(rebuilt.end(), rescaled.begin(), rescaled.end());

        new_pos += static_cast<long>(k) * odd_width;
        anchor_new.push_back(new_pos);
        plan.segments.push_back(
            {k, static_cast<double>(k * odd_width) / static_cast<double>(delta)});
    }

    // Stride X between displaced anchors; every anchor is itself a sample.
    for (std::size_t m = 0; m + 1 < anchor_new.size(); ++m) {
        const long gap = anchor_new[m + 1] - anchor_new[m];
        for (long beta = 0; beta < gap / odd_width; ++beta) {
            plan.positions.push_back(static_cast<int>(anchor_new[m] + beta * odd_width));
            plan.sample_segment.push_back(static_cast<int>(m + 1));
        }
    }
    plan.positions.push_back(static_cast<int>(anchor_new.back()));
    plan.sample_segment.push_back(static_cast<int>(anchor_new.size() - 1));

    plan.values.reserve(plan.positions.size());
    for (int pos : plan.positions) {
        auto idx = static_cast<std::size_t>(pos - origin);
        if (idx >= rebuilt.size()) idx = rebuilt.size() - 1;
        plan.values.push_back(rebuilt[idx]);
    }
    return plan;
}

SamplePlan cr_sample(const GrayColumn& col, const WidthEstimate& est) {
    if (!est.valid())
        throw Error(ErrorKind::invalid_argument, "invalid width estimate");
    if (est.header_start < 0 ||
        static_cast<std::size_t>(est.header_start) >= col.values.size())
        throw Error(ErrorKind::invalid_argument, "header start outside the column");

    SamplePlan plan;
    plan.method = SamplingMethod::clock_recovery;
    plan.odd_width = est.odd_width;
    const int x = est.odd_width;
    for (long pos = est.header_start + x / 2; pos < static_cast<long>(col.values.size());
         pos += x) {
        plan.positions.push_back(static_cast<int>(pos));
        plan.values.push_back(col.values[static_cast<std::size_t>(pos)]);
        plan.sample_segment.push_back(-1);
    }
    return plan;
}

}  // namespace occ
