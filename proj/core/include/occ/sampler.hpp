#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "occ/camera.hpp"
#include "occ/preprocess.hpp"

namespace occ {

enum class ExtremumKind { maximum, minimum };

enum class SamplingMethod { adaptive, clock_recovery };

const char* method_name(SamplingMethod method);  // "ASM" / "CR"

// Merged, position-sorted local maxima and minima.
struct ExtremaList {
    std::vector<int> positions;
    std::vector<ExtremumKind> kinds;

    std::size_t size() const { return positions.size(); }
};

// Extrema admitted by the stripe-width window test.
struct AuxiliaryExtrema {
    std::vector<int> positions;
};

struct SegmentLog {
    int stride_count = 0;  // k, symbols assigned to the segment
    double ratio = 0.0;    // k*X / delta
};

// Final sampling decision. Positions index the column the values were
// read from (for the adaptive method, the per-segment rescaled signal).
struct SamplePlan {
    std::vector<int> positions;
    std::vector<double> values;
    std::vector<int> sample_segment;  // segment index per sample; -1 for CR
    SamplingMethod method = SamplingMethod::adaptive;
    int odd_width = 0;
    std::vector<SegmentLog> segments;
};

// Interior extrema with at least `min_prominence` of rise/drop on both
// sides before a higher (lower) point. Plateaus contribute their center
// index.
ExtremaList find_local_extrema(const GrayColumn& col, double min_prominence);

// Keeps extrema whose consecutive gap lies in [ceil(X/2), floor(3X/2)]
// (closed interval); both endpoints of an admitted gap qualify.
AuxiliaryExtrema auxiliary_extrema(const ExtremaList& extrema, int odd_width);

// Resizes the segment to exactly k*X samples: linear interpolation when
// expanding, evenly spaced removal when shrinking, and the final element
// always becomes the next anchor's gray value.
std::vector<double> segment_rescale(std::span<const double> segment, int k, int odd_width,
                                    double next_extremum);

// Adaptive sampling: anchor on validated extrema, rescale each segment
// to a whole number of stripe widths, then stride X within segments.
SamplePlan asm_sample(const GrayColumn& col, int odd_width, int d_len,
                      double min_prominence = 0.1);

// Conventional baseline: fixed integer stride X from the header edge.
SamplePlan cr_sample(const GrayColumn& col, const WidthEstimate& est);

}  // namespace occ
