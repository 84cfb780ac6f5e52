#pragma once

#include "occ/camera.hpp"
#include "occ/modulation.hpp"

namespace occ {

// Stripe geometry measured from the synchronization header.
struct WidthEstimate {
    double rows_per_symbol = 0.0;  // W, real
    int odd_width = 0;             // X, odd, >= 3
    double resample_factor = 0.0;  // X / W
    int header_start = 0;          // row index of the first header edge

    bool valid() const { return odd_width >= 3 && resample_factor > 0.0; }
};

// Column with maximal variance (ties resolve to the lowest index).
GrayColumn select_column(const Frame& frame);

// Affine map onto [0, 1]. A constant column carries no signal.
GrayColumn normalize(const GrayColumn& col);

// Standard CDF remap over `bins` gray levels. Monotone non-decreasing in
// the input value, so sample ranks are preserved.
GrayColumn equalize_histogram(const GrayColumn& col, int bins = 256);

// Locates the header's alternating full-swing run via mid-level (0.5)
// crossings and derives W, X and the header start row.
WidthEstimate estimate_stripe_width(const GrayColumn& col, const PacketSpec& spec);

// Linear-interpolation resampling by X/W so one symbol spans X rows.
GrayColumn resample_to_odd_width(const GrayColumn& col, const WidthEstimate& est);

}  // namespace occ
