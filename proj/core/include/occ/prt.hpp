#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "occ/camera.hpp"

namespace occ {

// Cubic threshold curve over the column, fit on row indices normalized
// to [0, 1] for conditioning. `values` holds the per-row evaluation.
struct ThresholdCurve {
    std::array<double, 4> coeffs{};  // c0 + c1 x + c2 x^2 + c3 x^3
    std::vector<double> values;

    double at(std::size_t row) const { return values[row]; }
};

enum class CurveRole { low, interior_low, mid, interior_high, high };

// M-1 per-row threshold curves, ascending at every row, defining M
// classification intervals.
struct ThresholdSet {
    int order = 0;
    std::size_t length = 0;
    std::vector<ThresholdCurve> curves;  // sorted low -> high
    std::vector<CurveRole> roles;        // construction role per curve
};

// Least-squares cubic fit of the column values.
ThresholdCurve fit_cubic(const GrayColumn& col);
ThresholdCurve fit_cubic(const std::vector<double>& values);

// Pointwise polarity reversal about the mid threshold: values below
// (above) the axis are reflected to the other side, the rest pass.
inline double reflect_low(double p, double mid) { return p < mid ? 2.0 * mid - p : p; }
inline double reflect_high(double p, double mid) { return p < mid ? p : 2.0 * mid - p; }

// Interior thresholds between refined low/high curves for one row:
// mid +/- m * gap / ((order-2)/2) for m = 1 .. (order-4)/2, merged with
// {low, mid, high} and sorted. Returns order-1 values.
std::vector<double> interior_threshold_values(double low, double mid, double high, int order);

// The full threshold cascade: mid fit, polarity reversals for the raw
// upper/lower fits, clamp refinement, interior expansion for order > 4,
// then a per-row sort that enforces the nesting invariant.
ThresholdSet prt_thresholds(const GrayColumn& col, int order);

// Number of curves at this row strictly below the value; a value exactly
// on a curve resolves to the higher interval.
int classify(double value, std::size_t row, const ThresholdSet& thresholds);

}  // namespace occ
