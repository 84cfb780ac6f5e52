#include "occ/prt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occ/errors.hpp"

namespace occ {

namespace {

// Solve the 4x4 normal equations by Gaussian elimination with partial
// pivoting. The Vandermonde moments are well conditioned because row
// indices are normalized to [0, 1].
std::array<double, 4> solve_normal_equations(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;

    double sx[7] = {0, 0, 0, 0, 0, 0, 0};
    double sy[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / denom;
        double p = 1.0;
        for (int k = 0; k < 7; ++k) {
            sx[k] += p;
            if (k < 4) sy[k] += p * y[i];
            p *= x;
        }
    }

    double a[4][5];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) a[r][c] = sx[r + c];
        a[r][4] = sy[r];
    }

    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (pivot != col)
            for (int c = col; c < 5; ++c) std::swap(a[col][c], a[pivot][c]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::array<double, 4> coeffs{};
    for (int r = 3; r >= 0; --r) {
        double acc = a[r][4];
        for (int c = r + 1; c < 4; ++c) acc -= a[r][c] * coeffs[static_cast<std::size_t>(c)];
        coeffs[static_cast<std::size_t>(r)] = acc / a[r][r];
    }
    return coeffs;
}

ThresholdCurve fit_cubic_impl(const std::vector<double>& values) {
    if (values.size() < 4)
        throw Error(ErrorKind::invalid_argument, "cubic fit needs at least 4 rows");

    ThresholdCurve curve;
    curve.coeffs = solve_normal_equations(values);
    curve.values.resize(values.size());
    const double denom = static_cast<double>(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = static_cast<double>(i) / denom;
        curve.values[i] =
            curve.coeffs[0] + x * (curve.coeffs[1] + x * (curve.coeffs[2] + x * curve.coeffs[3]));
    }
    return curve;
}

}  // namespace

ThresholdCurve fit_cubic(const GrayColumn& col) { return fit_cubic_impl(col.values); }
ThresholdCurve fit_cubic(const std::vector<double>& values) { return fit_cubic_impl(values); }

std::vector<double> interior_threshold_values(double low, double mid, double high, int order) {
    if (order < 4 || order % 2 != 0)
        throw Error(ErrorKind::invalid_argument, "interior expansion needs even order >= 4");

    std::vector<double> values = {low, mid, high};
    const double half_intervals = static_cast<double>(order - 2) / 2.0;
    for (int m = 1; m <= (order - 4) / 2; ++m) {
        values.push_back(mid + m * (high - mid) / half_intervals);
        values.push_back(mid - m * (mid - low) / half_intervals);
    }
    std::sort(values.begin(), values.end());
    return values;
}

ThresholdSet prt_thresholds(const GrayColumn& col, int order) {
    if (order < 2 || order % 2 != 0)
        throw Error(ErrorKind::invalid_argument, "modulation order must be even and >= 2");
    if (!col.normalized)
        throw Error(ErrorKind::invalid_argument, "thresholds expect a normalized column");

    const std::vector<double>& p = col.values;
    const std::size_t n = p.size();

    ThresholdSet set;
    set.order = order;
    set.length = n;

    ThresholdCurve mid = fit_cubic_impl(p);
    if (order == 2) {
        // Binary system: the cubic fit alone is the slicer.
        set.curves.push_back(std::move(mid));
        set.roles.push_back(CurveRole::mid);
        return set;
    }

    std::vector<double> work(n);

    // Raw upper threshold: invert the low side about the mid curve.
    for (std::size_t i = 0; i < n; ++i) work[i] = reflect_low(p[i], mid.values[i]);
    const ThresholdCurve upper_raw = fit_cubic_impl(work);

    // Raw lower threshold: invert the high side.
    for (std::size_t i = 0; i < n; ++i) work[i] = reflect_high(p[i], mid.values[i]);
    const ThresholdCurve lower_raw = fit_cubic_impl(work);

    // Refinement: clamp toward the raw curves and refit, which pulls the
    // final curves between the outer and inner symbol bands.
    for (std::size_t i = 0; i < n; ++i) work[i] = std::max(p[i], upper_raw.values[i]);
    ThresholdCurve high = fit_cubic_impl(work);

    for (std::size_t i = 0; i < n; ++i) work[i] = std::min(p[i], lower_raw.values[i]);
    ThresholdCurve low = fit_cubic_impl(work);

    const auto n_curves = static_cast<std::size_t>(order - 1);
    set.curves.resize(n_curves);
    for (auto& curve : set.curves) curve.values.resize(n);

    // Interior curves per Eq-style expansion on the refined values, then a
    // per-row sort: least-squares fits of pointwise-ordered data are not
    // pointwise ordered in general, and classification needs nesting.
    for (std::size_t i = 0; i < n; ++i) {
        const auto row_values =
            interior_threshold_values(low.values[i], mid.values[i], high.values[i], order);
        for (std::size_t c = 0; c < n_curves; ++c) set.curves[c].values[i] = row_values[c];
    }

    set.roles.assign(n_curves, CurveRole::interior_low);
    set.roles.front() = CurveRole::low;
    set.roles.back() = CurveRole::high;
    set.roles[n_curves / 2] = CurveRole::mid;
    for (std::size_t c = n_curves / 2 + 1; c + 1 < n_curves; ++c)
        set.roles[c] = CurveRole::interior_high;

    set.curves[0].coeffs = low.coeffs;
    set.curves[n_curves / 2].coeffs = mid.coeffs;
    set.curves[n_curves - 1].coeffs = high.coeffs;
    return set;
}

int classify(double value, std::size_t row, const ThresholdSet& thresholds) {
    if (thresholds.curves.empty())
        throw Error(ErrorKind::invalid_argument, "empty threshold set");
    if (row >= thresholds.length)
        throw Error(ErrorKind::invalid_argument, "row " + std::to_string(row) + " out of range");

    int symbol = 0;
    for (const auto& curve : thresholds.curves)
        if (curve.values[row] <= value) ++symbol;
    return symbol;
}

}  // namespace occ
