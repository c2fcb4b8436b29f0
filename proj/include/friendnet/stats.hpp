#pragma once

#include <functional>
#include <vector>

#include "friendnet/meanfield.hpp"
#include "friendnet/simulate.hpp"

namespace friendnet::stats {

/// Empirical trait/degree density estimated from samples.
struct DensityGrid {
    std::vector<double> p_grid;
    std::vector<double> p_weights;  // trapezoid weights on the trait axis
    int k_count = 0;
    std::vector<double> values;  // row-major, p index outer
    double bandwidth_p = 0.0;
    double bandwidth_k = 0.0;
    bool bandwidth_fallback = false;
    long long sample_count = 0;

    double at(std::size_t ip, int k) const {
        return values[ip * static_cast<std::size_t>(k_count) + static_cast<std::size_t>(k)];
    }
    double& at(std::size_t ip, int k) {
        return values[ip * static_cast<std::size_t>(k_count) + static_cast<std::size_t>(k)];
    }
    double integral() const;
};

struct GridSpec {
    std::vector<double> p_grid;  // strictly increasing
    int k_count = 0;             // degree axis covers 0 .. k_count-1
};

/// Product-Gaussian kernel density estimate of the joint trait/degree
/// distribution. Bandwidths of 0 select Scott's rule per axis
/// (std * n^(-1/6)); a zero-variance axis falls back to a small fixed
/// bandwidth and sets bandwidth_fallback. Needs at least 2 samples.
DensityGrid kde2d(const SampleSet& samples, const GridSpec& grid, double bandwidth_p = 0.0,
                  double bandwidth_k = 0.0);

struct CurvePoint {
    double p_center = 0.0;
    double mean_degree = 0.0;
    long window_count = 0;
};

/// Running-average estimate of E[degree | trait].
struct ConditionalCurve {
    std::vector<CurvePoint> points;
    long window = 0;
    long stride = 0;
};

/// Sorts samples by trait and averages consecutive windows of exactly
/// `window` samples advanced by `stride` (0 -> window / 10, minimum 1);
/// the final samples always get a (possibly overlapping) full window.
/// Throws ValidationError when window < 1 or window > sample count.
ConditionalCurve conditional_mean_running(const SampleSet& samples, long window, long stride = 0);

struct ConditionalMetrics {
    double sup_norm = 0.0;
    double mad = 0.0;
    long points_used = 0;
};

/// Sup-norm and mean absolute deviation between an empirical curve and an
/// analytic prediction over trait centers in [p_low, p_high]. Throws
/// ValidationError when no curve point falls in the range.
ConditionalMetrics compare_conditional(const ConditionalCurve& curve,
                                       const std::function<double(double)>& analytic,
                                       double p_low, double p_high);

/// L1 distance between two densities on the same grid: trapezoid weights
/// on the trait axis, unit weight per degree. Throws ValidationError on a
/// grid mismatch.
double compare_density(const DensityGrid& empirical, const meanfield::JointGrid& analytic);
double compare_density(const DensityGrid& a, const DensityGrid& b);

/// Least-squares slope of mean degree against trait center.
double least_squares_slope(const ConditionalCurve& curve);

}  // namespace friendnet::stats
