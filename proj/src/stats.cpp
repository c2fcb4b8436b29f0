#include "friendnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "friendnet/errors.hpp"

namespace friendnet::stats {

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
    std::vector<double> weights(grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double half = 0.5 * (grid[i + 1] - grid[i]);
        if (!(half > 0.0)) throw ValidationError("trait grid must be strictly increasing");
        weights[i] += half;
        weights[i + 1] += half;
    }
    return weights;
}

bool grids_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tol = 1e-12 * std::max(1.0, std::abs(a[i]));
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

double l1_distance(const std::vector<double>& p_weights, int k_count,
                   const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t ip = 0; ip < p_weights.size(); ++ip) {
        double row = 0.0;
        const std::size_t base = ip * static_cast<std::size_t>(k_count);
        for (int k = 0; k < k_count; ++k)
            row += std::abs(a[base + static_cast<std::size_t>(k)] -
                            b[base + static_cast<std::size_t>(k)]);
        acc += p_weights[ip] * row;
    }
    return acc;
}

}  // namespace

double DensityGrid::integral() const {
    double acc = 0.0;
    for (std::size_t ip = 0; ip < p_grid.size(); ++ip) {
        double row = 0.0;
        for (int k = 0; k < k_count; ++k) row += at(ip, k);
        acc += p_weights[ip] * row;
    }
    return acc;
}

DensityGrid kde2d(const SampleSet& samples, const GridSpec& grid, double bandwidth_p,
                  double bandwidth_k) {
    const auto& records = samples.records;
    const std::size_t n = records.size();
    if (n < 2) throw ValidationError("density estimation needs at least 2 samples");
    if (grid.p_grid.size() < 2) throw ValidationError("density grid needs at least 2 trait points");
    if (grid.k_count < 1) throw ValidationError("density grid needs at least 1 degree point");
    if (bandwidth_p < 0.0 || bandwidth_k < 0.0)
        throw ValidationError("bandwidths must be nonnegative");

    double mean_p = 0.0, mean_k = 0.0;
    for (const auto& rec : records) {
        mean_p += rec.personality;
        mean_k += rec.degree;
    }
    mean_p /= static_cast<double>(n);
    mean_k /= static_cast<double>(n);
    double var_p = 0.0, var_k = 0.0;
    for (const auto& rec : records) {
        var_p += (rec.personality - mean_p) * (rec.personality - mean_p);
        var_k += (rec.degree - mean_k) * (rec.degree - mean_k);
    }
    var_p /= static_cast<double>(n - 1);
    var_k /= static_cast<double>(n - 1);

    const double scott = std::pow(static_cast<double>(n), -1.0 / 6.0);
    constexpr double kMinBandwidth = 1e-3;
    bool fallback = false;
    double hp = bandwidth_p;
    if (hp == 0.0) {
        hp = std::sqrt(var_p) * scott;
        if (!(hp > 0.0)) {
            hp = kMinBandwidth;
            fallback = true;
        }
    }
    double hk = bandwidth_k;
    if (hk == 0.0) {
        hk = std::sqrt(var_k) * scott;
        if (!(hk > 0.0)) {
            hk = kMinBandwidth;
            fallback = true;
        }
    }

    DensityGrid out;
    out.p_grid = grid.p_grid;
    out.p_weights = trapezoid_weights(grid.p_grid);
    out.k_count = grid.k_count;
    out.values.assign(grid.p_grid.size() * static_cast<std::size_t>(grid.k_count), 0.0);
    out.bandwidth_p = hp;
    out.bandwidth_k = hk;
    out.bandwidth_fallback = fallback;
    out.sample_count = static_cast<long long>(n);

    // Degrees are integers, so samples sharing a degree share the whole
    // degree-axis factor: accumulate the trait-axis sums per distinct
    // degree first, then sweep the degree axis once per distinct value.
    std::map<long long, std::vector<double>> trait_sums;
    const std::size_t np = grid.p_grid.size();
    for (const auto& rec : records) {
        const long long d = std::llround(rec.degree);
        auto [it, inserted] = trait_sums.try_emplace(d);
        if (inserted) it->second.assign(np, 0.0);
        auto& row = it->second;
        for (std::size_t ip = 0; ip < np; ++ip) {
            const double z = (grid.p_grid[ip] - rec.personality) / hp;
            if (std::abs(z) > 10.0) continue;
            row[ip] += std::exp(-0.5 * z * z);
        }
    }
    const double cutoff = 10.0 * hk;
    for (const auto& [d, row] : trait_sums) {
        const int k_lo = std::max(0, static_cast<int>(std::floor(static_cast<double>(d) - cutoff)));
        const int k_hi =
            std::min(grid.k_count - 1, static_cast<int>(std::ceil(static_cast<double>(d) + cutoff)));
        for (int k = k_lo; k <= k_hi; ++k) {
            const double z = (static_cast<double>(k) - static_cast<double>(d)) / hk;
            const double gk = std::exp(-0.5 * z * z);
            for (std::size_t ip = 0; ip < np; ++ip) out.at(ip, k) += gk * row[ip];
        }
    }
    const double norm = 1.0 / (static_cast<double>(n) * 2.0 * M_PI * hp * hk);
    for (double& v : out.values) v *= norm;
    return out;
}

ConditionalCurve conditional_mean_running(const SampleSet& samples, long window, long stride) {
    const std::size_t n = samples.records.size();
    if (window < 1) throw ValidationError("window must be at least 1");
    if (static_cast<std::size_t>(window) > n)
        throw ValidationError("window exceeds the sample count");
    if (stride <= 0) stride = std::max<long>(1, window / 10);

    std::vector<SampleRecord> sorted = samples.records;
    std::sort(sorted.begin(), sorted.end(), [](const SampleRecord& a, const SampleRecord& b) {
        if (a.personality != b.personality) return a.personality < b.personality;
        if (a.run_id != b.run_id) return a.run_id < b.run_id;
        return a.node_id < b.node_id;
    });

    ConditionalCurve curve;
    curve.window = window;
    curve.stride = stride;
    const std::size_t w = static_cast<std::size_t>(window);

    // Prefix sums for O(1) window aggregates.
    std::vector<double> cum_p(n + 1, 0.0), cum_k(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        cum_p[i + 1] = cum_p[i] + sorted[i].personality;
        cum_k[i + 1] = cum_k[i] + sorted[i].degree;
    }

    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + w <= n; s += static_cast<std::size_t>(stride)) starts.push_back(s);
    if (starts.empty() || starts.back() != n - w) starts.push_back(n - w);

    double prev_center = -std::numeric_limits<double>::infinity();
    for (std::size_t s : starts) {
        const double center = (cum_p[s + w] - cum_p[s]) / static_cast<double>(w);
        const double mean_k = (cum_k[s + w] - cum_k[s]) / static_cast<double>(w);
        if (center <= prev_center) continue;  // trait ties: keep centers strictly increasing
        curve.points.push_back({center, mean_k, window});
        prev_center = center;
    }
    return curve;
}

ConditionalMetrics compare_conditional(const ConditionalCurve& curve,
                                       const std::function<double(double)>& analytic,
                                       double p_low, double p_high) {
    ConditionalMetrics metrics;
    double abs_sum = 0.0;
    for (const auto& pt : curve.points) {
        if (pt.p_center < p_low || pt.p_center > p_high) continue;
        const double diff = std::abs(pt.mean_degree - analytic(pt.p_center));
        metrics.sup_norm = std::max(metrics.sup_norm, diff);
        abs_sum += diff;
        ++metrics.points_used;
    }
    if (metrics.points_used == 0)
        throw ValidationError("comparison range contains no curve points");
    metrics.mad = abs_sum / static_cast<double>(metrics.points_used);
    return metrics;
}

double compare_density(const DensityGrid& empirical, const meanfield::JointGrid& analytic) {
    if (!grids_equal(empirical.p_grid, analytic.p_grid) || empirical.k_count != analytic.k_count)
        throw ValidationError("density grids do not match");
    return l1_distance(empirical.p_weights, empirical.k_count, empirical.values, analytic.values);
}

double compare_density(const DensityGrid& a, const DensityGrid& b) {
    if (!grids_equal(a.p_grid, b.p_grid) || a.k_count != b.k_count)
        throw ValidationError("density grids do not match");
    return l1_distance(a.p_weights, a.k_count, a.values, b.values);
}

double least_squares_slope(const ConditionalCurve& curve) {
    const std::size_t n = curve.points.size();
    if (n < 2) throw ValidationError("slope estimation needs at least 2 curve points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& pt : curve.points) {
        mean_x += pt.p_center;
        mean_y += pt.mean_degree;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& pt : curve.points) {
        sxx += (pt.p_center - mean_x) * (pt.p_center - mean_x);
        sxy += (pt.p_center - mean_x) * (pt.mean_degree - mean_y);
    }
    if (!(sxx > 0.0)) throw ValidationError("slope estimation needs distinct trait centers");
    return sxy / sxx;
}

}  // namespace friendnet::stats
