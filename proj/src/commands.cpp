#include "friendnet/commands.hpp"

#include <algorithm>
#include <fstream>

#include "friendnet/config.hpp"
#include "friendnet/errors.hpp"
#include "friendnet/meanfield.hpp"
#include "friendnet/simulate.hpp"
#include "friendnet/stats.hpp"

namespace friendnet::io {

namespace {

std::string extension_for(const std::string& format) {
    if (format == "csv") return ".csv";
    if (format == "json") return ".json";
    throw ValidationError("output format must be 'csv' or 'json'");
}

std::vector<double> linspace(double low, double high, int points) {
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    if (!(low < high)) throw ValidationError("grid bounds must satisfy low < high");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            low + (high - low) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.back() = high;
    return grid;
}

/// Piecewise-linear interpolation of an analytic curve artifact.
double interpolate_curve(const CurveArtifact& curve, double p) {
    const auto& pts = curve.points;
    if (pts.empty()) throw ValidationError("analytic curve artifact has no points");
    if (p <= pts.front().p_center) return pts.front().mean_degree;
    if (p >= pts.back().p_center) return pts.back().mean_degree;
    std::size_t hi = 1;
    while (hi < pts.size() && pts[hi].p_center < p) ++hi;
    const auto& a = pts[hi - 1];
    const auto& b = pts[hi];
    const double t = (p - a.p_center) / (b.p_center - a.p_center);
    return a.mean_degree + t * (b.mean_degree - a.mean_degree);
}

void check_digests(const std::string& a, const std::string& b, bool force) {
    if (force) return;
    if (a.empty() || b.empty()) return;
    if (a != b)
        throw ValidationError(
            "config digests differ between the compared artifacts (pass --force to override)");
}

}  // namespace

RunArtifacts cmd_simulate(const cases::SimulationPlan& plan, const std::filesystem::path& out_dir,
                          int jobs) {
    plan.model.validate();
    const auto results = run_many(plan.model, plan.base_seed, plan.runs, jobs);
    SampleSet samples = collect_sample_set(plan.model, results, plan.base_seed);
    samples.config_digest = config_digest(plan);
    RunArtifacts out;
    out.samples = out_dir / ("samples" + extension_for(plan.output.format));
    out.summary = out_dir / "run_summary.json";
    write_sample_set(out.samples, samples, plan.output.format);
    write_run_summary(out.summary, samples, results);
    return out;
}

MeanfieldArtifacts cmd_meanfield(const cases::SimulationPlan& plan,
                                 const std::filesystem::path& out_dir) {
    const std::string digest = config_digest(plan);
    meanfield::SolverOptions options;
    const auto grid = meanfield::default_personality_grid(plan.model.personality,
                                                          plan.estimation.grid_points);
    const auto joint = meanfield::joint_density(plan.model, grid, plan.estimation.k_max, options);
    const auto curve = meanfield::expected_degree_curve(plan.model, joint.p_grid, options);

    MeanfieldArtifacts out;
    const std::string ext = extension_for(plan.output.format);
    out.density = out_dir / ("analytic_density" + ext);
    out.curve = out_dir / ("analytic_curve" + ext);
    write_grid(out.density,
               to_artifact(joint, digest, !plan.model.personality.is_interval()),
               plan.output.format);
    CurveArtifact curve_art;
    curve_art.kind = "analytic_curve";
    curve_art.config_digest = digest;
    for (const auto& pt : curve) curve_art.points.push_back({pt.p, pt.expected_degree, 0});
    write_curve(out.curve, curve_art, plan.output.format);
    return out;
}

EstimateArtifacts cmd_estimate(const std::filesystem::path& samples_path,
                               const cases::EstimationParams& params,
                               const std::filesystem::path& out_dir, const std::string& format) {
    const SampleSet samples = read_sample_set(samples_path);
    if (samples.records.empty()) throw ValidationError("samples table is empty");

    int k_count = params.k_max + 1;
    if (params.k_max <= 0) {
        double max_degree = 0.0;
        for (const auto& rec : samples.records) max_degree = std::max(max_degree, rec.degree);
        k_count = static_cast<int>(max_degree) + 1;
    }
    stats::GridSpec grid;
    grid.p_grid = linspace(samples.p_low, samples.p_high, params.grid_points);
    grid.k_count = k_count;
    const auto density = stats::kde2d(samples, grid, params.bandwidth_p, params.bandwidth_k);
    const auto curve = stats::conditional_mean_running(samples, params.window, params.stride);

    EstimateArtifacts out;
    const std::string ext = extension_for(format);
    out.density = out_dir / ("empirical_density" + ext);
    out.curve = out_dir / ("empirical_curve" + ext);
    write_grid(out.density, to_artifact(density, samples.config_digest), format);
    CurveArtifact curve_art;
    curve_art.kind = "empirical_curve";
    curve_art.config_digest = samples.config_digest;
    curve_art.window = curve.window;
    curve_art.stride = curve.stride;
    curve_art.points = curve.points;
    write_curve(out.curve, curve_art, format);
    return out;
}

CompareArtifacts cmd_compare(const CompareRequest& request, const std::filesystem::path& out_dir) {
    const bool have_curves = !request.empirical_curve.empty() && !request.analytic_curve.empty();
    const bool have_densities =
        !request.empirical_density.empty() && !request.analytic_density.empty();
    if (!have_curves && !have_densities)
        throw ValidationError("compare needs a curve pair or a density pair");

    CompareArtifacts out;
    MetricsArtifact metrics;
    const auto& thresholds = request.thresholds;
    metrics.info.emplace_back("margin", format_double(thresholds.margin));

    if (have_curves) {
        const CurveArtifact empirical = read_curve(request.empirical_curve);
        const CurveArtifact analytic = read_curve(request.analytic_curve);
        if (empirical.kind != "empirical_curve")
            throw ValidationError("expected an empirical curve at " +
                                  request.empirical_curve.string());
        if (analytic.kind != "analytic_curve")
            throw ValidationError("expected an analytic curve at " +
                                  request.analytic_curve.string());
        check_digests(empirical.config_digest, analytic.config_digest, request.force);
        metrics.config_digest = empirical.config_digest;

        stats::ConditionalCurve curve;
        curve.window = empirical.window;
        curve.stride = empirical.stride;
        curve.points = empirical.points;
        double p_low = -thresholds.margin, p_high = thresholds.margin;
        out.curve_metrics = stats::compare_conditional(
            curve, [&](double p) { return interpolate_curve(analytic, p); }, p_low, p_high);
        out.curve_slope = stats::least_squares_slope(curve);
        metrics.metrics.emplace_back("curve_sup_norm", out.curve_metrics.sup_norm);
        metrics.metrics.emplace_back("curve_mad", out.curve_metrics.mad);
        metrics.metrics.emplace_back("curve_points",
                                     static_cast<double>(out.curve_metrics.points_used));
        metrics.metrics.emplace_back("curve_slope", out.curve_slope);
        if (thresholds.max_sup >= 0.0) {
            out.thresholds_checked = true;
            if (out.curve_metrics.sup_norm > thresholds.max_sup) out.passed = false;
        }
        if (thresholds.max_mad >= 0.0) {
            out.thresholds_checked = true;
            if (out.curve_metrics.mad > thresholds.max_mad) out.passed = false;
        }
    }

    if (have_densities) {
        const GridArtifact empirical = read_grid(request.empirical_density);
        const GridArtifact analytic = read_grid(request.analytic_density);
        if (empirical.kind != "empirical_density")
            throw ValidationError("expected an empirical density at " +
                                  request.empirical_density.string());
        if (analytic.kind != "analytic_density")
            throw ValidationError("expected an analytic density at " +
                                  request.analytic_density.string());
        check_digests(empirical.config_digest, analytic.config_digest, request.force);
        if (metrics.config_digest.empty()) metrics.config_digest = empirical.config_digest;
        if (have_curves) check_digests(metrics.config_digest, empirical.config_digest, request.force);

        out.density_l1 =
            stats::compare_density(to_density_grid(empirical), to_joint_grid(analytic));
        metrics.metrics.emplace_back("density_l1", out.density_l1);
        if (thresholds.max_l1 >= 0.0) {
            out.thresholds_checked = true;
            if (out.density_l1 > thresholds.max_l1) out.passed = false;
        }
    }

    metrics.info.emplace_back("thresholds_checked", out.thresholds_checked ? "1" : "0");
    metrics.info.emplace_back("status", out.passed ? "pass" : "fail");
    out.metrics = out_dir / ("metrics" + extension_for(request.format));
    write_metrics(out.metrics, metrics, request.format);
    return out;
}

std::filesystem::path cmd_preset(const std::string& name, const std::filesystem::path& out_dir) {
    const cases::SimulationPlan plan = cases::preset(name);
    const std::filesystem::path path = out_dir / (name + "_config.json");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << canonical_config_string(plan);
    if (!out) throw IoError("write failed: " + path.string());
    return path;
}

}  // namespace friendnet::io
