#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "friendnet/meanfield.hpp"
#include "friendnet/simulate.hpp"
#include "friendnet/stats.hpp"

namespace friendnet::io {

/// On-disk artifacts come in two formats. CSV files carry their metadata
/// as leading "# key: value" lines followed by a header row; JSON files
/// are {"meta": {...}, "header": [...], "rows": [[...], ...]}. Readers
/// sniff the format from the content.

void write_sample_set(const std::filesystem::path& path, const SampleSet& samples,
                      const std::string& format);
SampleSet read_sample_set(const std::filesystem::path& path);

/// Joint trait/degree grid, analytic ("analytic_density") or estimated
/// ("empirical_density"). Rows are (personality, degree, density), trait
/// index outer.
struct GridArtifact {
    std::string kind;
    std::string config_digest;
    std::vector<double> p_grid;
    int k_count = 0;
    std::vector<double> values;  // row-major, p outer
    // p-axis integration weights: "trapezoid" or "unit" (discrete traits)
    std::string p_weight_kind = "trapezoid";
    // empirical extras
    double bandwidth_p = 0.0;
    double bandwidth_k = 0.0;
    bool bandwidth_fallback = false;
    long long sample_count = 0;

    std::vector<double> p_weights() const;
};
void write_grid(const std::filesystem::path& path, const GridArtifact& grid,
                const std::string& format);
GridArtifact read_grid(const std::filesystem::path& path);

GridArtifact to_artifact(const meanfield::JointGrid& grid, const std::string& config_digest,
                         bool discrete_traits);
GridArtifact to_artifact(const stats::DensityGrid& grid, const std::string& config_digest);
meanfield::JointGrid to_joint_grid(const GridArtifact& artifact);
stats::DensityGrid to_density_grid(const GridArtifact& artifact);

/// Expected/mean degree against trait: "analytic_curve" rows are
/// (personality, expected_degree); "empirical_curve" rows are
/// (personality, mean_degree, window_count) plus window/stride metadata.
struct CurveArtifact {
    std::string kind;
    std::string config_digest;
    long window = 0;
    long stride = 0;
    std::vector<stats::CurvePoint> points;
};
void write_curve(const std::filesystem::path& path, const CurveArtifact& curve,
                 const std::string& format);
CurveArtifact read_curve(const std::filesystem::path& path);

struct MetricsArtifact {
    std::string config_digest;
    std::vector<std::pair<std::string, std::string>> info;     // status, margin, ...
    std::vector<std::pair<std::string, double>> metrics;
};
void write_metrics(const std::filesystem::path& path, const MetricsArtifact& metrics,
                   const std::string& format);

/// Per-run event ledger written next to the samples (always JSON).
void write_run_summary(const std::filesystem::path& path, const SampleSet& samples,
                       const std::vector<RunResult>& results);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace friendnet::io
