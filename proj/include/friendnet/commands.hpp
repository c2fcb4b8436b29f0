#pragma once

#include <filesystem>
#include <string>

#include "friendnet/artifacts.hpp"
#include "friendnet/casestudies.hpp"

namespace friendnet::io {

/// Paths produced by one command invocation.
struct RunArtifacts {
    std::filesystem::path samples;
    std::filesystem::path summary;
};

struct MeanfieldArtifacts {
    std::filesystem::path density;
    std::filesystem::path curve;
};

struct EstimateArtifacts {
    std::filesystem::path density;
    std::filesystem::path curve;
};

struct CompareRequest {
    std::filesystem::path empirical_curve;    // empty = skip the curve pair
    std::filesystem::path analytic_curve;
    std::filesystem::path empirical_density;  // empty = skip the density pair
    std::filesystem::path analytic_density;
    cases::CompareThresholds thresholds;
    bool force = false;  // accept mismatched config digests
    std::string format = "csv";
};

struct CompareArtifacts {
    std::filesystem::path metrics;
    stats::ConditionalMetrics curve_metrics;
    double curve_slope = 0.0;
    double density_l1 = -1.0;  // -1 when the density pair was not given
    bool thresholds_checked = false;
    bool passed = true;
};

/// Runs the plan's replicas (deterministically, any thread count) and
/// writes the samples table plus a JSON per-run ledger.
RunArtifacts cmd_simulate(const cases::SimulationPlan& plan, const std::filesystem::path& out_dir,
                          int jobs = 0);

/// Solves the stationary distributions on the plan's grid and writes the
/// analytic joint density and expected-degree curve.
MeanfieldArtifacts cmd_meanfield(const cases::SimulationPlan& plan,
                                 const std::filesystem::path& out_dir);

/// Reads a samples table and writes the estimated joint density and
/// running-average conditional-mean curve.
EstimateArtifacts cmd_estimate(const std::filesystem::path& samples_path,
                               const cases::EstimationParams& params,
                               const std::filesystem::path& out_dir,
                               const std::string& format = "csv");

/// Compares empirical artifacts against analytic ones and writes a metrics
/// file. Inputs must carry identical config digests unless force is set.
/// `passed` is false when an enforced threshold was exceeded.
CompareArtifacts cmd_compare(const CompareRequest& request,
                             const std::filesystem::path& out_dir);

/// Writes the canonical config for a bundled preset; returns its path.
std::filesystem::path cmd_preset(const std::string& name, const std::filesystem::path& out_dir);

}  // namespace friendnet::io
