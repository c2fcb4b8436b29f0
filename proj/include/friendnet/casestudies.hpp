#pragma once

#include <cstdint>
#include <string>

#include "friendnet/model.hpp"

namespace friendnet::cases {

/// Extraversion-style coefficient family:
///   pi_alpha = c0*p + c1, pi_beta = c2, pi_gamma = c3,
///   m_alpha = c4, m_beta = c5*p + c6, m_gamma = c7.
/// Defaults are the reference parameterization used by the bundled preset.
struct ExtraversionCoeffs {
    double c0 = 1.0;
    double c1 = 1.0;
    double c2 = 2.0;
    double c3 = 2.0;
    double c4 = 10.0;
    double c5 = 3.0;
    double c6 = 3.0;
    double c7 = 3.0;
};

/// Agreeableness-style coefficient family:
///   pi_alpha = c0, pi_beta = c1*p + c2, pi_gamma = c3*p + c4,
///   m_alpha = c5, m_beta = c6, m_gamma = c7*p + c8.
struct AgreeablenessCoeffs {
    double c0 = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = -1.0;
    double c4 = 1.0;
    double c5 = 10.0;
    double c6 = 3.0;
    double c7 = -2.0;
    double c8 = 2.0;
};

/// Throws ValidationError naming the violated inequality (e.g. "c1 >= c0").
void validate(const ExtraversionCoeffs& coeffs);
void validate(const AgreeablenessCoeffs& coeffs);

struct RateTriple {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Builds the full model for a coefficient family on traits uniform in
/// [-1, 1]. Both bundled case studies run the simple graph variant.
ModelSpec extraversion_spec(const ExtraversionCoeffs& coeffs, RateTriple rates = {1.0, 0.0, 0.0},
                            int initial_nodes = 15, long initial_edges = 30, long rounds = 10000);
ModelSpec agreeableness_spec(const AgreeablenessCoeffs& coeffs,
                             RateTriple rates = {0.4, 0.6, 0.0}, int initial_nodes = 15,
                             long initial_edges = 30, long rounds = 10000);

/// Estimation settings for turning run samples into densities and curves.
struct EstimationParams {
    long window = 3000;      // samples per running-average window
    long stride = 0;         // 0 -> window / 10
    double bandwidth_p = 0.0;  // 0 -> Scott's rule
    double bandwidth_k = 0.0;
    int grid_points = 101;
    int k_max = 400;
};

/// Comparison margins/thresholds; negative threshold = not enforced.
struct CompareThresholds {
    double margin = 0.8;  // curve comparison restricted to |p| <= margin
    double max_sup = -1.0;
    double max_mad = -1.0;
    double max_l1 = -1.0;
};

struct OutputOptions {
    std::string directory;
    std::string format = "csv";  // csv | json
};

/// Everything needed to reproduce a study end to end.
struct SimulationPlan {
    std::string preset_name;  // empty for hand-written configs
    ModelSpec model;
    int runs = 10;
    std::uint64_t base_seed = 1;
    EstimationParams estimation;
    CompareThresholds thresholds;
    OutputOptions output;
};

/// Bundled studies: "extraversion" (growth only, rates 1/0/0, window 3000)
/// and "agreeableness" (growth plus formation, rates 0.4/0.6/0, window
/// 6000). Ten runs of 10000 rounds from 15 nodes / 30 links, seeds
/// base_seed + run index.
SimulationPlan preset(const std::string& name);

}  // namespace friendnet::cases
