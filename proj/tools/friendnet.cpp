#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "friendnet/commands.hpp"
#include "friendnet/config.hpp"
#include "friendnet/errors.hpp"
#include "friendnet/version.hpp"

namespace {

namespace fs = std::filesystem;
using friendnet::ValidationError;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitThreshold = 2;
constexpr int kExitIo = 3;

fs::path default_out_dir() {
    if (const char* env = std::getenv("FRIENDNET_OUT")) return fs::path(env);
    return fs::path(".");
}

struct PlanArgs {
    std::string config_path;
    std::string preset_name;
    std::uint64_t seed = 0;
    int runs = 0;
    long rounds = -1;
    long window = 0;
    long stride = -1;
    int grid = 0;
    int k_max = -1;
    double margin = -2.0;
    std::string format;

    void add_source_flags(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--preset", preset_name, "bundled study: extraversion | agreeableness");
    }

    friendnet::cases::SimulationPlan resolve() const {
        if (!config_path.empty() && !preset_name.empty())
            throw ValidationError("pass either --config or --preset, not both");
        friendnet::cases::SimulationPlan plan;
        if (!config_path.empty())
            plan = friendnet::io::parse_config(config_path);
        else if (!preset_name.empty())
            plan = friendnet::cases::preset(preset_name);
        else
            throw ValidationError("pass --config FILE or --preset NAME");
        if (seed != 0) plan.base_seed = seed;
        if (runs > 0) plan.runs = runs;
        if (rounds >= 0) plan.model.rounds = rounds;
        if (window > 0) plan.estimation.window = window;
        if (stride >= 0) plan.estimation.stride = stride;
        if (grid > 0) plan.estimation.grid_points = grid;
        if (k_max >= 0) plan.estimation.k_max = k_max;
        if (margin > -2.0) plan.thresholds.margin = margin;
        if (!format.empty()) plan.output.format = format;
        return plan;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"friendnet: stochastic friendship-network growth driven by personality traits"};
    app.set_version_flag("--version", std::string(friendnet::kVersion));
    app.require_subcommand(1);

    PlanArgs args;
    std::string out_dir_str;
    int jobs = 0;

    auto add_common = [&](CLI::App* cmd, bool with_source) {
        if (with_source) args.add_source_flags(cmd);
        cmd->add_option("--out", out_dir_str, "output directory (default: $FRIENDNET_OUT or .)");
        cmd->add_option("--format", args.format, "artifact format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run the growth process");
    add_common(simulate, true);
    simulate->add_option("--seed", args.seed, "base seed (replica r uses seed + r)");
    simulate->add_option("--runs", args.runs, "number of replicas");
    simulate->add_option("--rounds", args.rounds, "rounds per replica");
    simulate->add_option("--jobs", jobs, "worker threads (0 = hardware)");

    CLI::App* meanfield = app.add_subcommand("meanfield", "solve the stationary predictions");
    add_common(meanfield, true);
    meanfield->add_option("--grid", args.grid, "trait grid points");
    meanfield->add_option("--k-max", args.k_max, "degree axis cutoff (0 = automatic)");

    std::string samples_path;
    CLI::App* estimate = app.add_subcommand("estimate", "estimate density and curve from samples");
    add_common(estimate, false);
    estimate->add_option("--samples", samples_path, "samples artifact")->required();
    estimate->add_option("--window", args.window, "samples per running-average window");
    estimate->add_option("--stride", args.stride, "window stride (0 = window/10)");
    estimate->add_option("--grid", args.grid, "trait grid points");
    estimate->add_option("--k-max", args.k_max, "degree axis cutoff (0 = automatic)");
    double bandwidth_p = 0.0, bandwidth_k = 0.0;
    estimate->add_option("--bandwidth-p", bandwidth_p, "trait bandwidth (0 = Scott's rule)");
    estimate->add_option("--bandwidth-k", bandwidth_k, "degree bandwidth (0 = Scott's rule)");

    friendnet::io::CompareRequest compare_request;
    std::string ec_path, ac_path, ed_path, ad_path;
    double max_sup = -1.0, max_mad = -1.0, max_l1 = -1.0, cmp_margin = 0.8;
    CLI::App* compare = app.add_subcommand("compare", "score empirical against analytic artifacts");
    add_common(compare, false);
    compare->add_option("--empirical-curve", ec_path, "empirical curve artifact");
    compare->add_option("--analytic-curve", ac_path, "analytic curve artifact");
    compare->add_option("--empirical-density", ed_path, "empirical density artifact");
    compare->add_option("--analytic-density", ad_path, "analytic density artifact");
    compare->add_option("--margin", cmp_margin, "restrict curve comparison to |p| <= margin");
    compare->add_option("--max-sup", max_sup, "fail when curve sup-norm exceeds this");
    compare->add_option("--max-mad", max_mad, "fail when curve MAD exceeds this");
    compare->add_option("--max-l1", max_l1, "fail when density L1 distance exceeds this");
    compare->add_flag("--force", compare_request.force, "accept mismatched config digests");

    std::string preset_name_arg;
    CLI::App* preset_cmd = app.add_subcommand("preset", "write a bundled study config");
    preset_cmd->add_option("--preset", preset_name_arg, "extraversion | agreeableness")->required();
    preset_cmd->add_option("--out", out_dir_str, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    const fs::path out_dir = out_dir_str.empty() ? default_out_dir() : fs::path(out_dir_str);
    try {
        if (simulate->parsed()) {
            const auto plan = args.resolve();
            const auto artifacts = friendnet::io::cmd_simulate(plan, out_dir, jobs);
            std::cout << "wrote " << artifacts.samples.string() << '\n';
            std::cout << "wrote " << artifacts.summary.string() << '\n';
        } else if (meanfield->parsed()) {
            const auto plan = args.resolve();
            const auto artifacts = friendnet::io::cmd_meanfield(plan, out_dir);
            std::cout << "wrote " << artifacts.density.string() << '\n';
            std::cout << "wrote " << artifacts.curve.string() << '\n';
        } else if (estimate->parsed()) {
            friendnet::cases::EstimationParams params;
            if (args.window > 0) params.window = args.window;
            if (args.stride >= 0) params.stride = args.stride;
            if (args.grid > 0) params.grid_points = args.grid;
            if (args.k_max >= 0) params.k_max = args.k_max;
            params.bandwidth_p = bandwidth_p;
            params.bandwidth_k = bandwidth_k;
            const std::string format = args.format.empty() ? "csv" : args.format;
            const auto artifacts =
                friendnet::io::cmd_estimate(samples_path, params, out_dir, format);
            std::cout << "wrote " << artifacts.density.string() << '\n';
            std::cout << "wrote " << artifacts.curve.string() << '\n';
        } else if (compare->parsed()) {
            compare_request.empirical_curve = ec_path;
            compare_request.analytic_curve = ac_path;
            compare_request.empirical_density = ed_path;
            compare_request.analytic_density = ad_path;
            compare_request.thresholds.margin = cmp_margin;
            compare_request.thresholds.max_sup = max_sup;
            compare_request.thresholds.max_mad = max_mad;
            compare_request.thresholds.max_l1 = max_l1;
            compare_request.format = args.format.empty() ? "csv" : args.format;
            const auto result = friendnet::io::cmd_compare(compare_request, out_dir);
            if (result.curve_metrics.points_used > 0) {
                std::cout << "curve_sup_norm " << result.curve_metrics.sup_norm << '\n';
                std::cout << "curve_mad " << result.curve_metrics.mad << '\n';
                std::cout << "curve_slope " << result.curve_slope << '\n';
            }
            if (result.density_l1 >= 0.0) std::cout << "density_l1 " << result.density_l1 << '\n';
            std::cout << "wrote " << result.metrics.string() << '\n';
            if (result.thresholds_checked && !result.passed) {
                std::cerr << "comparison thresholds exceeded\n";
                return kExitThreshold;
            }
        } else if (preset_cmd->parsed()) {
            const auto path = friendnet::io::cmd_preset(preset_name_arg, out_dir);
            std::cout << "wrote " << path.string() << '\n';
        }
    } catch (const friendnet::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const friendnet::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const friendnet::MeanFieldError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
