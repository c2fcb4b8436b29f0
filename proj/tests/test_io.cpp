#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "friendnet/casestudies.hpp"
#include "friendnet/commands.hpp"
#include "friendnet/config.hpp"
#include "friendnet/errors.hpp"
#include "friendnet/rng.hpp"

using namespace friendnet;
using namespace friendnet::io;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("friendnet_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string thrown_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

SampleSet tricky_sample_set() {
    SampleSet set;
    set.records = {{0, 0, 0.1, 10.0},
                   {0, 1, 1.0 / 3.0, 123456.789},
                   {1, 0, -2.5e-7, 1e-13},
                   {1, 1, -1.0, 0.0}};
    set.runs = 2;
    set.rounds = 77;
    set.variant = GraphVariant::weighted;
    set.base_seed = 42;
    set.seeds = {42, 43};
    set.p_low = -1.0;
    set.p_high = 1.0;
    set.config_digest = "0123456789abcdef";
    return set;
}

void check_sample_sets_equal(const SampleSet& a, const SampleSet& b) {
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].run_id == b.records[i].run_id);
        CHECK(a.records[i].node_id == b.records[i].node_id);
        CHECK(a.records[i].personality == b.records[i].personality);
        CHECK(a.records[i].degree == b.records[i].degree);
    }
    CHECK(a.runs == b.runs);
    CHECK(a.rounds == b.rounds);
    CHECK(a.variant == b.variant);
    CHECK(a.base_seed == b.base_seed);
    CHECK(a.seeds == b.seeds);
    CHECK(a.p_low == b.p_low);
    CHECK(a.p_high == b.p_high);
    CHECK(a.config_digest == b.config_digest);
}

}  // namespace

TEST_CASE("canonical serialization is idempotent for a custom plan") {
    cases::SimulationPlan plan;
    plan.preset_name = "";
    plan.base_seed = 7;
    plan.runs = 4;
    plan.model.rounds = 500;
    plan.model.variant = GraphVariant::weighted;
    plan.model.rate_alpha = 0.5;
    plan.model.rate_beta = 0.3;
    plan.model.rate_gamma = 0.2;
    plan.model.personality = PersonalitySpec::discrete({{-1.0, 0.25}, {1.0, 0.75}});
    plan.model.kernel_alpha = KernelSpec::affine(1.0, 1.5);
    plan.model.count_beta = EdgeCountSpec::affine(0.5, 1.0);
    plan.estimation.window = 120;
    plan.thresholds.max_sup = 2.5;
    plan.output.format = "json";

    const std::string first = canonical_config_string(plan);
    const cases::SimulationPlan reparsed = plan_from_json(nlohmann::ordered_json::parse(first));
    const std::string second = canonical_config_string(reparsed);
    CHECK(first == second);
    CHECK(config_digest(plan) == config_digest(reparsed));
    CHECK(reparsed.model.variant == GraphVariant::weighted);
    CHECK(reparsed.model.personality.kind() == PersonalitySpec::Kind::discrete);
    CHECK(reparsed.model.count_beta.slope() == 0.5);
    CHECK(reparsed.output.format == "json");
}

TEST_CASE("an empty object parses to the default plan") {
    const cases::SimulationPlan plan = plan_from_json(nlohmann::ordered_json::object());
    CHECK(plan.base_seed == 1);
    CHECK(plan.runs == 10);
    CHECK(plan.model.rounds == 10000);
    CHECK(plan.model.initial_nodes == 15);
    CHECK(plan.model.variant == GraphVariant::simple);
    CHECK(plan.estimation.window == 3000);
    CHECK(plan.output.format == "csv");
}

TEST_CASE("unknown keys are rejected with their section") {
    const std::string root_msg = thrown_message(
        [] { plan_from_json(nlohmann::ordered_json::parse(R"({"bogus": 1})")); });
    CHECK(root_msg.find("unknown key 'bogus'") != std::string::npos);
    CHECK(root_msg.find("'config'") != std::string::npos);

    nlohmann::ordered_json doc = plan_to_json(cases::preset("extraversion"));
    doc["rates"]["delta"] = 0.1;
    const std::string nested_msg = thrown_message([&] { plan_from_json(doc); });
    CHECK(nested_msg.find("unknown key 'delta'") != std::string::npos);
    CHECK(nested_msg.find("'rates'") != std::string::npos);

    nlohmann::ordered_json doc2 = plan_to_json(cases::preset("extraversion"));
    doc2["estimation"]["extra"] = true;
    const std::string est_msg = thrown_message([&] { plan_from_json(doc2); });
    CHECK(est_msg.find("'estimation'") != std::string::npos);
}

TEST_CASE("wrongly typed keys name the key and section") {
    const std::string msg = thrown_message(
        [] { plan_from_json(nlohmann::ordered_json::parse(R"({"seed": "abc"})")); });
    CHECK(msg.find("'seed'") != std::string::npos);
    CHECK(msg.find("wrong type") != std::string::npos);
}

TEST_CASE("parsing accepts configs that fail semantic validation later") {
    nlohmann::ordered_json doc = plan_to_json(cases::preset("extraversion"));
    doc["rates"]["alpha"] = 0.5;
    doc["rates"]["beta"] = 0.4;
    doc["rates"]["gamma"] = 0.0;
    const cases::SimulationPlan plan = plan_from_json(doc);  // parse succeeds
    const std::string msg = thrown_message([&] { plan.model.validate(); });
    CHECK(msg.find("sum to 1") != std::string::npos);

    nlohmann::ordered_json bad_format = nlohmann::ordered_json::object();
    bad_format["output"] = {{"format", "xml"}};
    CHECK_THROWS_AS(plan_from_json(bad_format), ValidationError);
}

TEST_CASE("missing config files and malformed JSON raise distinct errors") {
    const fs::path dir = fresh_dir("config_errors");
    const std::string missing =
        thrown_message([&] { parse_config(dir / "does_not_exist.json"); });
    CHECK(missing.find("cannot open config file") != std::string::npos);
    CHECK_THROWS_AS(parse_config(dir / "does_not_exist.json"), IoError);

    const fs::path broken = dir / "broken.json";
    std::ofstream(broken) << "{ not json";
    const std::string parse_msg = thrown_message([&] { parse_config(broken); });
    CHECK(parse_msg.find("config parse error") != std::string::npos);
    CHECK_THROWS_AS(parse_config(broken), ValidationError);
}

TEST_CASE("sample sets round-trip exactly through both formats") {
    const fs::path dir = fresh_dir("samples_roundtrip");
    const SampleSet original = tricky_sample_set();

    for (const std::string format : {"csv", "json"}) {
        const fs::path path = dir / ("samples_" + format + "." + format);
        write_sample_set(path, original, format);
        check_sample_sets_equal(original, read_sample_set(path));
    }
}

TEST_CASE("readers sniff the format from the content, not the name") {
    const fs::path dir = fresh_dir("samples_sniff");
    const fs::path path = dir / "oddly_named.dat";
    write_sample_set(path, tricky_sample_set(), "json");
    check_sample_sets_equal(tricky_sample_set(), read_sample_set(path));
}

TEST_CASE("grid artifacts round-trip with their metadata") {
    const fs::path dir = fresh_dir("grid_roundtrip");
    GridArtifact grid;
    grid.kind = "empirical_density";
    grid.config_digest = "cafecafecafecafe";
    grid.p_grid = {-1.0, 0.0, 1.0};
    grid.k_count = 4;
    grid.values = {0.1, 1e-13, 0.0, 0.2, 1.0 / 3.0, 0.05, 0.0, 0.25, 0.125, 0.3, 0.0, 0.0};
    grid.p_weight_kind = "unit";
    grid.bandwidth_p = 0.3;
    grid.bandwidth_k = 2.5;
    grid.bandwidth_fallback = true;
    grid.sample_count = 999;

    for (const std::string format : {"csv", "json"}) {
        const fs::path path = dir / ("grid." + format);
        write_grid(path, grid, format);
        const GridArtifact back = read_grid(path);
        CHECK(back.kind == grid.kind);
        CHECK(back.config_digest == grid.config_digest);
        CHECK(back.p_grid == grid.p_grid);
        CHECK(back.k_count == grid.k_count);
        CHECK(back.values == grid.values);
        CHECK(back.p_weight_kind == "unit");
        CHECK(back.bandwidth_p == grid.bandwidth_p);
        CHECK(back.bandwidth_k == grid.bandwidth_k);
        CHECK(back.bandwidth_fallback == grid.bandwidth_fallback);
        CHECK(back.sample_count == grid.sample_count);
        CHECK(back.p_weights() == std::vector<double>{1.0, 1.0, 1.0});
    }

    grid.p_weight_kind = "trapezoid";
    CHECK(grid.p_weights() == std::vector<double>{0.5, 1.0, 0.5});
}

TEST_CASE("curve artifacts round-trip with window metadata") {
    const fs::path dir = fresh_dir("curve_roundtrip");
    CurveArtifact curve;
    curve.kind = "empirical_curve";
    curve.config_digest = "feedfeedfeedfeed";
    curve.window = 30;
    curve.stride = 3;
    curve.points = {{-0.5, 12.25, 30}, {0.0, 20.5, 30}, {0.5, 28.0 + 3.0 / 4.0, 30}};

    for (const std::string format : {"csv", "json"}) {
        const fs::path path = dir / ("curve." + format);
        write_curve(path, curve, format);
        const CurveArtifact back = read_curve(path);
        CHECK(back.kind == curve.kind);
        CHECK(back.config_digest == curve.config_digest);
        CHECK(back.window == 30);
        CHECK(back.stride == 3);
        REQUIRE(back.points.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(back.points[i].p_center == curve.points[i].p_center);
            CHECK(back.points[i].mean_degree == curve.points[i].mean_degree);
            CHECK(back.points[i].window_count == curve.points[i].window_count);
        }
    }
}

TEST_CASE("doubles are printed in shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(10.0) == "10");
    CHECK(format_double(1e-13) == "1e-13");
    for (double value : {1.0 / 3.0, -2.5e-7, 123456.789, 0.0, -0.0, 1e300, 5e-324}) {
        const std::string text = format_double(value);
        // strtod, not stod: stod throws out_of_range on subnormal results
        CHECK(std::strtod(text.c_str(), nullptr) == value);
    }
}

TEST_CASE("the simulate command writes byte-identical artifacts on rerun") {
    cases::SimulationPlan plan = cases::preset("extraversion");
    plan.runs = 1;
    plan.model.rounds = 0;

    const fs::path dir_a = fresh_dir("simulate_a");
    const fs::path dir_b = fresh_dir("simulate_b");
    const RunArtifacts a = cmd_simulate(plan, dir_a);
    const RunArtifacts b = cmd_simulate(plan, dir_b, 4);

    const SampleSet samples = read_sample_set(a.samples);
    CHECK(samples.records.size() == 15);  // untouched initial graph
    CHECK(samples.runs == 1);
    CHECK(samples.config_digest == config_digest(plan));
    CHECK(fs::exists(a.summary));

    CHECK(slurp(a.samples) == slurp(b.samples));
    CHECK(slurp(a.summary) == slurp(b.summary));
}

TEST_CASE("the meanfield command writes curves on the configured grid") {
    cases::SimulationPlan plan = cases::preset("extraversion");
    plan.estimation.grid_points = 5;
    plan.estimation.k_max = 50;

    const fs::path dir = fresh_dir("meanfield_cmd");
    const MeanfieldArtifacts out = cmd_meanfield(plan, dir);

    const CurveArtifact curve = read_curve(out.curve);
    CHECK(curve.kind == "analytic_curve");
    CHECK(curve.config_digest == config_digest(plan));
    REQUIRE(curve.points.size() == 5);
    for (const auto& pt : curve.points)
        CHECK(pt.mean_degree ==
              doctest::Approx(10.0 * pt.p_center + 20.0).epsilon(1e-9));
    CHECK(curve.points.front().p_center == doctest::Approx(-1.0));
    CHECK(curve.points.back().p_center == doctest::Approx(1.0));

    const GridArtifact density = read_grid(out.density);
    CHECK(density.kind == "analytic_density");
    CHECK(density.config_digest == config_digest(plan));
    CHECK(density.p_grid.size() == 5);
    CHECK(density.k_count == 51);
    CHECK(density.p_weight_kind == "trapezoid");
}

TEST_CASE("the estimate command validates its inputs") {
    const fs::path dir = fresh_dir("estimate_errors");

    SampleSet tiny;
    tiny.runs = 1;
    for (int i = 0; i < 10; ++i)
        tiny.records.push_back({0, i, -0.9 + 0.2 * i, 5.0});
    const fs::path tiny_path = dir / "tiny.csv";
    write_sample_set(tiny_path, tiny, "csv");

    cases::EstimationParams params;
    params.window = 11;
    params.grid_points = 5;
    params.k_max = 10;
    const std::string msg =
        thrown_message([&] { cmd_estimate(tiny_path, params, dir); });
    CHECK(msg.find("window exceeds the sample count") != std::string::npos);

    SampleSet empty;
    empty.runs = 0;
    const fs::path empty_path = dir / "empty.csv";
    write_sample_set(empty_path, empty, "csv");
    const std::string empty_msg = thrown_message([&] {
        cases::EstimationParams p2;
        p2.window = 1;
        cmd_estimate(empty_path, p2, dir);
    });
    CHECK(empty_msg.find("samples table is empty") != std::string::npos);
}

TEST_CASE("the estimate command produces usable artifacts on small inputs") {
    const fs::path dir = fresh_dir("estimate_small");
    SampleSet samples;
    samples.runs = 1;
    samples.p_low = -1.0;
    samples.p_high = 1.0;
    samples.config_digest = "1111222233334444";
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform(-1.0, 1.0);
        samples.records.push_back({0, i, p, std::round(10.0 * p + 20.0)});
    }
    const fs::path samples_path = dir / "samples.csv";
    write_sample_set(samples_path, samples, "csv");

    cases::EstimationParams params;
    params.window = 50;
    params.grid_points = 11;
    params.k_max = 40;
    const EstimateArtifacts out = cmd_estimate(samples_path, params, dir);

    const GridArtifact density = read_grid(out.density);
    CHECK(density.kind == "empirical_density");
    CHECK(density.config_digest == samples.config_digest);
    CHECK(density.sample_count == 200);
    CHECK(density.p_grid.size() == 11);
    CHECK(density.k_count == 41);

    const CurveArtifact curve = read_curve(out.curve);
    CHECK(curve.kind == "empirical_curve");
    CHECK(curve.window == 50);
    REQUIRE(!curve.points.empty());
    for (const auto& pt : curve.points)
        CHECK(std::abs(pt.mean_degree - (10.0 * pt.p_center + 20.0)) < 5.0);
}

TEST_CASE("comparisons enforce digests, kinds, and thresholds") {
    const fs::path dir = fresh_dir("compare_cmd");
    const std::string digest = "aaaabbbbccccdddd";

    CurveArtifact analytic;
    analytic.kind = "analytic_curve";
    analytic.config_digest = digest;
    for (int i = 0; i <= 20; ++i) {
        const double p = -1.0 + 0.1 * i;
        analytic.points.push_back({p, 2.0 * p + 5.0, 0});
    }
    const fs::path analytic_path = dir / "analytic_curve.csv";
    write_curve(analytic_path, analytic, "csv");

    CurveArtifact empirical;
    empirical.kind = "empirical_curve";
    empirical.config_digest = digest;
    empirical.window = 10;
    empirical.stride = 1;
    for (int i = 0; i <= 16; ++i) {
        const double p = -0.8 + 0.1 * i;
        empirical.points.push_back({p, 2.0 * p + 5.0, 10});
    }
    const fs::path empirical_path = dir / "empirical_curve.csv";
    write_curve(empirical_path, empirical, "csv");

    SUBCASE("an exact match passes with zero metrics") {
        CompareRequest request;
        request.empirical_curve = empirical_path;
        request.analytic_curve = analytic_path;
        request.thresholds.margin = 0.8;
        const CompareArtifacts out = cmd_compare(request, dir);
        CHECK(out.curve_metrics.sup_norm == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(out.curve_metrics.points_used == 17);
        CHECK(out.curve_slope == doctest::Approx(2.0));
        CHECK(out.density_l1 == -1.0);
        CHECK_FALSE(out.thresholds_checked);
        CHECK(out.passed);
        CHECK(fs::exists(out.metrics));
    }

    SUBCASE("an enforced threshold fails a shifted curve") {
        CurveArtifact shifted = empirical;
        for (auto& pt : shifted.points) pt.mean_degree += 0.5;
        const fs::path shifted_path = dir / "shifted_curve.csv";
        write_curve(shifted_path, shifted, "csv");

        CompareRequest request;
        request.empirical_curve = shifted_path;
        request.analytic_curve = analytic_path;
        request.thresholds.margin = 0.8;
        request.thresholds.max_sup = 0.1;
        const CompareArtifacts out = cmd_compare(request, dir);
        CHECK(out.thresholds_checked);
        CHECK_FALSE(out.passed);
        CHECK(out.curve_metrics.sup_norm == doctest::Approx(0.5));
    }

    SUBCASE("mismatched digests are refused unless forced") {
        CurveArtifact other = empirical;
        other.config_digest = "9999888877776666";
        const fs::path other_path = dir / "other_curve.csv";
        write_curve(other_path, other, "csv");

        CompareRequest request;
        request.empirical_curve = other_path;
        request.analytic_curve = analytic_path;
        const std::string msg = thrown_message([&] { cmd_compare(request, dir); });
        CHECK(msg.find("config digests differ") != std::string::npos);

        request.force = true;
        CHECK_NOTHROW(cmd_compare(request, dir));
    }

    SUBCASE("artifact kinds are checked") {
        CompareRequest request;
        request.empirical_curve = analytic_path;  // wrong slot
        request.analytic_curve = analytic_path;
        const std::string msg = thrown_message([&] { cmd_compare(request, dir); });
        CHECK(msg.find("expected an empirical curve") != std::string::npos);
    }

    SUBCASE("identical density pairs compare at zero") {
        GridArtifact base;
        base.config_digest = digest;
        base.p_grid = {-1.0, 0.0, 1.0};
        base.k_count = 3;
        base.values = {0.2, 0.2, 0.1, 0.3, 0.1, 0.1, 0.1, 0.2, 0.2};

        GridArtifact emp = base;
        emp.kind = "empirical_density";
        emp.sample_count = 10;
        const fs::path emp_path = dir / "empirical_density.csv";
        write_grid(emp_path, emp, "csv");

        GridArtifact ana = base;
        ana.kind = "analytic_density";
        const fs::path ana_path = dir / "analytic_density.csv";
        write_grid(ana_path, ana, "csv");

        CompareRequest request;
        request.empirical_density = emp_path;
        request.analytic_density = ana_path;
        request.thresholds.max_l1 = 0.0;
        const CompareArtifacts out = cmd_compare(request, dir);
        CHECK(out.density_l1 == doctest::Approx(0.0));
        CHECK(out.thresholds_checked);
        CHECK(out.passed);
    }

    SUBCASE("at least one artifact pair is required") {
        CompareRequest request;
        CHECK_THROWS_AS(cmd_compare(request, dir), ValidationError);
    }
}

TEST_CASE("the preset command writes a loadable canonical config") {
    const fs::path dir = fresh_dir("preset_cmd");
    const fs::path path = cmd_preset("agreeableness", dir);
    CHECK(path.filename() == "agreeableness_config.json");
    const cases::SimulationPlan loaded = parse_config(path);
    CHECK(config_digest(loaded) == config_digest(cases::preset("agreeableness")));
    CHECK(slurp(path) == canonical_config_string(cases::preset("agreeableness")));
}
