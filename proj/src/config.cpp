#include "friendnet/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "friendnet/errors.hpp"

namespace friendnet::io {

namespace {

using nlohmann::ordered_json;

ordered_json kernel_to_json(const KernelSpec& kernel) {
    ordered_json j;
    switch (kernel.form()) {
        case KernelSpec::Form::constant:
            j["form"] = "constant";
            j["coefficients"] = {kernel.intercept()};
            break;
        case KernelSpec::Form::affine_p:
            j["form"] = "affine_p";
            j["coefficients"] = {kernel.slope(), kernel.intercept()};
            break;
        case KernelSpec::Form::general:
            throw ValidationError("general kernels cannot be serialized to a config");
    }
    return j;
}

ordered_json count_to_json(const EdgeCountSpec& count) {
    ordered_json j;
    if (count.is_constant()) {
        j["form"] = "constant";
        j["coefficients"] = {count.intercept()};
    } else {
        j["form"] = "affine_p";
        j["coefficients"] = {count.slope(), count.intercept()};
    }
    return j;
}

ordered_json personality_to_json(const PersonalitySpec& personality) {
    ordered_json j;
    switch (personality.kind()) {
        case PersonalitySpec::Kind::uniform:
            j["kind"] = "uniform";
            j["low"] = personality.low();
            j["high"] = personality.high();
            break;
        case PersonalitySpec::Kind::tabulated:
            j["kind"] = "tabulated";
            j["low"] = personality.low();
            j["high"] = personality.high();
            j["values"] = personality.tabulated_values();
            break;
        case PersonalitySpec::Kind::discrete: {
            j["kind"] = "discrete";
            ordered_json atoms = ordered_json::array();
            for (const auto& [value, mass] : personality.atoms())
                atoms.push_back(ordered_json::array({value, mass}));
            j["atoms"] = std::move(atoms);
            break;
        }
    }
    return j;
}

/// Tracks which keys of an object were consumed; leftovers are errors.
class Section {
public:
    Section(const ordered_json& node, std::string name) : node_(node), name_(std::move(name)) {
        if (!node_.is_object())
            throw ValidationError("config section '" + name_ + "' must be an object");
        for (const auto& item : node_.items()) pending_.insert(item.key());
    }

    const ordered_json* find(const std::string& key) {
        pending_.erase(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    template <typename T>
    T get(const std::string& key, T fallback) {
        const ordered_json* v = find(key);
        if (!v) return fallback;
        try {
            return v->get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("config key '" + key + "' in section '" + name_ +
                                  "' has the wrong type");
        }
    }

    void finish() const {
        if (!pending_.empty())
            throw ValidationError("unknown key '" + *pending_.begin() + "' in config section '" +
                                  name_ + "'");
    }

    const std::string& name() const { return name_; }

private:
    const ordered_json& node_;
    std::string name_;
    std::set<std::string> pending_;
};

KernelSpec kernel_from_json(const ordered_json& node, const std::string& name) {
    Section section(node, name);
    const std::string form = section.get<std::string>("form", "");
    std::vector<double> coeffs = section.get<std::vector<double>>("coefficients", {});
    section.finish();
    if (form == "constant") {
        if (coeffs.size() != 1)
            throw ValidationError("kernel '" + name + "': constant form takes 1 coefficient");
        return KernelSpec::constant(coeffs[0]);
    }
    if (form == "affine_p") {
        if (coeffs.size() != 2)
            throw ValidationError("kernel '" + name + "': affine_p form takes 2 coefficients");
        return KernelSpec::affine(coeffs[0], coeffs[1]);
    }
    throw ValidationError("kernel '" + name + "': unknown form '" + form + "'");
}

EdgeCountSpec count_from_json(const ordered_json& node, const std::string& name) {
    Section section(node, name);
    const std::string form = section.get<std::string>("form", "");
    std::vector<double> coeffs = section.get<std::vector<double>>("coefficients", {});
    section.finish();
    if (form == "constant") {
        if (coeffs.size() != 1)
            throw ValidationError("edge count '" + name + "': constant form takes 1 coefficient");
        return EdgeCountSpec::constant(coeffs[0]);
    }
    if (form == "affine_p") {
        if (coeffs.size() != 2)
            throw ValidationError("edge count '" + name + "': affine_p form takes 2 coefficients");
        return EdgeCountSpec::affine(coeffs[0], coeffs[1]);
    }
    throw ValidationError("edge count '" + name + "': unknown form '" + form + "'");
}

PersonalitySpec personality_from_json(const ordered_json& node) {
    Section section(node, "personality");
    const std::string kind = section.get<std::string>("kind", "uniform");
    if (kind == "uniform") {
        const double low = section.get<double>("low", -1.0);
        const double high = section.get<double>("high", 1.0);
        section.finish();
        return PersonalitySpec::uniform_interval(low, high);
    }
    if (kind == "tabulated") {
        const double low = section.get<double>("low", -1.0);
        const double high = section.get<double>("high", 1.0);
        auto values = section.get<std::vector<double>>("values", {});
        section.finish();
        return PersonalitySpec::tabulated_interval(low, high, std::move(values));
    }
    if (kind == "discrete") {
        const ordered_json* atoms_node = section.find("atoms");
        section.finish();
        if (!atoms_node || !atoms_node->is_array())
            throw ValidationError("personality: discrete kind needs an 'atoms' array");
        std::vector<std::pair<double, double>> atoms;
        for (const auto& entry : *atoms_node) {
            if (!entry.is_array() || entry.size() != 2)
                throw ValidationError("personality: each atom must be a [value, mass] pair");
            atoms.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        return PersonalitySpec::discrete(std::move(atoms));
    }
    throw ValidationError("personality: unknown kind '" + kind + "'");
}

}  // namespace

ordered_json plan_to_json(const cases::SimulationPlan& plan) {
    ordered_json j;
    if (!plan.preset_name.empty()) j["preset"] = plan.preset_name;
    j["seed"] = plan.base_seed;
    j["runs"] = plan.runs;
    j["rounds"] = plan.model.rounds;
    j["initial"] = {{"nodes", plan.model.initial_nodes}, {"edges", plan.model.initial_edges}};
    j["graph_variant"] = to_string(plan.model.variant);
    j["rates"] = {{"alpha", plan.model.rate_alpha},
                  {"beta", plan.model.rate_beta},
                  {"gamma", plan.model.rate_gamma}};
    j["personality"] = personality_to_json(plan.model.personality);
    j["kernels"] = {{"alpha", kernel_to_json(plan.model.kernel_alpha)},
                    {"beta", kernel_to_json(plan.model.kernel_beta)},
                    {"gamma", kernel_to_json(plan.model.kernel_gamma)}};
    j["edge_counts"] = {{"alpha", count_to_json(plan.model.count_alpha)},
                        {"beta", count_to_json(plan.model.count_beta)},
                        {"gamma", count_to_json(plan.model.count_gamma)}};
    j["estimation"] = {{"window", plan.estimation.window},
                       {"stride", plan.estimation.stride},
                       {"bandwidth", {plan.estimation.bandwidth_p, plan.estimation.bandwidth_k}},
                       {"grid", plan.estimation.grid_points},
                       {"k_max", plan.estimation.k_max}};
    j["compare"] = {{"margin", plan.thresholds.margin},
                    {"max_sup", plan.thresholds.max_sup},
                    {"max_mad", plan.thresholds.max_mad},
                    {"max_l1", plan.thresholds.max_l1}};
    j["output"] = {{"directory", plan.output.directory}, {"format", plan.output.format}};
    return j;
}

cases::SimulationPlan plan_from_json(const ordered_json& doc) {
    cases::SimulationPlan plan;
    Section root(doc, "config");
    plan.preset_name = root.get<std::string>("preset", "");
    plan.base_seed = root.get<std::uint64_t>("seed", 1);
    plan.runs = root.get<int>("runs", 10);
    plan.model.rounds = root.get<long>("rounds", 10000);

    if (const ordered_json* node = root.find("initial")) {
        Section s(*node, "initial");
        plan.model.initial_nodes = s.get<int>("nodes", 15);
        plan.model.initial_edges = s.get<long>("edges", 30);
        s.finish();
    }
    plan.model.variant = graph_variant_from_string(root.get<std::string>("graph_variant", "simple"));
    if (const ordered_json* node = root.find("rates")) {
        Section s(*node, "rates");
        plan.model.rate_alpha = s.get<double>("alpha", 1.0);
        plan.model.rate_beta = s.get<double>("beta", 0.0);
        plan.model.rate_gamma = s.get<double>("gamma", 0.0);
        s.finish();
    }
    if (const ordered_json* node = root.find("personality"))
        plan.model.personality = personality_from_json(*node);
    if (const ordered_json* node = root.find("kernels")) {
        Section s(*node, "kernels");
        if (const ordered_json* k = s.find("alpha"))
            plan.model.kernel_alpha = kernel_from_json(*k, "alpha");
        if (const ordered_json* k = s.find("beta"))
            plan.model.kernel_beta = kernel_from_json(*k, "beta");
        if (const ordered_json* k = s.find("gamma"))
            plan.model.kernel_gamma = kernel_from_json(*k, "gamma");
        s.finish();
    }
    if (const ordered_json* node = root.find("edge_counts")) {
        Section s(*node, "edge_counts");
        if (const ordered_json* k = s.find("alpha"))
            plan.model.count_alpha = count_from_json(*k, "alpha");
        if (const ordered_json* k = s.find("beta"))
            plan.model.count_beta = count_from_json(*k, "beta");
        if (const ordered_json* k = s.find("gamma"))
            plan.model.count_gamma = count_from_json(*k, "gamma");
        s.finish();
    }
    if (const ordered_json* node = root.find("estimation")) {
        Section s(*node, "estimation");
        plan.estimation.window = s.get<long>("window", 3000);
        plan.estimation.stride = s.get<long>("stride", 0);
        auto bw = s.get<std::vector<double>>("bandwidth", {0.0, 0.0});
        if (bw.size() != 2)
            throw ValidationError("estimation.bandwidth must be a [trait, degree] pair");
        plan.estimation.bandwidth_p = bw[0];
        plan.estimation.bandwidth_k = bw[1];
        plan.estimation.grid_points = s.get<int>("grid", 101);
        plan.estimation.k_max = s.get<int>("k_max", 400);
        s.finish();
    }
    if (const ordered_json* node = root.find("compare")) {
        Section s(*node, "compare");
        plan.thresholds.margin = s.get<double>("margin", 0.8);
        plan.thresholds.max_sup = s.get<double>("max_sup", -1.0);
        plan.thresholds.max_mad = s.get<double>("max_mad", -1.0);
        plan.thresholds.max_l1 = s.get<double>("max_l1", -1.0);
        s.finish();
    }
    if (const ordered_json* node = root.find("output")) {
        Section s(*node, "output");
        plan.output.directory = s.get<std::string>("directory", "");
        plan.output.format = s.get<std::string>("format", "csv");
        s.finish();
    }
    root.finish();
    if (plan.output.format != "csv" && plan.output.format != "json")
        throw ValidationError("output.format must be 'csv' or 'json'");
    if (plan.runs < 0) throw ValidationError("runs must be nonnegative");
    return plan;
}

cases::SimulationPlan parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config parse error in " + path.string() + ": " + e.what());
    }
    return plan_from_json(doc);
}

std::string canonical_config_string(const cases::SimulationPlan& plan) {
    return plan_to_json(plan).dump(2) + "\n";
}

std::string config_digest(const cases::SimulationPlan& plan) {
    const std::string text = canonical_config_string(plan);
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace friendnet::io
