#include "friendnet/casestudies.hpp"

#include <cstdio>

#include "friendnet/errors.hpp"

namespace friendnet::cases {

namespace {

[[noreturn]] void fail_constraint(const char* family, const char* inequality, double lhs,
                                  double rhs) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s trait family: constraint %s violated (%g vs %g)", family,
                  inequality, lhs, rhs);
    throw ValidationError(buf);
}

void check(bool ok, const char* family, const char* inequality, double lhs, double rhs) {
    if (!ok) fail_constraint(family, inequality, lhs, rhs);
}

}  // namespace

void validate(const ExtraversionCoeffs& c) {
    const char* f = "extraversion";
    check(c.c0 > 0.0, f, "c0 > 0", c.c0, 0.0);
    check(c.c1 >= c.c0, f, "c1 >= c0", c.c1, c.c0);
    check(c.c2 >= 0.0, f, "c2 >= 0", c.c2, 0.0);
    check(c.c3 >= 0.0, f, "c3 >= 0", c.c3, 0.0);
    check(c.c4 > 0.0, f, "c4 > 0", c.c4, 0.0);
    check(c.c5 > 0.0, f, "c5 > 0", c.c5, 0.0);
    check(c.c6 >= c.c5, f, "c6 >= c5", c.c6, c.c5);
    check(c.c7 >= 0.0, f, "c7 >= 0", c.c7, 0.0);
}

void validate(const AgreeablenessCoeffs& c) {
    const char* f = "agreeableness";
    check(c.c0 >= 0.0, f, "c0 >= 0", c.c0, 0.0);
    check(c.c1 > 0.0, f, "c1 > 0", c.c1, 0.0);
    check(c.c2 >= c.c1, f, "c2 >= c1", c.c2, c.c1);
    check(c.c3 < 0.0, f, "c3 < 0", c.c3, 0.0);
    check(c.c4 >= -c.c3, f, "c4 >= -c3", c.c4, -c.c3);
    check(c.c5 > 0.0, f, "c5 > 0", c.c5, 0.0);
    check(c.c6 > 0.0, f, "c6 > 0", c.c6, 0.0);
    check(c.c7 < 0.0, f, "c7 < 0", c.c7, 0.0);
    check(c.c8 >= -c.c7, f, "c8 >= -c7", c.c8, -c.c7);
}

ModelSpec extraversion_spec(const ExtraversionCoeffs& coeffs, RateTriple rates, int initial_nodes,
                            long initial_edges, long rounds) {
    validate(coeffs);
    ModelSpec spec;
    spec.personality = PersonalitySpec::uniform_interval(-1.0, 1.0);
    spec.rate_alpha = rates.alpha;
    spec.rate_beta = rates.beta;
    spec.rate_gamma = rates.gamma;
    spec.kernel_alpha = KernelSpec::affine(coeffs.c0, coeffs.c1);
    spec.kernel_beta = KernelSpec::constant(coeffs.c2);
    spec.kernel_gamma = KernelSpec::constant(coeffs.c3);
    spec.count_alpha = EdgeCountSpec::constant(coeffs.c4);
    spec.count_beta = EdgeCountSpec::affine(coeffs.c5, coeffs.c6);
    spec.count_gamma = EdgeCountSpec::constant(coeffs.c7);
    spec.variant = GraphVariant::simple;
    spec.initial_nodes = initial_nodes;
    spec.initial_edges = initial_edges;
    spec.rounds = rounds;
    spec.validate();
    return spec;
}

ModelSpec agreeableness_spec(const AgreeablenessCoeffs& coeffs, RateTriple rates,
                             int initial_nodes, long initial_edges, long rounds) {
    validate(coeffs);
    ModelSpec spec;
    spec.personality = PersonalitySpec::uniform_interval(-1.0, 1.0);
    spec.rate_alpha = rates.alpha;
    spec.rate_beta = rates.beta;
    spec.rate_gamma = rates.gamma;
    spec.kernel_alpha = KernelSpec::constant(coeffs.c0);
    spec.kernel_beta = KernelSpec::affine(coeffs.c1, coeffs.c2);
    spec.kernel_gamma = KernelSpec::affine(coeffs.c3, coeffs.c4);
    spec.count_alpha = EdgeCountSpec::constant(coeffs.c5);
    spec.count_beta = EdgeCountSpec::constant(coeffs.c6);
    spec.count_gamma = EdgeCountSpec::affine(coeffs.c7, coeffs.c8);
    spec.variant = GraphVariant::simple;
    spec.initial_nodes = initial_nodes;
    spec.initial_edges = initial_edges;
    spec.rounds = rounds;
    spec.validate();
    return spec;
}

SimulationPlan preset(const std::string& name) {
    SimulationPlan plan;
    plan.preset_name = name;
    plan.runs = 10;
    plan.base_seed = 1;
    if (name == "extraversion") {
        plan.model = extraversion_spec(ExtraversionCoeffs{});
        plan.estimation.window = 3000;
        plan.thresholds.margin = 0.8;
    } else if (name == "agreeableness") {
        plan.model = agreeableness_spec(AgreeablenessCoeffs{});
        plan.estimation.window = 6000;
        plan.thresholds.margin = 0.7;
    } else {
        throw ValidationError("unknown preset: " + name);
    }
    return plan;
}

}  // namespace friendnet::cases
