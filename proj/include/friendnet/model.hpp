#pragma once

#include <string>

#include "friendnet/kernel.hpp"
#include "friendnet/personality.hpp"

namespace friendnet {

/// Which relaxation of the growth process to run.
///  - simple: unweighted simple graph, no self-loops or parallel edges;
///    per-round selections are without replacement.
///  - weighted: nonnegative integer link weights adjusted in unit steps;
///    repeated selection of the same partner within a round is allowed.
enum class GraphVariant { simple, weighted };

const char* to_string(GraphVariant variant);
GraphVariant graph_variant_from_string(const std::string& text);

/// Complete description of one growth process.
struct ModelSpec {
    PersonalitySpec personality;

    // Subroutine rates; must be in [0,1] and sum to 1. rate_alpha > 0 so the
    // network keeps growing.
    double rate_alpha = 1.0;
    double rate_beta = 0.0;
    double rate_gamma = 0.0;

    KernelSpec kernel_alpha = KernelSpec::constant(1.0);
    KernelSpec kernel_beta = KernelSpec::constant(1.0);
    KernelSpec kernel_gamma = KernelSpec::constant(1.0);

    EdgeCountSpec count_alpha = EdgeCountSpec::constant(1.0);
    EdgeCountSpec count_beta = EdgeCountSpec::constant(0.0);
    EdgeCountSpec count_gamma = EdgeCountSpec::constant(0.0);

    GraphVariant variant = GraphVariant::simple;

    int initial_nodes = 15;
    long initial_edges = 30;
    long rounds = 10000;

    /// Throws ValidationError on any violated constraint.
    void validate() const;
};

}  // namespace friendnet
