#include "friendnet/model.hpp"

#include <cmath>

#include "friendnet/errors.hpp"

namespace friendnet {

const char* to_string(GraphVariant variant) {
    return variant == GraphVariant::simple ? "simple" : "weighted";
}

GraphVariant graph_variant_from_string(const std::string& text) {
    if (text == "simple") return GraphVariant::simple;
    if (text == "weighted") return GraphVariant::weighted;
    throw ValidationError("unknown graph variant: " + text);
}

void ModelSpec::validate() const {
    for (double rate : {rate_alpha, rate_beta, rate_gamma}) {
        if (!(rate >= 0.0 && rate <= 1.0))
            throw ValidationError("subroutine rates must lie in [0, 1]");
    }
    if (std::abs(rate_alpha + rate_beta + rate_gamma - 1.0) > 1e-12)
        throw ValidationError("subroutine rates must sum to 1 within 1e-12");
    if (!(rate_alpha > 0.0)) throw ValidationError("rate_alpha must be positive");

    if (initial_nodes < 1) throw ValidationError("initial_nodes must be at least 1");
    if (initial_edges < 0) throw ValidationError("initial_edges must be nonnegative");
    if (rounds < 0) throw ValidationError("rounds must be nonnegative");
    if (variant == GraphVariant::simple) {
        const long max_pairs =
            static_cast<long>(initial_nodes) * (initial_nodes - 1) / 2;
        if (initial_edges > max_pairs)
            throw ValidationError("initial_edges exceeds the number of distinct node pairs");
    }

    validate_nonnegative(kernel_alpha, personality, "pi_alpha");
    validate_nonnegative(kernel_beta, personality, "pi_beta");
    validate_nonnegative(kernel_gamma, personality, "pi_gamma");
    validate_nonnegative(count_alpha, personality, "m_alpha");
    validate_nonnegative(count_beta, personality, "m_beta");
    validate_nonnegative(count_gamma, personality, "m_gamma");
}

}  // namespace friendnet
