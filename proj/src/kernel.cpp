#include "friendnet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "friendnet/errors.hpp"

namespace friendnet {

KernelSpec KernelSpec::constant(double value) {
    if (!std::isfinite(value)) throw ValidationError("constant kernel value must be finite");
    return KernelSpec(Form::constant, 0.0, value);
}

KernelSpec KernelSpec::affine(double slope, double intercept) {
    if (!std::isfinite(slope) || !std::isfinite(intercept))
        throw ValidationError("affine kernel coefficients must be finite");
    return KernelSpec(Form::affine_p, slope, intercept);
}

KernelSpec KernelSpec::general(GeneralFn fn) {
    if (!fn) throw ValidationError("general kernel function must be callable");
    KernelSpec spec(Form::general, 0.0, 0.0);
    spec.fn_ = std::move(fn);
    return spec;
}

double KernelSpec::eval(double candidate_p, double candidate_degree, double selector_p,
                        double selector_degree) const {
    switch (form_) {
        case Form::constant:
            return intercept_;
        case Form::affine_p:
            return slope_ * candidate_p + intercept_;
        case Form::general:
            return fn_(candidate_p, candidate_degree, selector_p, selector_degree);
    }
    return 0.0;
}

EdgeCountSpec EdgeCountSpec::constant(double value) {
    if (!std::isfinite(value)) throw ValidationError("constant edge count must be finite");
    return EdgeCountSpec(Form::constant, 0.0, value);
}

EdgeCountSpec EdgeCountSpec::affine(double slope, double intercept) {
    if (!std::isfinite(slope) || !std::isfinite(intercept))
        throw ValidationError("affine edge count coefficients must be finite");
    return EdgeCountSpec(Form::affine_p, slope, intercept);
}

namespace {

std::vector<double> support_probe_points(const PersonalitySpec& personality) {
    std::vector<double> points;
    if (!personality.is_interval()) {
        for (const auto& [value, mass] : personality.atoms()) points.push_back(value);
        return points;
    }
    const int n = 33;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        points.push_back(personality.low() + t * (personality.high() - personality.low()));
    }
    return points;
}

double affine_min_on_support(double slope, double intercept, const PersonalitySpec& personality) {
    if (!personality.is_interval()) {
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& [value, mass] : personality.atoms())
            lo = std::min(lo, slope * value + intercept);
        return lo;
    }
    return std::min(slope * personality.low() + intercept,
                    slope * personality.high() + intercept);
}

}  // namespace

void validate_nonnegative(const KernelSpec& kernel, const PersonalitySpec& personality,
                          const std::string& name) {
    if (kernel.form() != KernelSpec::Form::general) {
        if (affine_min_on_support(kernel.slope(), kernel.intercept(), personality) < 0.0)
            throw ValidationError("kernel " + name +
                                  " is negative on the personality support");
        return;
    }
    const auto points = support_probe_points(personality);
    const double degrees[] = {0.0, 1.0, 2.0, 5.0, 16.0, 64.0};
    for (double p : points)
        for (double k : degrees)
            for (double q : points)
                for (double l : degrees) {
                    const double v = kernel.eval(p, k, q, l);
                    if (!std::isfinite(v) || v < 0.0)
                        throw ValidationError("kernel " + name +
                                              " is negative or non-finite on probed arguments");
                }
}

void validate_nonnegative(const EdgeCountSpec& count, const PersonalitySpec& personality,
                          const std::string& name) {
    if (affine_min_on_support(count.slope(), count.intercept(), personality) < 0.0)
        throw ValidationError("edge count " + name + " is negative on the personality support");
}

}  // namespace friendnet
