#pragma once

#include <functional>
#include <string>

#include "friendnet/personality.hpp"

namespace friendnet {

/// Attachment kernel pi(x, y) where x = (p, k) is the candidate being
/// selected and y = (q, l) is the agent doing the selecting. Selection
/// probabilities are proportional to the kernel value over the candidate
/// pool.
class KernelSpec {
public:
    enum class Form { constant, affine_p, general };

    /// General kernels receive (candidate p, candidate degree,
    /// selector p, selector degree).
    using GeneralFn = std::function<double(double, double, double, double)>;

    static KernelSpec constant(double value);

    /// slope * candidate_p + intercept; ignores degrees and the selector.
    static KernelSpec affine(double slope, double intercept);

    static KernelSpec general(GeneralFn fn);

    KernelSpec() : KernelSpec(constant(1.0)) {}

    Form form() const { return form_; }
    double slope() const { return slope_; }
    double intercept() const { return intercept_; }

    double eval(double candidate_p, double candidate_degree, double selector_p,
                double selector_degree) const;

    /// True when the value depends on personalities only, never on degrees.
    bool degree_independent() const { return form_ != Form::general; }

private:
    KernelSpec(Form form, double slope, double intercept)
        : form_(form), slope_(slope), intercept_(intercept) {}

    Form form_;
    double slope_ = 0.0;
    double intercept_ = 1.0;
    GeneralFn fn_;
};

/// Per-round link budget m(p) >= 0 of an agent with trait p. Realized
/// counts use stochastic rounding so the expected realized count is m(p).
class EdgeCountSpec {
public:
    enum class Form { constant, affine_p };

    static EdgeCountSpec constant(double value);
    static EdgeCountSpec affine(double slope, double intercept);

    EdgeCountSpec() : EdgeCountSpec(constant(0.0)) {}

    Form form() const { return form_; }
    bool is_constant() const { return form_ == Form::constant; }
    double slope() const { return slope_; }
    double intercept() const { return intercept_; }

    double eval(double p) const { return slope_ * p + intercept_; }

private:
    EdgeCountSpec(Form form, double slope, double intercept)
        : form_(form), slope_(slope), intercept_(intercept) {}

    Form form_;
    double slope_;
    double intercept_;
};

/// Throws ValidationError if the kernel can be negative for traits in the
/// support of `personality`. `name` identifies the kernel in the message.
/// Affine/constant forms are checked exactly on the support; general
/// kernels are probed on a trait sample grid with degrees in [0, 64].
void validate_nonnegative(const KernelSpec& kernel, const PersonalitySpec& personality,
                          const std::string& name);

/// Throws ValidationError if m(p) < 0 for some trait in the support.
void validate_nonnegative(const EdgeCountSpec& count, const PersonalitySpec& personality,
                          const std::string& name);

}  // namespace friendnet
