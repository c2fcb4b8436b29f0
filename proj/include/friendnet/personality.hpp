#pragma once

#include <utility>
#include <vector>

#include "friendnet/rng.hpp"

namespace friendnet {

/// Personality trait distribution. Either a density on an interval
/// (uniform, or tabulated on an even grid with linear interpolation)
/// or a discrete distribution over finitely many trait values.
class PersonalitySpec {
public:
    enum class Kind { uniform, tabulated, discrete };

    /// Uniform density on [low, high].
    static PersonalitySpec uniform_interval(double low, double high);

    /// Piecewise-linear density given by `values` on an even grid over
    /// [low, high] including both endpoints. Must integrate to 1 (trapezoid
    /// rule) within 1e-9.
    static PersonalitySpec tabulated_interval(double low, double high, std::vector<double> values);

    /// Atoms as (trait value, probability mass) pairs; masses must sum to 1
    /// within 1e-9. Values must be distinct.
    static PersonalitySpec discrete(std::vector<std::pair<double, double>> atoms);

    /// Uniform on [-1, 1].
    PersonalitySpec() : PersonalitySpec(uniform_interval(-1.0, 1.0)) {}

    Kind kind() const { return kind_; }
    bool is_interval() const { return kind_ != Kind::discrete; }

    /// Support bounds. For discrete specs: min and max atom value.
    double low() const { return low_; }
    double high() const { return high_; }

    /// Density at p (interval kinds only).
    double density(double p) const;

    /// Atoms (discrete kind only).
    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

    /// Grid size of a tabulated density; 0 for other kinds.
    int tabulated_points() const { return static_cast<int>(values_.size()); }

    /// Density grid values (tabulated kind only; empty otherwise).
    const std::vector<double>& tabulated_values() const { return values_; }

    double mean() const;

    bool contains(double p) const;

    double sample(Rng& rng) const;

private:
    PersonalitySpec(Kind kind, double low, double high) : kind_(kind), low_(low), high_(high) {}

    Kind kind_;
    double low_ = -1.0;
    double high_ = 1.0;
    std::vector<double> values_;  // tabulated density at grid nodes
    std::vector<double> cdf_;     // tabulated: cumulative mass at grid nodes
    std::vector<std::pair<double, double>> atoms_;
    std::vector<double> atom_cdf_;
};

}  // namespace friendnet
