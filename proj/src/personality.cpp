#include "friendnet/personality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "friendnet/errors.hpp"

namespace friendnet {

namespace {

constexpr double kMassTolerance = 1e-9;

}  // namespace

PersonalitySpec PersonalitySpec::uniform_interval(double low, double high) {
    if (!(low < high)) throw ValidationError("personality interval requires low < high");
    if (!std::isfinite(low) || !std::isfinite(high))
        throw ValidationError("personality interval bounds must be finite");
    return PersonalitySpec(Kind::uniform, low, high);
}

PersonalitySpec PersonalitySpec::tabulated_interval(double low, double high,
                                                    std::vector<double> values) {
    if (!(low < high)) throw ValidationError("personality interval requires low < high");
    if (values.size() < 2) throw ValidationError("tabulated density needs at least 2 grid values");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("tabulated density values must be finite and nonnegative");
    }
    const std::size_t n = values.size();
    const double step = (high - low) / static_cast<double>(n - 1);
    std::vector<double> cdf(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (values[i - 1] + values[i]) * step;
    if (std::abs(cdf.back() - 1.0) > kMassTolerance)
        throw ValidationError("tabulated density must integrate to 1 within 1e-9, got " +
                              std::to_string(cdf.back()));
    PersonalitySpec spec(Kind::tabulated, low, high);
    spec.values_ = std::move(values);
    spec.cdf_ = std::move(cdf);
    return spec;
}

PersonalitySpec PersonalitySpec::discrete(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) throw ValidationError("discrete personality needs at least one atom");
    std::sort(atoms.begin(), atoms.end());
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        auto [value, mass] = atoms[i];
        if (!std::isfinite(value)) throw ValidationError("atom values must be finite");
        if (!std::isfinite(mass) || mass < 0.0)
            throw ValidationError("atom masses must be finite and nonnegative");
        if (i > 0 && value == atoms[i - 1].first)
            throw ValidationError("atom values must be distinct");
        total += mass;
    }
    if (std::abs(total - 1.0) > kMassTolerance)
        throw ValidationError("atom masses must sum to 1 within 1e-9, got " +
                              std::to_string(total));
    PersonalitySpec spec(Kind::discrete, atoms.front().first, atoms.back().first);
    spec.atom_cdf_.reserve(atoms.size());
    double acc = 0.0;
    for (const auto& [value, mass] : atoms) {
        acc += mass;
        spec.atom_cdf_.push_back(acc);
    }
    spec.atoms_ = std::move(atoms);
    return spec;
}

double PersonalitySpec::density(double p) const {
    switch (kind_) {
        case Kind::uniform:
            return (p >= low_ && p <= high_) ? 1.0 / (high_ - low_) : 0.0;
        case Kind::tabulated: {
            if (p < low_ || p > high_) return 0.0;
            const std::size_t n = values_.size();
            const double step = (high_ - low_) / static_cast<double>(n - 1);
            const double x = (p - low_) / step;
            std::size_t cell = std::min(static_cast<std::size_t>(x), n - 2);
            const double frac = x - static_cast<double>(cell);
            return values_[cell] + (values_[cell + 1] - values_[cell]) * frac;
        }
        case Kind::discrete:
            throw ValidationError("density() is undefined for a discrete personality");
    }
    return 0.0;
}

double PersonalitySpec::mean() const {
    switch (kind_) {
        case Kind::uniform:
            return 0.5 * (low_ + high_);
        case Kind::tabulated: {
            // Exact first moment of the piecewise-linear density.
            const std::size_t n = values_.size();
            const double step = (high_ - low_) / static_cast<double>(n - 1);
            double m = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double a = low_ + step * static_cast<double>(i);
                const double d0 = values_[i];
                const double d1 = values_[i + 1];
                // integral of x * (d0 + (d1-d0)*(x-a)/step) over [a, a+step]
                m += step * (a * (d0 + d1) / 2.0 + step * (d0 + 2.0 * d1) / 6.0);
            }
            return m;
        }
        case Kind::discrete: {
            double m = 0.0;
            for (const auto& [value, mass] : atoms_) m += value * mass;
            return m;
        }
    }
    return 0.0;
}

bool PersonalitySpec::contains(double p) const {
    if (kind_ != Kind::discrete) return p >= low_ && p <= high_;
    for (const auto& [value, mass] : atoms_)
        if (value == p) return true;
    return false;
}

double PersonalitySpec::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::uniform:
            return rng.uniform(low_, high_);
        case Kind::tabulated: {
            const double u = rng.uniform01();
            const std::size_t n = values_.size();
            const double step = (high_ - low_) / static_cast<double>(n - 1);
            auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            std::size_t cell = static_cast<std::size_t>(it - cdf_.begin());
            if (cell == 0) cell = 1;
            if (cell > n - 1) cell = n - 1;
            --cell;  // density segment [cell, cell+1]
            const double target = u - cdf_[cell];
            const double d0 = values_[cell];
            const double d1 = values_[cell + 1];
            const double slope = d1 - d0;
            double s;  // fraction of the cell, in [0, 1]
            if (std::abs(slope) < 1e-12 * (d0 + d1 + 1e-300)) {
                s = d0 > 0.0 ? target / (step * d0) : 0.0;
            } else {
                const double disc = d0 * d0 + 2.0 * slope * target / step;
                s = (-d0 + std::sqrt(std::max(disc, 0.0))) / slope;
            }
            s = std::clamp(s, 0.0, 1.0);
            return low_ + step * (static_cast<double>(cell) + s);
        }
        case Kind::discrete: {
            const double u = rng.uniform01();
            auto it = std::upper_bound(atom_cdf_.begin(), atom_cdf_.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - atom_cdf_.begin());
            if (idx >= atoms_.size()) idx = atoms_.size() - 1;
            return atoms_[idx].first;
        }
    }
    return 0.0;
}

}  // namespace friendnet
