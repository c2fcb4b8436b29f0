#include "friendnet/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "friendnet/errors.hpp"
#include "friendnet/quadrature.hpp"
#include "friendnet/tridiagonal.hpp"

namespace friendnet::meanfield {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Density-weighted integral of f over the trait space. Interval traits
/// integrate cell-by-cell (exact for the piecewise-linear tabulated
/// density times a smooth f); discrete traits sum over atoms.
double expect_quadrature(const PersonalitySpec& personality,
                         const std::function<double(double)>& f, const GaussLegendre& gl) {
    if (!personality.is_interval()) {
        double acc = 0.0;
        for (const auto& [value, mass] : personality.atoms()) acc += mass * f(value);
        return acc;
    }
    auto weighted = [&](double x) { return personality.density(x) * f(x); };
    if (personality.kind() == PersonalitySpec::Kind::uniform)
        return gl.integrate(personality.low(), personality.high(), weighted);
    // Tabulated: integrate per grid cell so density kinks stay on cell
    // boundaries.
    const double low = personality.low();
    const double high = personality.high();
    const int cells = personality.tabulated_points() - 1;
    double acc = 0.0;
    const double step = (high - low) / cells;
    for (int i = 0; i < cells; ++i)
        acc += gl.integrate(low + i * step, low + (i + 1) * step, weighted);
    return acc;
}

/// E[slope*p + intercept] under the trait distribution, exactly.
double expect_affine(const PersonalitySpec& personality, double slope, double intercept) {
    return slope * personality.mean() + intercept;
}

KernelIntegral build_integral(const ModelSpec& spec, const KernelSpec& kernel,
                              const EdgeCountSpec& count, bool include_own,
                              IntegralMethod method, int quadrature_nodes,
                              const std::string& name) {
    if (kernel.form() == KernelSpec::Form::general)
        throw MeanFieldError("kernel " + name + " unsupported by mean-field solver");
    const PersonalitySpec& personality = spec.personality;
    const double own_slope = include_own ? count.slope() : 0.0;
    const double own_intercept = include_own ? count.intercept() : 0.0;

    // Constant kernels select uniformly, so the selection weight cancels
    // against its own normalizer: the inflow is the mean budget E[m].
    double sigma_slope, sigma_intercept;
    if (kernel.form() == KernelSpec::Form::constant) {
        sigma_slope = 0.0;
        sigma_intercept = 1.0;
    } else {
        sigma_slope = kernel.slope();
        sigma_intercept = kernel.intercept();
    }

    const bool discrete = !personality.is_interval();
    const bool closed = method != IntegralMethod::quadrature || discrete;
    double inflow_scale;
    if (closed) {
        const double mean_budget = expect_affine(personality, count.slope(), count.intercept());
        const double normalizer = expect_affine(personality, sigma_slope, sigma_intercept);
        if (!(normalizer > 0.0))
            throw MeanFieldError("kernel " + name + " has a non-positive mean over the traits");
        inflow_scale = mean_budget / normalizer;
    } else {
        const GaussLegendre gl(std::max(2, quadrature_nodes));
        const double normalizer = expect_quadrature(
            personality, [&](double r) { return sigma_slope * r + sigma_intercept; }, gl);
        if (!(normalizer > 0.0))
            throw MeanFieldError("kernel " + name + " has a non-positive mean over the traits");
        inflow_scale = expect_quadrature(
            personality,
            [&](double q) { return (count.slope() * q + count.intercept()) / normalizer; }, gl);
    }

    KernelIntegral out(sigma_slope, sigma_intercept, inflow_scale, own_slope, own_intercept,
                       closed ? IntegralProvenance::closed_form : IntegralProvenance::quadrature);
    // The rate must be nonnegative wherever traits live.
    const double at_low = out(personality.low());
    const double at_high = out(personality.high());
    if (std::min(at_low, at_high) < -1e-12)
        throw MeanFieldError("mean-field rate for " + name + " is negative on the trait support");
    return out;
}

struct PreparedRates {
    KernelIntegral A;
    KernelIntegral B;
    KernelIntegral Gamma;
    double beta_over_alpha = 0.0;
    double gamma_over_alpha = 0.0;
};

PreparedRates prepare_rates(const ModelSpec& spec, const SolverOptions& options) {
    if (!(spec.rate_alpha > 0.0)) throw MeanFieldError("rate_alpha must be positive");
    PreparedRates rates{
        compute_A(spec, options.integral_method, options.quadrature_nodes),
        compute_B(spec, options.integral_method, options.quadrature_nodes),
        compute_Gamma(spec, options.integral_method, options.quadrature_nodes),
        spec.rate_beta / spec.rate_alpha,
        spec.rate_gamma / spec.rate_alpha,
    };
    return rates;
}

int source_offset(const ModelSpec& spec, double p) {
    const double m = spec.count_alpha.eval(p);
    const double rounded = std::round(m);
    if (!(m >= 0.0))
        throw MeanFieldError("newcomer budget is negative at p = " + fmt(p));
    if (std::abs(m - rounded) > 1e-9)
        throw MeanFieldError("newcomer budget must be an integer for the stationary solvers, got " +
                             fmt(m) + " at p = " + fmt(p));
    return static_cast<int>(rounded);
}

/// r_- of g*r^2 - (a+g+1)*r + a = 0, the decaying mode; in [0, 1).
double decay_ratio(double a, double g) {
    if (g <= 0.0) return a / (1.0 + a);
    const double s = a + g + 1.0;
    const double disc = std::sqrt(std::max(s * s - 4.0 * a * g, 0.0));
    return 2.0 * a / (s + disc);
}

DegreeDistribution finish(double p, int m, std::vector<double> weights, double tail_mass,
                          DistributionProvenance provenance) {
    double total = tail_mass;
    for (double w : weights) total += w;
    DegreeDistribution dist;
    dist.personality = p;
    dist.support_offset = m;
    dist.provenance = provenance;
    dist.pmf.resize(weights.size());
    double mean = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        dist.pmf[k] = weights[k] / total;
        mean += static_cast<double>(k) * dist.pmf[k];
    }
    dist.mean = mean;
    return dist;
}

DegreeDistribution make_shifted_geometric(double p, int m, double a,
                                          DistributionProvenance provenance,
                                          const SolverOptions& options) {
    if (!(a >= 0.0)) throw MeanFieldError("arrival rate is negative at p = " + fmt(p));
    std::vector<double> weights(static_cast<std::size_t>(m) + 1, 0.0);
    if (a == 0.0) {
        weights[static_cast<std::size_t>(m)] = 1.0;
        return finish(p, m, std::move(weights), 0.0, provenance);
    }
    const double r = a / (1.0 + a);
    const long terms =
        static_cast<long>(std::ceil(std::log(options.tail_tolerance) / std::log(r))) + 1;
    if (m + terms + 1 > options.k_max_cap)
        throw MeanFieldError("degree support exceeds the cap: need k_max ~ " +
                             fmt(static_cast<double>(m + terms)) + " (a = " + fmt(a) + ")");
    weights.resize(static_cast<std::size_t>(m + terms) + 1, 0.0);
    double w = 1.0 / (1.0 + a);
    for (long j = 0; j <= terms; ++j) {
        weights[static_cast<std::size_t>(m + j)] = w;
        w *= r;
    }
    // Discarded mass of the full geometric beyond the last stored term.
    const double tail = std::pow(r, static_cast<double>(terms + 1));
    return finish(p, m, std::move(weights), tail, provenance);
}

}  // namespace

KernelIntegral compute_A(const ModelSpec& spec, IntegralMethod method, int quadrature_nodes) {
    return build_integral(spec, spec.kernel_alpha, spec.count_alpha, false, method,
                          quadrature_nodes, "pi_alpha");
}

KernelIntegral compute_B(const ModelSpec& spec, IntegralMethod method, int quadrature_nodes) {
    return build_integral(spec, spec.kernel_beta, spec.count_beta, true, method, quadrature_nodes,
                          "pi_beta");
}

KernelIntegral compute_Gamma(const ModelSpec& spec, IntegralMethod method, int quadrature_nodes) {
    return build_integral(spec, spec.kernel_gamma, spec.count_gamma, true, method,
                          quadrature_nodes, "pi_gamma");
}

const char* to_string(DistributionProvenance provenance) {
    switch (provenance) {
        case DistributionProvenance::shifted_geometric: return "shifted_geometric";
        case DistributionProvenance::first_order: return "first_order";
        case DistributionProvenance::tridiagonal: return "tridiagonal";
    }
    return "?";
}

DegreeDistribution solve_alpha_only(const ModelSpec& spec, double p,
                                    const SolverOptions& options) {
    if (spec.rate_beta != 0.0 || spec.rate_gamma != 0.0)
        throw MeanFieldError("wrong solver for spec: rates include link formation or dissolution");
    const KernelIntegral A = compute_A(spec, options.integral_method, options.quadrature_nodes);
    return make_shifted_geometric(p, source_offset(spec, p), A(p),
                                  DistributionProvenance::shifted_geometric, options);
}

DegreeDistribution solve_no_dissolution(const ModelSpec& spec, double p,
                                        const SolverOptions& options) {
    if (spec.rate_gamma != 0.0)
        throw MeanFieldError("wrong solver for spec: rate_gamma must be zero");
    const PreparedRates rates = prepare_rates(spec, options);
    const double a = rates.A(p) + rates.beta_over_alpha * rates.B(p);
    return make_shifted_geometric(p, source_offset(spec, p), a,
                                  DistributionProvenance::first_order, options);
}

namespace {

DegreeDistribution solve_general_prepared(const ModelSpec& spec, const PreparedRates& rates,
                                          double p, const SolverOptions& options) {
    if (!spec.count_alpha.is_constant())
        throw MeanFieldError(
            "unsupported source: the general solver requires a constant newcomer budget");
    const int m = source_offset(spec, p);
    const double a = rates.A(p) + rates.beta_over_alpha * rates.B(p);
    const double g = rates.gamma_over_alpha * rates.Gamma(p);
    if (!(a >= 0.0)) throw MeanFieldError("arrival rate is negative at p = " + fmt(p));
    if (!(g >= 0.0)) throw MeanFieldError("dissolution rate is negative at p = " + fmt(p));

    const double r = decay_ratio(a, g);
    long k_max = std::max<long>({options.k_max_hint, 2L * (m + static_cast<long>(a + g) + 1), 128});
    for (;;) {
        if (k_max > options.k_max_cap)
            throw MeanFieldError("degree support exceeds the cap of " +
                                 std::to_string(options.k_max_cap) + " (a = " + fmt(a) +
                                 ", g = " + fmt(g) + ", decay ratio = " + fmt(r) + ")");
        const std::size_t n = static_cast<std::size_t>(k_max) + 1;
        std::vector<double> lower(n, -a), diag(n, a + g + 1.0), upper(n, -g), rhs(n, 0.0);
        rhs[static_cast<std::size_t>(m)] = 1.0;
        std::vector<double> sol = solve_tridiagonal(lower, diag, upper, rhs);
        for (double& v : sol) v = std::max(v, 0.0);
        double total = 0.0;
        for (double v : sol) total += v;
        const double tail = r > 0.0 ? sol.back() * r / (1.0 - r) : 0.0;
        if (tail <= options.tail_tolerance * (total + tail)) {
            auto dist = finish(p, m, std::move(sol), tail, DistributionProvenance::tridiagonal);
            return dist;
        }
        k_max *= 2;
    }
}

}  // namespace

DegreeDistribution solve_general(const ModelSpec& spec, double p, const SolverOptions& options) {
    const PreparedRates rates = prepare_rates(spec, options);
    return solve_general_prepared(spec, rates, p, options);
}

DegreeDistribution solve_degree_distribution(const ModelSpec& spec, double p,
                                             const SolverOptions& options) {
    if (spec.rate_gamma > 0.0) return solve_general(spec, p, options);
    if (spec.rate_beta > 0.0) return solve_no_dissolution(spec, p, options);
    return solve_alpha_only(spec, p, options);
}

double conditional_expectation(const DegreeDistribution& dist) {
    double mean = 0.0;
    for (std::size_t k = 0; k < dist.pmf.size(); ++k)
        mean += static_cast<double>(k) * dist.pmf[k];
    return mean;
}

double JointGrid::integral() const {
    double acc = 0.0;
    for (std::size_t ip = 0; ip < p_grid.size(); ++ip) {
        double row = 0.0;
        for (int k = 0; k < k_count; ++k) row += at(ip, k);
        acc += p_weights[ip] * row;
    }
    return acc;
}

std::vector<double> default_personality_grid(const PersonalitySpec& personality, int points) {
    if (!personality.is_interval()) {
        std::vector<double> grid;
        for (const auto& [value, mass] : personality.atoms()) grid.push_back(value);
        return grid;
    }
    if (points < 2) throw ValidationError("trait grid needs at least 2 points");
    const double low = personality.low();
    const double high = personality.high();
    if (personality.kind() == PersonalitySpec::Kind::tabulated) {
        // Align with the density grid so piecewise-linear segments are
        // integrated exactly; subdivide cells to reach the point budget.
        const int cells = personality.tabulated_points() - 1;
        const int sub = std::max(1, (points - 1 + cells - 1) / cells);
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(cells * sub) + 1);
        const double step = (high - low) / cells;
        for (int c = 0; c < cells; ++c)
            for (int s = 0; s < sub; ++s)
                grid.push_back(low + step * (static_cast<double>(c) +
                                             static_cast<double>(s) / static_cast<double>(sub)));
        grid.push_back(high);
        return grid;
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            low + (high - low) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.back() = high;
    return grid;
}

JointGrid joint_density(const ModelSpec& spec, const std::vector<double>& p_grid, int k_max,
                        const SolverOptions& options) {
    JointGrid grid;
    const bool discrete = !spec.personality.is_interval();
    if (discrete) {
        for (const auto& [value, mass] : spec.personality.atoms()) {
            grid.p_grid.push_back(value);
            grid.p_weights.push_back(1.0);
        }
    } else {
        grid.p_grid = p_grid.empty() ? default_personality_grid(spec.personality) : p_grid;
        if (grid.p_grid.size() < 2)
            throw ValidationError("joint density over an interval needs at least 2 grid points");
        grid.p_weights.resize(grid.p_grid.size(), 0.0);
        for (std::size_t i = 0; i + 1 < grid.p_grid.size(); ++i) {
            const double half = 0.5 * (grid.p_grid[i + 1] - grid.p_grid[i]);
            if (!(half > 0.0)) throw ValidationError("trait grid must be strictly increasing");
            grid.p_weights[i] += half;
            grid.p_weights[i + 1] += half;
        }
    }

    std::vector<DegreeDistribution> dists;
    dists.reserve(grid.p_grid.size());
    int needed = 1;
    for (double p : grid.p_grid) {
        dists.push_back(solve_degree_distribution(spec, p, options));
        needed = std::max(needed, dists.back().k_count());
    }
    grid.k_count = k_max > 0 ? k_max + 1 : needed;
    grid.values.assign(grid.p_grid.size() * static_cast<std::size_t>(grid.k_count), 0.0);
    for (std::size_t ip = 0; ip < grid.p_grid.size(); ++ip) {
        const double rho = discrete ? spec.personality.atoms()[ip].second
                                    : spec.personality.density(grid.p_grid[ip]);
        for (int k = 0; k < grid.k_count; ++k) grid.at(ip, k) = rho * dists[ip].pmf_at(k);
    }
    return grid;
}

std::vector<CurvePointAnalytic> expected_degree_curve(const ModelSpec& spec,
                                                      const std::vector<double>& p_grid,
                                                      const SolverOptions& options) {
    std::vector<CurvePointAnalytic> curve;
    curve.reserve(p_grid.size());
    for (double p : p_grid) {
        const auto dist = solve_degree_distribution(spec, p, options);
        curve.push_back({p, conditional_expectation(dist)});
    }
    return curve;
}

}  // namespace friendnet::meanfield
