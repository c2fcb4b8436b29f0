#pragma once

#include <vector>

#include "friendnet/model.hpp"

namespace friendnet::meanfield {

enum class IntegralProvenance { closed_form, quadrature };
enum class IntegralMethod { automatic, closed_form, quadrature };

/// Mean per-round link rate experienced by a trait-p agent from one
/// subroutine: the kernel-weighted average over partners plus, for the
/// link-formation and dissolution subroutines, the agent's own per-round
/// budget. With constant or affine kernels this is itself affine in p,
/// so evaluation stores the reduced coefficients.
class KernelIntegral {
public:
    double operator()(double p) const {
        return (sigma_slope_ * p + sigma_intercept_) * inflow_scale_ + own_slope_ * p +
               own_intercept_;
    }
    IntegralProvenance provenance() const { return provenance_; }

    /// Reduced affine coefficients: value(p) = slope()*p + intercept().
    double slope() const { return sigma_slope_ * inflow_scale_ + own_slope_; }
    double intercept() const { return sigma_intercept_ * inflow_scale_ + own_intercept_; }

    KernelIntegral(double sigma_slope, double sigma_intercept, double inflow_scale,
                   double own_slope, double own_intercept, IntegralProvenance provenance)
        : sigma_slope_(sigma_slope),
          sigma_intercept_(sigma_intercept),
          inflow_scale_(inflow_scale),
          own_slope_(own_slope),
          own_intercept_(own_intercept),
          provenance_(provenance) {}

private:
    double sigma_slope_;
    double sigma_intercept_;
    double inflow_scale_;
    double own_slope_;
    double own_intercept_;
    IntegralProvenance provenance_;
};

struct SolverOptions {
    double tail_tolerance = 1e-13;  // pmf mass allowed beyond the stored support
    long k_max_cap = 1000000;       // hard cap on the truncation via doubling
    int k_max_hint = 0;             // starting truncation for the tridiagonal solver
    IntegralMethod integral_method = IntegralMethod::automatic;
    int quadrature_nodes = 64;
};

/// Expected links gained per round by a trait-p agent from newcomer
/// attachment (the support-offset links themselves not included).
KernelIntegral compute_A(const ModelSpec& spec, IntegralMethod method = IntegralMethod::automatic,
                         int quadrature_nodes = 64);

/// Expected links gained per round from the link-formation subroutine,
/// both as a selected partner and through the agent's own budget.
KernelIntegral compute_B(const ModelSpec& spec, IntegralMethod method = IntegralMethod::automatic,
                         int quadrature_nodes = 64);

/// Expected links lost per round through the dissolution subroutine.
KernelIntegral compute_Gamma(const ModelSpec& spec,
                             IntegralMethod method = IntegralMethod::automatic,
                             int quadrature_nodes = 64);

enum class DistributionProvenance { shifted_geometric, first_order, tridiagonal };

const char* to_string(DistributionProvenance provenance);

/// Stationary degree distribution conditioned on trait p. pmf[k] is the
/// probability of degree k (indexed from 0); entries below the support
/// offset are zero.
struct DegreeDistribution {
    double personality = 0.0;
    int support_offset = 0;
    std::vector<double> pmf;
    double mean = 0.0;
    DistributionProvenance provenance = DistributionProvenance::shifted_geometric;

    double pmf_at(int k) const {
        return (k >= 0 && k < static_cast<int>(pmf.size())) ? pmf[static_cast<std::size_t>(k)]
                                                            : 0.0;
    }
    int k_count() const { return static_cast<int>(pmf.size()); }
};

/// Pure newcomer-attachment process (rate_beta == rate_gamma == 0):
/// geometric distribution shifted to start at the agent's own initial
/// link count.
DegreeDistribution solve_alpha_only(const ModelSpec& spec, double p,
                                    const SolverOptions& options = {});

/// Growth plus link formation, no dissolution (rate_gamma == 0): same
/// geometric form with the formation rate folded into the arrival rate.
DegreeDistribution solve_no_dissolution(const ModelSpec& spec, double p,
                                        const SolverOptions& options = {});

/// Full stationary balance with dissolution: tridiagonal solve of
///   -a*n(k-1) + (a+g+1)*n(k) - g*n(k+1) = [k == m]
/// on 0..k_max (the k = 0 row drops the n(-1) term), truncation doubled
/// until the analytic decay ratio bounds the discarded tail below
/// tail_tolerance. Requires a constant integer newcomer budget.
DegreeDistribution solve_general(const ModelSpec& spec, double p,
                                 const SolverOptions& options = {});

/// Dispatch on the rates: alpha-only, no-dissolution, or general.
DegreeDistribution solve_degree_distribution(const ModelSpec& spec, double p,
                                             const SolverOptions& options = {});

/// Sum of k * pmf[k]; recomputed from the stored pmf.
double conditional_expectation(const DegreeDistribution& dist);

/// Joint trait/degree density on a product grid. For interval traits,
/// values[i][k] = density(p_i) * pmf(k | p_i) with trapezoid weights in p;
/// for discrete traits the rows are the atoms, values include the atom
/// mass, and the p-weights are 1.
struct JointGrid {
    std::vector<double> p_grid;
    std::vector<double> p_weights;
    int k_count = 0;
    std::vector<double> values;  // row-major, p index outer

    double at(std::size_t ip, int k) const {
        return values[ip * static_cast<std::size_t>(k_count) + static_cast<std::size_t>(k)];
    }
    double& at(std::size_t ip, int k) {
        return values[ip * static_cast<std::size_t>(k_count) + static_cast<std::size_t>(k)];
    }
    double integral() const;
};

/// Grid the conditional solutions into a joint density. k_max == 0 sizes
/// the degree axis automatically; a positive k_max fixes k_count to
/// k_max + 1 (truncating any further mass).
JointGrid joint_density(const ModelSpec& spec, const std::vector<double>& p_grid, int k_max = 0,
                        const SolverOptions& options = {});

/// Default evaluation grid: an even `points`-point grid over the trait
/// interval (aligned with the tabulated density nodes when applicable),
/// or the atom values for discrete traits.
std::vector<double> default_personality_grid(const PersonalitySpec& personality, int points = 101);

struct CurvePointAnalytic {
    double p = 0.0;
    double expected_degree = 0.0;
};

/// E[k | p] on a grid, via the dispatched solver.
std::vector<CurvePointAnalytic> expected_degree_curve(const ModelSpec& spec,
                                                      const std::vector<double>& p_grid,
                                                      const SolverOptions& options = {});

}  // namespace friendnet::meanfield
