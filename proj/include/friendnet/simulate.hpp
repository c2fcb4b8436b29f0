#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "friendnet/graph_state.hpp"
#include "friendnet/model.hpp"
#include "friendnet/rng.hpp"

namespace friendnet {

enum class Subroutine { alpha, beta, gamma };

const char* to_string(Subroutine s);

/// What one round did. `requested` is the realized link budget for the
/// round, `achieved` how many link changes actually happened; the
/// difference is a shortfall (candidate pool exhausted or empty).
struct RoundEvent {
    long round = 0;
    Subroutine kind = Subroutine::alpha;
    int actor = -1;  // new node id (alpha) or the selected existing node
    int requested = 0;
    int achieved = 0;
    bool uniform_fallback = false;  // proportional selection degenerated to uniform
};

/// Aggregated event ledger for a whole run.
struct EventSummary {
    long rounds_alpha = 0;
    long rounds_beta = 0;
    long rounds_gamma = 0;
    long long links_added = 0;
    long long links_removed = 0;
    long long shortfall_alpha = 0;
    long long shortfall_beta = 0;
    long long shortfall_gamma = 0;
    long fallback_rounds = 0;
};

struct SampleRecord {
    int run_id = 0;
    int node_id = 0;
    double personality = 0.0;
    double degree = 0.0;
};

/// Final per-node samples of one or more finished runs plus the metadata
/// needed to interpret them.
struct SampleSet {
    std::vector<SampleRecord> records;
    int runs = 0;
    long rounds = 0;
    GraphVariant variant = GraphVariant::simple;
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds;
    double p_low = -1.0;
    double p_high = 1.0;
    std::string config_digest;
};

struct RunResult {
    GraphState state;
    std::vector<RoundEvent> events;
    EventSummary summary;
    std::uint64_t seed = 0;
};

double sample_personality(const PersonalitySpec& personality, Rng& rng);

/// Stochastic rounding of m(p): floor(m) plus a Bernoulli(frac(m)) extra,
/// so the expectation equals m(p) exactly.
int realize_count(const EdgeCountSpec& count, double p, Rng& rng);

/// One draw proportional to `weights` (all nonnegative). Returns nullopt
/// when every weight is zero; callers fall back to a uniform draw and
/// record that in the round event.
std::optional<std::size_t> weighted_select(std::span<const double> weights, Rng& rng);

/// Initial graph: `initial_nodes` nodes with traits drawn from the
/// personality distribution, plus `initial_edges` uniform random links
/// (distinct pairs in the simple variant; unit weight increments, repeats
/// allowed, in the weighted variant).
GraphState init_state(const ModelSpec& spec, Rng& rng);

/// Round subroutines. Each snapshots degrees at entry, so kernel values
/// within a round are based on the state at the start of the round.
RoundEvent subroutine_alpha(GraphState& state, const ModelSpec& spec, Rng& rng, long round = 0);
RoundEvent subroutine_beta(GraphState& state, const ModelSpec& spec, Rng& rng, long round = 0);
RoundEvent subroutine_gamma(GraphState& state, const ModelSpec& spec, Rng& rng, long round = 0);

/// Full run: init_state, then `spec.rounds` rounds each executing one
/// subroutine chosen by the rates. Verifies graph integrity every round
/// for short runs (<= 1000 rounds) and every 100 rounds otherwise.
RunResult run(const ModelSpec& spec, std::uint64_t seed);

/// Runs `runs` independent replicas (seed, seed+1, ...) on up to `jobs`
/// threads (0 = hardware concurrency) and returns them in replica order,
/// so the output is independent of the thread count.
std::vector<RunResult> run_many(const ModelSpec& spec, std::uint64_t base_seed, int runs,
                                int jobs = 0);

/// Per-node records of a finished state.
std::vector<SampleRecord> collect_samples(const GraphState& state, int run_id);

/// collect_samples over all runs, with metadata filled in.
SampleSet collect_sample_set(const ModelSpec& spec, const std::vector<RunResult>& results,
                             std::uint64_t base_seed);

}  // namespace friendnet
