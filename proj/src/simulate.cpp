#include "friendnet/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "friendnet/errors.hpp"

namespace friendnet {

const char* to_string(Subroutine s) {
    switch (s) {
        case Subroutine::alpha: return "alpha";
        case Subroutine::beta: return "beta";
        case Subroutine::gamma: return "gamma";
    }
    return "?";
}

double sample_personality(const PersonalitySpec& personality, Rng& rng) {
    return personality.sample(rng);
}

int realize_count(const EdgeCountSpec& count, double p, Rng& rng) {
    const double m = count.eval(p);
    if (!(m >= 0.0) || !std::isfinite(m))
        throw ValidationError("edge count must be nonnegative and finite");
    const double fl = std::floor(m);
    int k = static_cast<int>(fl);
    const double frac = m - fl;
    if (frac > 0.0 && rng.bernoulli(frac)) ++k;
    return k;
}

std::optional<std::size_t> weighted_select(std::span<const double> weights, Rng& rng) {
    if (weights.empty()) throw ValidationError("weighted_select requires a nonempty pool");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw ValidationError("selection weights must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0) return std::nullopt;
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last_positive = i;
        if (u < acc) return i;
    }
    return last_positive;  // floating roundoff at the very end
}

namespace {

/// Draws up to `want` targets proportional to `weights` among entries with
/// admissible[i] != 0. With without_replacement each pick retires its
/// index. When the admissible pool is nonempty but all its weights are
/// zero, selection falls back to uniform and `used_fallback` is set.
/// Returns the picked indices in draw order (may be fewer than `want` if
/// the pool is exhausted).
std::vector<int> draw_targets(const std::vector<double>& weights, std::vector<char>& admissible,
                              int want, bool without_replacement, Rng& rng,
                              bool& used_fallback) {
    const std::size_t n = weights.size();
    std::vector<int> chosen;
    if (want <= 0 || n == 0) return chosen;
    chosen.reserve(static_cast<std::size_t>(want));

    long admissible_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (weights[i] < 0.0 || !std::isfinite(weights[i]))
            throw ValidationError("selection weights must be finite and nonnegative");
        if (admissible[i]) ++admissible_count;
    }

    std::vector<double> cum(n, 0.0);
    double live_total = 0.0;
    auto rebuild = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (admissible[i]) acc += weights[i];
            cum[i] = acc;
        }
        live_total = acc;
    };
    rebuild();

    bool uniform_mode = false;
    std::vector<int> uniform_pool;
    auto enter_uniform = [&]() {
        uniform_mode = true;
        uniform_pool.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (admissible[i]) uniform_pool.push_back(static_cast<int>(i));
    };
    if (live_total <= 0.0) enter_uniform();

    double removed_weight = 0.0;
    while (static_cast<int>(chosen.size()) < want && admissible_count > 0) {
        int idx = -1;
        if (!uniform_mode && live_total - removed_weight <= 0.0) {
            // Positive-weight candidates may be exhausted; recompute exactly.
            rebuild();
            removed_weight = 0.0;
            if (live_total <= 0.0) enter_uniform();
        }
        if (!uniform_mode) {
            int rejections = 0;
            for (;;) {
                const double u = rng.uniform01() * live_total;
                auto it = std::upper_bound(cum.begin(), cum.end(), u);
                std::size_t cand = static_cast<std::size_t>(it - cum.begin());
                if (cand >= n) cand = n - 1;
                if (admissible[cand] && weights[cand] > 0.0) {
                    idx = static_cast<int>(cand);
                    break;
                }
                // Stale cumulative sums: retired indices still occupy mass.
                if (++rejections > 64) {
                    rebuild();
                    removed_weight = 0.0;
                    rejections = 0;
                    if (live_total <= 0.0) {
                        enter_uniform();
                        break;
                    }
                }
            }
        }
        if (uniform_mode) {
            used_fallback = true;
            const std::size_t j = static_cast<std::size_t>(
                rng.below(static_cast<std::uint64_t>(uniform_pool.size())));
            idx = uniform_pool[j];
            if (without_replacement) {
                uniform_pool[j] = uniform_pool.back();
                uniform_pool.pop_back();
            }
        }
        chosen.push_back(idx);
        if (without_replacement) {
            admissible[static_cast<std::size_t>(idx)] = 0;
            --admissible_count;
            removed_weight += weights[static_cast<std::size_t>(idx)];
        }
    }
    return chosen;
}

std::pair<int, int> uniform_pair(int n, Rng& rng) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    return {std::min(u, v), std::max(u, v)};
}

}  // namespace

GraphState init_state(const ModelSpec& spec, Rng& rng) {
    if (spec.initial_nodes < 1) throw ValidationError("initial_nodes must be at least 1");
    if (spec.initial_edges < 0) throw ValidationError("initial_edges must be nonnegative");
    GraphState state(spec.variant);
    for (int i = 0; i < spec.initial_nodes; ++i)
        state.add_node(sample_personality(spec.personality, rng));
    const int n = spec.initial_nodes;
    if (spec.variant == GraphVariant::simple) {
        const long max_pairs = static_cast<long>(n) * (n - 1) / 2;
        if (spec.initial_edges > max_pairs)
            throw ValidationError("initial_edges exceeds the number of distinct node pairs");
        if (max_pairs <= (1L << 20)) {
            std::vector<std::pair<int, int>> pairs;
            pairs.reserve(static_cast<std::size_t>(max_pairs));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
            for (long t = 0; t < spec.initial_edges; ++t) {
                const std::size_t j =
                    static_cast<std::size_t>(t) +
                    static_cast<std::size_t>(rng.below(pairs.size() - static_cast<std::size_t>(t)));
                std::swap(pairs[static_cast<std::size_t>(t)], pairs[j]);
                state.add_link(pairs[static_cast<std::size_t>(t)].first,
                               pairs[static_cast<std::size_t>(t)].second);
            }
        } else {
            long added = 0;
            while (added < spec.initial_edges) {
                const auto [u, v] = uniform_pair(n, rng);
                if (state.linked(u, v)) continue;
                state.add_link(u, v);
                ++added;
            }
        }
    } else {
        for (long t = 0; t < spec.initial_edges; ++t) {
            const auto [u, v] = uniform_pair(n, rng);
            state.add_link(u, v);
        }
    }
    return state;
}

RoundEvent subroutine_alpha(GraphState& state, const ModelSpec& spec, Rng& rng, long round) {
    const std::vector<double> degrees = state.degree_snapshot();
    const int pool = state.node_count();
    const double px = sample_personality(spec.personality, rng);
    const int want = realize_count(spec.count_alpha, px, rng);
    const int x = state.add_node(px);
    RoundEvent ev{round, Subroutine::alpha, x, want, 0, false};
    if (pool == 0 || want == 0) return ev;
    std::vector<double> weights(static_cast<std::size_t>(pool));
    for (int i = 0; i < pool; ++i)
        weights[static_cast<std::size_t>(i)] = spec.kernel_alpha.eval(
            state.personality(i), degrees[static_cast<std::size_t>(i)], px, 0.0);
    std::vector<char> admissible(static_cast<std::size_t>(pool), 1);
    bool fallback = false;
    const auto targets = draw_targets(weights, admissible, want,
                                      spec.variant == GraphVariant::simple, rng, fallback);
    for (int t : targets) state.add_link(x, t);
    ev.achieved = static_cast<int>(targets.size());
    ev.uniform_fallback = fallback;
    return ev;
}

RoundEvent subroutine_beta(GraphState& state, const ModelSpec& spec, Rng& rng, long round) {
    const int n = state.node_count();
    if (n < 1) throw ValidationError("subroutine requires a nonempty graph");
    const std::vector<double> degrees = state.degree_snapshot();
    const int vx = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double pvx = state.personality(vx);
    const int want = realize_count(spec.count_beta, pvx, rng);
    RoundEvent ev{round, Subroutine::beta, vx, want, 0, false};
    if (want == 0) return ev;
    std::vector<double> weights(static_cast<std::size_t>(n), 0.0);
    std::vector<char> admissible(static_cast<std::size_t>(n), 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
        if (i == vx) continue;
        if (spec.variant == GraphVariant::simple && state.linked(vx, i)) continue;
        admissible[static_cast<std::size_t>(i)] = 1;
        any = true;
        weights[static_cast<std::size_t>(i)] =
            spec.kernel_beta.eval(state.personality(i), degrees[static_cast<std::size_t>(i)],
                                  pvx, degrees[static_cast<std::size_t>(vx)]);
    }
    if (!any) return ev;
    bool fallback = false;
    const auto targets = draw_targets(weights, admissible, want,
                                      spec.variant == GraphVariant::simple, rng, fallback);
    for (int t : targets) state.add_link(vx, t);
    ev.achieved = static_cast<int>(targets.size());
    ev.uniform_fallback = fallback;
    return ev;
}

RoundEvent subroutine_gamma(GraphState& state, const ModelSpec& spec, Rng& rng, long round) {
    const int n = state.node_count();
    if (n < 1) throw ValidationError("subroutine requires a nonempty graph");
    const std::vector<double> degrees = state.degree_snapshot();
    const int vx = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double pvx = state.personality(vx);
    const int want = realize_count(spec.count_gamma, pvx, rng);
    RoundEvent ev{round, Subroutine::gamma, vx, want, 0, false};
    if (want == 0) return ev;
    if (spec.variant == GraphVariant::simple) {
        const auto nbrs = state.neighbors_sorted(vx);
        if (nbrs.empty()) return ev;
        std::vector<double> weights(nbrs.size());
        for (std::size_t j = 0; j < nbrs.size(); ++j)
            weights[j] = spec.kernel_gamma.eval(
                state.personality(nbrs[j]), degrees[static_cast<std::size_t>(nbrs[j])], pvx,
                degrees[static_cast<std::size_t>(vx)]);
        std::vector<char> admissible(nbrs.size(), 1);
        bool fallback = false;
        const auto picks = draw_targets(weights, admissible, want, true, rng, fallback);
        for (int j : picks) state.remove_link(vx, nbrs[static_cast<std::size_t>(j)]);
        ev.achieved = static_cast<int>(picks.size());
        ev.uniform_fallback = fallback;
        return ev;
    }
    // Weighted: each unit decrement re-selects among the currently
    // positive-weight neighbors; a pair stays selectable until its weight
    // reaches zero. Kernel arguments keep the round-start degree snapshot.
    int achieved = 0;
    bool fallback = false;
    for (int step = 0; step < want; ++step) {
        const auto nbrs = state.neighbors_sorted(vx);
        if (nbrs.empty()) break;
        std::vector<double> weights(nbrs.size());
        for (std::size_t j = 0; j < nbrs.size(); ++j)
            weights[j] = spec.kernel_gamma.eval(
                state.personality(nbrs[j]), degrees[static_cast<std::size_t>(nbrs[j])], pvx,
                degrees[static_cast<std::size_t>(vx)]);
        std::vector<char> admissible(nbrs.size(), 1);
        bool fb = false;
        const auto picks = draw_targets(weights, admissible, 1, true, rng, fb);
        fallback = fallback || fb;
        if (picks.empty()) break;
        state.remove_link(vx, nbrs[static_cast<std::size_t>(picks.front())]);
        ++achieved;
    }
    ev.achieved = achieved;
    ev.uniform_fallback = fallback;
    return ev;
}

RunResult run(const ModelSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    RunResult out{init_state(spec, rng), {}, {}, seed};
    out.events.reserve(static_cast<std::size_t>(spec.rounds));
    const bool verify_every_round = spec.rounds <= 1000;
    for (long t = 1; t <= spec.rounds; ++t) {
        const double u = rng.uniform01();
        RoundEvent ev;
        if (u < spec.rate_alpha)
            ev = subroutine_alpha(out.state, spec, rng, t);
        else if (u < spec.rate_alpha + spec.rate_beta)
            ev = subroutine_beta(out.state, spec, rng, t);
        else
            ev = subroutine_gamma(out.state, spec, rng, t);
        switch (ev.kind) {
            case Subroutine::alpha:
                ++out.summary.rounds_alpha;
                out.summary.links_added += ev.achieved;
                out.summary.shortfall_alpha += ev.requested - ev.achieved;
                break;
            case Subroutine::beta:
                ++out.summary.rounds_beta;
                out.summary.links_added += ev.achieved;
                out.summary.shortfall_beta += ev.requested - ev.achieved;
                break;
            case Subroutine::gamma:
                ++out.summary.rounds_gamma;
                out.summary.links_removed += ev.achieved;
                out.summary.shortfall_gamma += ev.requested - ev.achieved;
                break;
        }
        if (ev.uniform_fallback) ++out.summary.fallback_rounds;
        out.events.push_back(ev);
        if (verify_every_round || t % 100 == 0) out.state.verify_integrity();
    }
    out.state.verify_integrity();
    return out;
}

std::vector<RunResult> run_many(const ModelSpec& spec, std::uint64_t base_seed, int runs,
                                int jobs) {
    if (runs < 0) throw ValidationError("runs must be nonnegative");
    std::vector<std::optional<RunResult>> slots(static_cast<std::size_t>(runs));
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, std::max(1, runs));
    if (jobs == 1 || runs <= 1) {
        for (int i = 0; i < runs; ++i)
            slots[static_cast<std::size_t>(i)] = run(spec, base_seed + static_cast<std::uint64_t>(i));
    } else {
        std::atomic<int> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= runs) return;
                    try {
                        slots[static_cast<std::size_t>(i)] =
                            run(spec, base_seed + static_cast<std::uint64_t>(i));
                    } catch (...) {
                        std::lock_guard<std::mutex> guard(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    std::vector<RunResult> out;
    out.reserve(static_cast<std::size_t>(runs));
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

std::vector<SampleRecord> collect_samples(const GraphState& state, int run_id) {
    std::vector<SampleRecord> out;
    out.reserve(static_cast<std::size_t>(state.node_count()));
    for (int v = 0; v < state.node_count(); ++v)
        out.push_back({run_id, v, state.personality(v), state.degree(v)});
    return out;
}

SampleSet collect_sample_set(const ModelSpec& spec, const std::vector<RunResult>& results,
                             std::uint64_t base_seed) {
    SampleSet set;
    set.runs = static_cast<int>(results.size());
    set.rounds = spec.rounds;
    set.variant = spec.variant;
    set.base_seed = base_seed;
    set.p_low = spec.personality.low();
    set.p_high = spec.personality.high();
    for (int r = 0; r < static_cast<int>(results.size()); ++r) {
        set.seeds.push_back(results[static_cast<std::size_t>(r)].seed);
        const auto samples = collect_samples(results[static_cast<std::size_t>(r)].state, r);
        set.records.insert(set.records.end(), samples.begin(), samples.end());
    }
    return set;
}

}  // namespace friendnet
