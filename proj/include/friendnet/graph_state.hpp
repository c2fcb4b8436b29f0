#pragma once

#include <unordered_map>
#include <vector>

#include "friendnet/model.hpp"

namespace friendnet {

/// Evolving friendship graph. Nodes carry a fixed personality trait; links
/// are unweighted (simple variant) or carry positive integer weights
/// (weighted variant). A degree cache is maintained incrementally: in the
/// simple variant degree(v) is the neighbor count, in the weighted variant
/// it is the total incident weight.
class GraphState {
public:
    explicit GraphState(GraphVariant variant) : variant_(variant) {}

    GraphVariant variant() const { return variant_; }

    /// Adds an isolated node, returns its id (ids are dense, 0-based).
    int add_node(double personality);

    int node_count() const { return static_cast<int>(personalities_.size()); }
    double personality(int v) const { return personalities_[static_cast<std::size_t>(v)]; }
    double degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }

    bool linked(int u, int v) const;
    double weight(int u, int v) const;

    /// Simple: creates the edge; throws ValidationError on self-loop or
    /// duplicate. Weighted: increments the pair weight by 1 (self-loops
    /// still rejected).
    void add_link(int u, int v);

    /// Simple: removes the edge; throws ValidationError if absent.
    /// Weighted: decrements the pair weight by 1 and drops the pair at 0.
    void remove_link(int u, int v);

    /// Neighbor ids with positive weight, ascending.
    std::vector<int> neighbors_sorted(int v) const;

    /// Number of linked pairs.
    long long link_count() const { return pair_count_; }

    /// Sum of pair weights (equals link_count in the simple variant).
    double total_weight() const { return weight_total_; }

    /// Copy of the degree cache, indexed by node id.
    std::vector<double> degree_snapshot() const { return degrees_; }

    /// Recomputes degrees and pair totals from the adjacency structure and
    /// throws ValidationError if the caches disagree or a structural
    /// invariant (no self-loops, symmetric weights, simplicity) is broken.
    void verify_integrity() const;

private:
    void check_node(int v) const;

    GraphVariant variant_;
    std::vector<double> personalities_;
    std::vector<std::unordered_map<int, double>> adjacency_;
    std::vector<double> degrees_;
    long long pair_count_ = 0;
    double weight_total_ = 0.0;
};

}  // namespace friendnet
