#include "friendnet/graph_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "friendnet/errors.hpp"

namespace friendnet {

int GraphState::add_node(double personality) {
    personalities_.push_back(personality);
    adjacency_.emplace_back();
    degrees_.push_back(0.0);
    return node_count() - 1;
}

void GraphState::check_node(int v) const {
    if (v < 0 || v >= node_count())
        throw ValidationError("node id out of range: " + std::to_string(v));
}

bool GraphState::linked(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& row = adjacency_[static_cast<std::size_t>(u)];
    return row.find(v) != row.end();
}

double GraphState::weight(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& row = adjacency_[static_cast<std::size_t>(u)];
    auto it = row.find(v);
    return it == row.end() ? 0.0 : it->second;
}

void GraphState::add_link(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw ValidationError("self-loops are not allowed");
    auto& row_u = adjacency_[static_cast<std::size_t>(u)];
    auto& row_v = adjacency_[static_cast<std::size_t>(v)];
    auto it = row_u.find(v);
    if (it == row_u.end()) {
        row_u.emplace(v, 1.0);
        row_v.emplace(u, 1.0);
        ++pair_count_;
    } else {
        if (variant_ == GraphVariant::simple)
            throw ValidationError("parallel edges are not allowed in the simple variant");
        it->second += 1.0;
        row_v[u] += 1.0;
    }
    degrees_[static_cast<std::size_t>(u)] += 1.0;
    degrees_[static_cast<std::size_t>(v)] += 1.0;
    weight_total_ += 1.0;
}

void GraphState::remove_link(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw ValidationError("self-loops are not allowed");
    auto& row_u = adjacency_[static_cast<std::size_t>(u)];
    auto it = row_u.find(v);
    if (it == row_u.end()) throw ValidationError("cannot remove a link that does not exist");
    it->second -= 1.0;
    auto& row_v = adjacency_[static_cast<std::size_t>(v)];
    row_v[u] -= 1.0;
    if (it->second <= 0.0) {
        row_u.erase(it);
        row_v.erase(u);
        --pair_count_;
    }
    degrees_[static_cast<std::size_t>(u)] -= 1.0;
    degrees_[static_cast<std::size_t>(v)] -= 1.0;
    weight_total_ -= 1.0;
}

std::vector<int> GraphState::neighbors_sorted(int v) const {
    check_node(v);
    const auto& row = adjacency_[static_cast<std::size_t>(v)];
    std::vector<int> out;
    out.reserve(row.size());
    for (const auto& [nbr, w] : row) out.push_back(nbr);
    std::sort(out.begin(), out.end());
    return out;
}

void GraphState::verify_integrity() const {
    const int n = node_count();
    std::vector<double> recomputed(static_cast<std::size_t>(n), 0.0);
    long long pairs = 0;
    double weight = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto& row = adjacency_[static_cast<std::size_t>(v)];
        for (const auto& [nbr, w] : row) {
            if (nbr == v) throw ValidationError("integrity: self-loop at node " + std::to_string(v));
            if (nbr < 0 || nbr >= n)
                throw ValidationError("integrity: dangling neighbor id " + std::to_string(nbr));
            if (!(w > 0.0))
                throw ValidationError("integrity: non-positive stored weight");
            if (variant_ == GraphVariant::simple && w != 1.0)
                throw ValidationError("integrity: simple variant weight differs from 1");
            if (std::floor(w) != w)
                throw ValidationError("integrity: non-integer weight");
            const auto& row_nbr = adjacency_[static_cast<std::size_t>(nbr)];
            auto back = row_nbr.find(v);
            if (back == row_nbr.end() || back->second != w)
                throw ValidationError("integrity: asymmetric adjacency");
            recomputed[static_cast<std::size_t>(v)] += w;
            if (v < nbr) {
                ++pairs;
                weight += w;
            }
        }
    }
    for (int v = 0; v < n; ++v) {
        if (recomputed[static_cast<std::size_t>(v)] != degrees_[static_cast<std::size_t>(v)])
            throw ValidationError("integrity: degree cache mismatch at node " + std::to_string(v));
    }
    if (pairs != pair_count_) throw ValidationError("integrity: pair count mismatch");
    if (weight != weight_total_) throw ValidationError("integrity: total weight mismatch");
}

}  // namespace friendnet
