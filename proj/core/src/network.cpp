#include "microevo/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

namespace microevo {

namespace {
// Canonical steepened sigmoid.
double squash(double x) { return 1.0 / (1.0 + std::exp(-4.9 * x)); }
}  // namespace

Network::Network(const Genome& genome) {
    // Deterministic evaluation order: Kahn's algorithm over enabled edges,
    // smallest node id first. When only cycles remain, the smallest-id node
    // is forced through and its unsatisfied incoming edges become recurrent.
    std::vector<NodeId> ids;
    ids.reserve(genome.nodes.size());
    for (const auto& n : genome.nodes) ids.push_back(n.id);
    std::ranges::sort(ids);

    std::map<NodeId, int> indegree;
    std::map<NodeId, std::vector<NodeId>> out_edges;
    for (NodeId id : ids) indegree[id] = 0;
    for (const auto& c : genome.connections) {
        if (!c.enabled) continue;
        out_edges[c.source].push_back(c.target);
        indegree[c.target] += 1;
    }

    std::set<NodeId> ready, pending;
    for (NodeId id : ids) (indegree[id] == 0 ? ready : pending).insert(id);

    std::vector<NodeId> order;
    order.reserve(ids.size());
    while (!ready.empty() || !pending.empty()) {
        NodeId n;
        if (!ready.empty()) {
            n = *ready.begin();
            ready.erase(ready.begin());
        } else {
            n = *pending.begin();  // cycle: force through
            pending.erase(pending.begin());
        }
        order.push_back(n);
        for (NodeId m : out_edges[n]) {
            if (!pending.contains(m)) continue;
            if (--indegree[m] == 0) {
                pending.erase(m);
                ready.insert(m);
            }
        }
    }

    std::map<NodeId, int> dense;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) dense[order[i]] = i;

    nodes_.resize(order.size());
    for (const auto& c : genome.connections) {
        if (!c.enabled) continue;
        const int s = dense.at(c.source);
        const int t = dense.at(c.target);
        if (s < t)
            nodes_[t].incoming.push_back({s, c.weight});
        else
            nodes_[t].recurrent_incoming.push_back({s, c.weight});
    }

    input_index_.resize(kNumInputs);
    is_input_.assign(order.size(), false);
    for (NodeId i = 0; i < kNumInputs; ++i) {
        input_index_[i] = dense.at(i);
        is_input_[dense.at(i)] = true;
    }
    for (int o = 0; o < kNumOutputs; ++o) output_index_[o] = dense.at(output_node(o));

    current_.assign(order.size(), 0.0);
    previous_.assign(order.size(), 0.0);
}

std::array<double, kNumOutputs> Network::activate(const SensorVector& inputs) {
    for (int i = 0; i < kNumInputs; ++i) current_[input_index_[i]] = inputs[i];
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        if (is_input_[i]) continue;
        double sum = 0.0;
        for (const Edge& e : nodes_[i].incoming) sum += e.weight * current_[e.source];
        for (const Edge& e : nodes_[i].recurrent_incoming)
            sum += e.weight * previous_[e.source];
        current_[i] = squash(sum);
    }
    previous_ = current_;

    std::array<double, kNumOutputs> out{};
    for (int o = 0; o < kNumOutputs; ++o) out[o] = current_[output_index_[o]];
    return out;
}

void Network::reset() {
    std::ranges::fill(current_, 0.0);
    std::ranges::fill(previous_, 0.0);
}

ControllerFactory make_genome_controller_factory(const Genome& genome) {
    return [genome]() -> Controller {
        auto net = std::make_shared<Network>(genome);
        return [net](const SensorVector& s) { return net->activate(s); };
    };
}

}  // namespace microevo
