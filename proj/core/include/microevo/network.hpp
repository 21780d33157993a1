#pragma once

#include <array>
#include <vector>

#include "microevo/genome.hpp"
#include "microevo/sim.hpp"

namespace microevo {

/// Executable form of a genome. Enabled connections are split into a
/// feedforward set, evaluated in topological order, and a recurrent set
/// (edges that close a cycle) which read the previous tick's activations.
/// Instances carry that one-tick state, so each controlled unit gets its own.
class Network {
public:
    explicit Network(const Genome& genome);

    std::array<double, kNumOutputs> activate(const SensorVector& inputs);

    void reset();  // clears recurrent state

private:
    struct Edge {
        int source;  // dense node index
        double weight;
    };
    struct Node {
        std::vector<Edge> incoming;            // feedforward
        std::vector<Edge> recurrent_incoming;  // one-tick delayed
    };

    std::vector<Node> nodes_;      // in evaluation order
    std::vector<double> current_;  // activation per dense index
    std::vector<double> previous_;
    std::vector<bool> is_input_;
    std::vector<int> input_index_;
    std::array<int, kNumOutputs> output_index_{};
};

/// Controller factory backed by a genome; every call compiles a fresh
/// Network so recurrent state is per unit.
ControllerFactory make_genome_controller_factory(const Genome& genome);

}  // namespace microevo
