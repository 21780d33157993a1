#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "microevo/encoder.hpp"

namespace microevo {

enum class NodeKind { input, output, hidden };

using NodeId = std::uint32_t;
using Innovation = std::uint64_t;

struct NodeGene {
    NodeId id;
    NodeKind kind;

    bool operator==(const NodeGene&) const = default;
};

struct ConnectionGene {
    Innovation innovation;
    NodeId source;
    NodeId target;
    double weight;
    bool enabled;

    bool operator==(const ConnectionGene&) const = default;
};

/// NEAT chromosome. Inputs occupy node ids [0, kNumInputs), outputs
/// [kNumInputs, kNumInputs + kNumOutputs), hidden nodes come after.
/// Connections are kept sorted by innovation number.
struct Genome {
    std::vector<NodeGene> nodes;
    std::vector<ConnectionGene> connections;
    double fitness = 0.0;

    bool has_node(NodeId id) const;
    bool has_connection(NodeId source, NodeId target) const;
    const ConnectionGene* find_connection(Innovation innovation) const;

    /// Structural validity: unique innovations, sorted order, endpoints
    /// present, no duplicate (source, target) pairs, fixed I/O layout.
    bool valid(std::string* why = nullptr) const;

    bool same_structure(const Genome& other) const;
};

using Population = std::vector<Genome>;

/// Minimal genome skeleton: the fixed 40 inputs and 3 outputs, no
/// connections, no hidden nodes.
Genome make_io_skeleton();

inline constexpr NodeId output_node(int output_index) {
    return static_cast<NodeId>(kNumInputs + output_index);
}

/// Versioned JSON interchange format for checkpoints and the CLI.
nlohmann::json genome_to_json_obj(const Genome& genome, std::uint64_t generation = 0,
                                  const std::string& config_hash = "");
Genome genome_from_json_obj(const nlohmann::json& j);
std::string genome_to_json(const Genome& genome, std::uint64_t generation = 0,
                           const std::string& config_hash = "");
Genome genome_from_json(const std::string& json_text);

void save_genome(const Genome& genome, const std::string& path,
                 std::uint64_t generation = 0, const std::string& config_hash = "");
Genome load_genome(const std::string& path);

}  // namespace microevo
