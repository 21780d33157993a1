#include "microevo/genome.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace microevo {

using nlohmann::json;

bool Genome::has_node(NodeId id) const {
    return std::ranges::any_of(nodes, [id](const NodeGene& n) { return n.id == id; });
}

bool Genome::has_connection(NodeId source, NodeId target) const {
    return std::ranges::any_of(connections, [&](const ConnectionGene& c) {
        return c.source == source && c.target == target;
    });
}

const ConnectionGene* Genome::find_connection(Innovation innovation) const {
    auto it = std::ranges::lower_bound(connections, innovation, {},
                                       &ConnectionGene::innovation);
    if (it != connections.end() && it->innovation == innovation) return &*it;
    return nullptr;
}

bool Genome::valid(std::string* why) const {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    int inputs = 0, outputs = 0;
    std::set<NodeId> node_ids;
    for (const auto& n : nodes) {
        if (!node_ids.insert(n.id).second) return fail("duplicate node id");
        if (n.kind == NodeKind::input) {
            if (n.id >= kNumInputs) return fail("input node id out of layout");
            ++inputs;
        } else if (n.kind == NodeKind::output) {
            if (n.id < kNumInputs || n.id >= kNumInputs + kNumOutputs)
                return fail("output node id out of layout");
            ++outputs;
        }
    }
    if (inputs != kNumInputs || outputs != kNumOutputs)
        return fail("wrong input/output node count");

    std::set<Innovation> innovations;
    std::set<std::pair<NodeId, NodeId>> enabled_pairs;
    Innovation prev = 0;
    bool first = true;
    for (const auto& c : connections) {
        if (!innovations.insert(c.innovation).second)
            return fail("duplicate innovation");
        if (!first && c.innovation < prev) return fail("connections not sorted");
        prev = c.innovation;
        first = false;
        if (!node_ids.contains(c.source) || !node_ids.contains(c.target))
            return fail("dangling connection endpoint");
        if (c.enabled && !enabled_pairs.insert({c.source, c.target}).second)
            return fail("duplicate enabled (source,target) pair");
    }
    return true;
}

bool Genome::same_structure(const Genome& other) const {
    return nodes == other.nodes && connections == other.connections;
}

Genome make_io_skeleton() {
    Genome g;
    g.nodes.reserve(kNumInputs + kNumOutputs);
    for (NodeId i = 0; i < kNumInputs; ++i)
        g.nodes.push_back({i, NodeKind::input});
    for (int o = 0; o < kNumOutputs; ++o)
        g.nodes.push_back({output_node(o), NodeKind::output});
    return g;
}

namespace {
constexpr int kGenomeSchemaVersion = 1;

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::input: return "input";
        case NodeKind::output: return "output";
        default: return "hidden";
    }
}

NodeKind kind_from_name(const std::string& s) {
    if (s == "input") return NodeKind::input;
    if (s == "output") return NodeKind::output;
    if (s == "hidden") return NodeKind::hidden;
    throw std::runtime_error("genome: unknown node kind '" + s + "'");
}
}  // namespace

json genome_to_json_obj(const Genome& g, std::uint64_t generation,
                        const std::string& config_hash) {
    json nodes = json::array();
    for (const auto& n : g.nodes)
        nodes.push_back({{"id", n.id}, {"kind", kind_name(n.kind)}});
    json conns = json::array();
    for (const auto& c : g.connections)
        conns.push_back({{"innovation", c.innovation},
                         {"source", c.source},
                         {"target", c.target},
                         {"weight", c.weight},
                         {"enabled", c.enabled}});
    return json{{"schema_version", kGenomeSchemaVersion},
                {"nodes", nodes},
                {"connections", conns},
                {"metadata",
                 {{"generation", generation},
                  {"fitness", g.fitness},
                  {"config_hash", config_hash}}}};
}

Genome genome_from_json_obj(const json& j) {
    if (j.at("schema_version").get<int>() != kGenomeSchemaVersion)
        throw std::runtime_error("genome: unsupported schema version");
    Genome g;
    for (const auto& n : j.at("nodes"))
        g.nodes.push_back({n.at("id").get<NodeId>(),
                           kind_from_name(n.at("kind").get<std::string>())});
    for (const auto& c : j.at("connections"))
        g.connections.push_back({c.at("innovation").get<Innovation>(),
                                 c.at("source").get<NodeId>(),
                                 c.at("target").get<NodeId>(),
                                 c.at("weight").get<double>(),
                                 c.at("enabled").get<bool>()});
    if (j.contains("metadata") && j.at("metadata").contains("fitness"))
        g.fitness = j.at("metadata").at("fitness").get<double>();
    std::string why;
    if (!g.valid(&why)) throw std::runtime_error("genome: invalid (" + why + ")");
    return g;
}

std::string genome_to_json(const Genome& g, std::uint64_t generation,
                           const std::string& config_hash) {
    return genome_to_json_obj(g, generation, config_hash).dump(2);
}

Genome genome_from_json(const std::string& text) {
    return genome_from_json_obj(json::parse(text));
}

void save_genome(const Genome& g, const std::string& path, std::uint64_t generation,
                 const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("genome: cannot write " + path);
    out << genome_to_json(g, generation, config_hash) << '\n';
}

Genome load_genome(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("genome: cannot read " + path);
    return genome_from_json(std::string(std::istreambuf_iterator<char>(in), {}));
}

}  // namespace microevo
