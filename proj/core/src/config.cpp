#include "microevo/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace microevo {

using nlohmann::json;

namespace {

json stats_to_json(const UnitStats& s) {
    return {{"hitpoints_max", s.hitpoints_max},
            {"damage", s.damage},
            {"attack_range", s.attack_range},
            {"speed", s.speed},
            {"cooldown", s.cooldown}};
}

UnitStats stats_from_json(const json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "vulture") return kVultureStats;
        if (name == "hellion") return kHellionStats;
        if (name == "zealot") return kZealotStats;
        throw ConfigError("unknown unit preset '" + name + "'");
    }
    UnitStats s;
    s.hitpoints_max = j.at("hitpoints_max").get<double>();
    s.damage = j.at("damage").get<double>();
    s.attack_range = j.at("attack_range").get<double>();
    s.speed = j.at("speed").get<double>();
    s.cooldown = j.at("cooldown").get<double>();
    return s;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

constexpr int kConfigSchemaVersion = 1;

}  // namespace

json scenario_to_json(const Scenario& sc) {
    return {{"formation", to_string(sc.formation)},
            {"ranged_count", sc.ranged_count},
            {"melee_count", sc.melee_count},
            {"ranged_stats", stats_to_json(sc.ranged_stats)},
            {"melee_stats", stats_to_json(sc.melee_stats)},
            {"map", {{"min", {sc.map_bounds.min.x, sc.map_bounds.min.y}},
                     {"max", {sc.map_bounds.max.x, sc.map_bounds.max.y}}}},
            {"frame_budget", sc.frame_budget},
            {"spawn_seed", sc.spawn_seed}};
}

Scenario scenario_from_json(const json& j) {
    Scenario sc;
    sc.formation = formation_from_string(j.at("formation").get<std::string>());
    maybe(j, "ranged_count", sc.ranged_count);
    maybe(j, "melee_count", sc.melee_count);
    if (j.contains("ranged_stats")) sc.ranged_stats = stats_from_json(j.at("ranged_stats"));
    if (j.contains("melee_stats")) sc.melee_stats = stats_from_json(j.at("melee_stats"));
    if (j.contains("map")) {
        const auto& m = j.at("map");
        sc.map_bounds.min = {m.at("min")[0].get<double>(), m.at("min")[1].get<double>()};
        sc.map_bounds.max = {m.at("max")[0].get<double>(), m.at("max")[1].get<double>()};
    }
    maybe(j, "frame_budget", sc.frame_budget);
    maybe(j, "spawn_seed", sc.spawn_seed);
    return sc;
}

namespace {

json evolution_to_json(const EvolutionConfig& e) {
    return {{"population_size", e.population_size},
            {"generations", e.generations},
            {"target_species", e.target_species},
            {"initial_connection_probability", e.initial_connection_probability},
            {"elitism_proportion", e.elitism_proportion},
            {"selection_proportion", e.selection_proportion},
            {"asexual_proportion", e.asexual_proportion},
            {"sexual_proportion", e.sexual_proportion},
            {"interspecies_mating_rate", e.interspecies_mating_rate},
            {"weight_range", e.weight_range},
            {"weight_mutation_probability", e.weight_mutation_probability},
            {"add_node_probability", e.add_node_probability},
            {"add_connection_probability", e.add_connection_probability},
            {"delete_connection_probability", e.delete_connection_probability},
            {"seed", e.seed}};
}

EvolutionConfig evolution_from_json(const json& j) {
    EvolutionConfig e;
    maybe(j, "population_size", e.population_size);
    maybe(j, "generations", e.generations);
    maybe(j, "target_species", e.target_species);
    maybe(j, "initial_connection_probability", e.initial_connection_probability);
    maybe(j, "elitism_proportion", e.elitism_proportion);
    maybe(j, "selection_proportion", e.selection_proportion);
    maybe(j, "asexual_proportion", e.asexual_proportion);
    maybe(j, "sexual_proportion", e.sexual_proportion);
    maybe(j, "interspecies_mating_rate", e.interspecies_mating_rate);
    maybe(j, "weight_range", e.weight_range);
    maybe(j, "weight_mutation_probability", e.weight_mutation_probability);
    maybe(j, "add_node_probability", e.add_node_probability);
    maybe(j, "add_connection_probability", e.add_connection_probability);
    maybe(j, "delete_connection_probability", e.delete_connection_probability);
    maybe(j, "seed", e.seed);
    return e;
}

void apply_env_overrides(RunConfig& cfg) {
    auto env_set = [](const char* name, auto&& setter) {
        if (const char* v = std::getenv(name)) setter(std::string(v));
    };
    auto as_int = [](const std::string& s) { return std::stoi(s); };
    auto as_u64 = [](const std::string& s) { return std::stoull(s); };
    auto as_double = [](const std::string& s) { return std::stod(s); };

    EvolutionConfig& e = cfg.evolution;
    env_set("MICROEVO_POPULATION_SIZE", [&](auto s) { e.population_size = as_int(s); });
    env_set("MICROEVO_GENERATIONS", [&](auto s) { e.generations = as_int(s); });
    env_set("MICROEVO_TARGET_SPECIES", [&](auto s) { e.target_species = as_int(s); });
    env_set("MICROEVO_INITIAL_CONNECTION_PROBABILITY",
            [&](auto s) { e.initial_connection_probability = as_double(s); });
    env_set("MICROEVO_ELITISM_PROPORTION", [&](auto s) { e.elitism_proportion = as_double(s); });
    env_set("MICROEVO_SELECTION_PROPORTION",
            [&](auto s) { e.selection_proportion = as_double(s); });
    env_set("MICROEVO_ASEXUAL_PROPORTION", [&](auto s) {
        e.asexual_proportion = as_double(s);
        e.sexual_proportion = 1.0 - e.asexual_proportion;
    });
    env_set("MICROEVO_INTERSPECIES_MATING_RATE",
            [&](auto s) { e.interspecies_mating_rate = as_double(s); });
    env_set("MICROEVO_WEIGHT_RANGE", [&](auto s) { e.weight_range = as_double(s); });
    env_set("MICROEVO_WEIGHT_MUTATION_PROBABILITY",
            [&](auto s) { e.weight_mutation_probability = as_double(s); });
    env_set("MICROEVO_ADD_NODE_PROBABILITY",
            [&](auto s) { e.add_node_probability = as_double(s); });
    env_set("MICROEVO_ADD_CONNECTION_PROBABILITY",
            [&](auto s) { e.add_connection_probability = as_double(s); });
    env_set("MICROEVO_DELETE_CONNECTION_PROBABILITY",
            [&](auto s) { e.delete_connection_probability = as_double(s); });
    env_set("MICROEVO_SEED", [&](auto s) { e.seed = as_u64(s); });
    env_set("MICROEVO_MOVE_SCALE", [&](auto s) { cfg.move_scale = as_double(s); });
    env_set("MICROEVO_CHECKPOINT_INTERVAL",
            [&](auto s) { cfg.checkpoint_interval = as_int(s); });
}

}  // namespace

json run_config_to_json(const RunConfig& cfg) {
    json scenarios = json::array();
    for (const Scenario& sc : cfg.scenarios) scenarios.push_back(scenario_to_json(sc));
    return {{"version", kConfigSchemaVersion},
            {"evolution", evolution_to_json(cfg.evolution)},
            {"move_scale", cfg.move_scale},
            {"checkpoint_interval", cfg.checkpoint_interval},
            {"reseed_each_generation", cfg.reseed_each_generation},
            {"scenarios", scenarios}};
}

RunConfig run_config_from_json(const json& j) {
    if (j.at("version").get<int>() != kConfigSchemaVersion)
        throw ConfigError("unsupported config version");
    RunConfig cfg;
    cfg.evolution = evolution_from_json(j.at("evolution"));
    maybe(j, "move_scale", cfg.move_scale);
    maybe(j, "checkpoint_interval", cfg.checkpoint_interval);
    maybe(j, "reseed_each_generation", cfg.reseed_each_generation);
    for (const auto& s : j.at("scenarios")) cfg.scenarios.push_back(scenario_from_json(s));
    if (cfg.scenarios.empty()) throw ConfigError("config: scenario list is empty");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    RunConfig cfg;
    try {
        cfg = run_config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    apply_env_overrides(cfg);
    try {
        cfg.evolution.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file " + path);
    out << run_config_to_json(cfg).dump(2) << '\n';
}

std::string RunConfig::hash() const {
    // FNV-1a over the canonical JSON serialization.
    const std::string text = run_config_to_json(*this).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

RunConfig paper_sim_config() {
    RunConfig cfg;
    cfg.evolution = EvolutionConfig{};  // defaults match the simulation column
    cfg.scenarios = default_training_set();
    return cfg;
}

}  // namespace microevo
