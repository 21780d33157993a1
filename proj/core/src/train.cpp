#include "microevo/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace microevo {

using nlohmann::json;

std::string stats_csv_header() {
    return "generation,best_fitness,mean_fitness,best_so_far,species_count";
}

std::string stats_csv_row(const GenerationStats& s) {
    std::ostringstream os;
    os.precision(17);
    os << s.generation << ',' << s.best_fitness << ',' << s.mean_fitness << ','
       << s.best_so_far << ',' << s.species_count;
    return os.str();
}

TrainingSet scenarios_for_generation(const RunConfig& config, int generation) {
    TrainingSet ts = config.scenarios;
    if (config.reseed_each_generation) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i].spawn_seed = derive_seed(config.evolution.seed, i,
                                           static_cast<std::uint64_t>(generation));
    }
    return ts;
}

namespace {

constexpr int kCheckpointSchemaVersion = 1;

json stats_to_json(const GenerationStats& s) {
    return {{"generation", s.generation},
            {"best_fitness", s.best_fitness},
            {"mean_fitness", s.mean_fitness},
            {"best_so_far", s.best_so_far},
            {"species_count", s.species_count}};
}

GenerationStats stats_from_json(const json& j) {
    return {j.at("generation").get<int>(), j.at("best_fitness").get<double>(),
            j.at("mean_fitness").get<double>(), j.at("best_so_far").get<double>(),
            j.at("species_count").get<int>()};
}

TrainResult run_loop(TrainerState state, const RunConfig& config, WorkerPool& pool,
                     const std::string& checkpoint_dir,
                     const std::function<void(const GenerationStats&)>& on_generation) {
    const EvolutionConfig& evo = config.evolution;
    InnovationRegistry registry(state.next_innovation, state.next_node);

    auto checkpoint_path = [&](int gen) {
        return checkpoint_dir + "/checkpoint_gen" + std::to_string(gen) + ".json";
    };
    auto flush = [&](const char* suffix = nullptr) {
        if (checkpoint_dir.empty()) return;
        state.next_innovation = registry.next_innovation();
        state.next_node = registry.next_node();
        save_checkpoint(state, config,
                        suffix ? checkpoint_dir + "/" + suffix
                               : checkpoint_path(state.generation));
    };

    for (;;) {
        const int gen = state.generation;
        if (!checkpoint_dir.empty() && gen % std::max(1, config.checkpoint_interval) == 0)
            flush();

        const TrainingSet ts = scenarios_for_generation(config, gen);
        std::vector<double> fitnesses;
        try {
            fitnesses = evaluate_population(state.population, ts, pool);
        } catch (const OrchestrationError&) {
            flush("checkpoint_emergency.json");
            throw;
        }
        for (std::size_t i = 0; i < state.population.size(); ++i)
            state.population[i].fitness = fitnesses[i];

        GenerationStats stats;
        stats.generation = gen;
        double sum = 0.0;
        std::size_t best_index = 0;
        for (std::size_t i = 0; i < fitnesses.size(); ++i) {
            sum += fitnesses[i];
            if (fitnesses[i] > fitnesses[best_index]) best_index = i;
        }
        stats.best_fitness = fitnesses[best_index];
        stats.mean_fitness = sum / fitnesses.size();
        if (!state.has_best || stats.best_fitness > state.best_fitness) {
            state.best_fitness = stats.best_fitness;
            state.best_genome = state.population[best_index];
            state.has_best = true;
        }
        stats.best_so_far = state.best_fitness;

        speciate(state.population, state.speciation, evo);
        stats.species_count = static_cast<int>(state.speciation.species.size());

        state.history.push_back(stats);
        if (on_generation) on_generation(stats);

        if (gen >= evo.generations) break;

        state.population =
            next_generation(state.population, state.speciation, registry, evo, state.rng);
        state.generation += 1;
    }

    flush("checkpoint_final.json");
    return {state.best_genome, state.best_fitness, state.history};
}

}  // namespace

void save_checkpoint(const TrainerState& state, const RunConfig& config,
                     const std::string& path) {
    json population = json::array();
    for (const Genome& g : state.population) population.push_back(genome_to_json_obj(g));
    json species = json::array();
    for (const Species& s : state.speciation.species)
        species.push_back({{"representative", genome_to_json_obj(s.representative)},
                           {"best_fitness", s.best_fitness},
                           {"generations_since_improvement", s.generations_since_improvement}});
    json history = json::array();
    for (const GenerationStats& s : state.history) history.push_back(stats_to_json(s));

    json j{{"schema_version", kCheckpointSchemaVersion},
           {"config_hash", config.hash()},
           {"generation", state.generation},
           {"population", population},
           {"species", species},
           {"compat_threshold", state.speciation.compat_threshold},
           {"rng_state", state.rng.save_state()},
           {"next_innovation", state.next_innovation},
           {"next_node", state.next_node},
           {"history", history},
           {"has_best", state.has_best},
           {"best_fitness", state.best_fitness}};
    if (state.has_best) j["best_genome"] = genome_to_json_obj(state.best_genome);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write checkpoint " + path);
    out << j.dump(2) << '\n';
}

TrainerState load_checkpoint(const std::string& path, const RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint " + path);
    const json j = json::parse(in);
    if (j.at("schema_version").get<int>() != kCheckpointSchemaVersion)
        throw std::runtime_error("unsupported checkpoint version");
    if (j.at("config_hash").get<std::string>() != config.hash())
        throw std::runtime_error("checkpoint does not match the supplied config");

    TrainerState state;
    state.generation = j.at("generation").get<int>();
    for (const auto& g : j.at("population"))
        state.population.push_back(genome_from_json_obj(g));
    for (const auto& s : j.at("species")) {
        Species sp;
        sp.representative = genome_from_json_obj(s.at("representative"));
        sp.best_fitness = s.at("best_fitness").get<double>();
        sp.generations_since_improvement =
            s.at("generations_since_improvement").get<int>();
        state.speciation.species.push_back(std::move(sp));
    }
    state.speciation.compat_threshold = j.at("compat_threshold").get<double>();
    state.rng.restore_state(j.at("rng_state").get<std::string>());
    state.next_innovation = j.at("next_innovation").get<Innovation>();
    state.next_node = j.at("next_node").get<NodeId>();
    for (const auto& h : j.at("history")) state.history.push_back(stats_from_json(h));
    state.has_best = j.at("has_best").get<bool>();
    state.best_fitness = j.at("best_fitness").get<double>();
    if (state.has_best) state.best_genome = genome_from_json_obj(j.at("best_genome"));
    return state;
}

TrainResult train(const RunConfig& config, WorkerPool& pool,
                  const std::string& checkpoint_dir,
                  const std::function<void(const GenerationStats&)>& on_generation) {
    config.evolution.validate();
    if (config.scenarios.empty())
        throw std::invalid_argument("train: training set must be non-empty");

    TrainerState state;
    state.rng = Rng(config.evolution.seed);
    InnovationRegistry registry;
    state.population = seed_population(config.evolution, registry, state.rng);
    state.next_innovation = registry.next_innovation();
    state.next_node = registry.next_node();
    state.speciation.compat_threshold = config.evolution.initial_compat_threshold;
    return run_loop(std::move(state), config, pool, checkpoint_dir, on_generation);
}

TrainResult resume(const std::string& checkpoint_path, const RunConfig& config,
                   WorkerPool& pool, const std::string& checkpoint_dir,
                   const std::function<void(const GenerationStats&)>& on_generation) {
    TrainerState state = load_checkpoint(checkpoint_path, config);
    return run_loop(std::move(state), config, pool, checkpoint_dir, on_generation);
}

}  // namespace microevo
