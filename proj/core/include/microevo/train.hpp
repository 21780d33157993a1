#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "microevo/config.hpp"
#include "microevo/evaluate.hpp"
#include "microevo/neat.hpp"

namespace microevo {

struct GenerationStats {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double best_so_far = 0.0;  // running max over generations
    int species_count = 0;
};

std::string stats_csv_header();
std::string stats_csv_row(const GenerationStats& stats);

struct TrainResult {
    Genome best_genome;  // all-time best
    double best_fitness = 0.0;
    std::vector<GenerationStats> stats;  // one row per evaluated generation
};

/// Complete training state between generations; serializable so an
/// interrupted run resumes bit-identically.
struct TrainerState {
    int generation = 0;
    Population population;
    SpeciationState speciation;
    Rng rng;
    Innovation next_innovation = 1;
    NodeId next_node = kNumInputs + kNumOutputs;
    std::vector<GenerationStats> history;
    Genome best_genome;
    double best_fitness = 0.0;
    bool has_best = false;
};

void save_checkpoint(const TrainerState& state, const RunConfig& config,
                     const std::string& path);
TrainerState load_checkpoint(const std::string& path, const RunConfig& config);

/// Runs the evolve loop: evaluate, speciate, reproduce, for
/// config.evolution.generations cycles. The initial random population counts
/// as generation 0, so the stats stream has generations + 1 rows.
/// Checkpoints are written to checkpoint_dir (when non-empty) every
/// config.checkpoint_interval generations and on orchestration failure.
TrainResult train(const RunConfig& config, WorkerPool& pool,
                  const std::string& checkpoint_dir = "",
                  const std::function<void(const GenerationStats&)>& on_generation = {});

/// Continues a checkpointed run to completion.
TrainResult resume(const std::string& checkpoint_path, const RunConfig& config,
                   WorkerPool& pool, const std::string& checkpoint_dir = "",
                   const std::function<void(const GenerationStats&)>& on_generation = {});

/// Scenario list for one generation: spawn seeds re-derived per generation
/// when the config asks for it, so every genome in a generation faces the
/// same layouts but layouts change between generations.
TrainingSet scenarios_for_generation(const RunConfig& config, int generation);

}  // namespace microevo
