#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "microevo/genome.hpp"
#include "microevo/rng.hpp"

namespace microevo {

struct EvolutionConfig {
    int population_size = 50;
    int generations = 100;
    int target_species = 5;
    double initial_connection_probability = 0.2;
    double elitism_proportion = 0.2;
    double selection_proportion = 0.2;
    double asexual_proportion = 0.5;
    double sexual_proportion = 0.5;
    double interspecies_mating_rate = 0.01;
    double weight_range = 5.0;  // weights live in [-W, +W]
    double weight_mutation_probability = 0.95;
    double add_node_probability = 0.01;
    double add_connection_probability = 0.025;
    double delete_connection_probability = 0.025;
    std::uint64_t seed = 1;

    // Canonical NEAT internals the hyper-parameter table leaves open.
    double compat_excess_coeff = 1.0;
    double compat_disjoint_coeff = 1.0;
    double compat_weight_coeff = 0.4;
    double initial_compat_threshold = 3.0;
    double gene_reenable_probability = 0.25;
    double weight_perturb_probability = 0.9;  // vs full replacement
    double weight_perturb_power = 0.5;
    int stagnation_limit = 15;

    void validate() const;  // throws std::invalid_argument
};

/// Generation-scoped table of structural innovations. Querying the same
/// structural mutation twice within a generation returns the same numbers.
class InnovationRegistry {
public:
    InnovationRegistry() = default;
    InnovationRegistry(Innovation next_innovation, NodeId next_node)
        : next_innovation_(next_innovation), next_node_(next_node) {}

    Innovation connection_innovation(NodeId source, NodeId target);

    struct NodeSplit {
        NodeId node;
        Innovation in_innovation;
        Innovation out_innovation;
    };
    NodeSplit split_innovation(Innovation split_connection);

    /// Clears the per-generation reuse tables; counters keep increasing.
    void begin_generation();

    Innovation next_innovation() const { return next_innovation_; }
    NodeId next_node() const { return next_node_; }

private:
    std::map<std::pair<NodeId, NodeId>, Innovation> connection_table_;
    std::map<Innovation, NodeSplit> split_table_;
    Innovation next_innovation_ = 1;
    NodeId next_node_ = kNumInputs + kNumOutputs;
};

struct Species {
    Genome representative;
    std::vector<int> members;  // indices into the population
    double best_fitness = 0.0;
    int generations_since_improvement = 0;
};


Population seed_population(const EvolutionConfig& config, InnovationRegistry& registry,
                           Rng& rng);

void mutate(Genome& genome, InnovationRegistry& registry, const EvolutionConfig& config,
            Rng& rng);

/// Parents must have evaluated fitness. Matching genes pick a parent at
/// random; disjoint and excess genes come from the fitter parent (ties keep
/// both); genes disabled in either parent re-enable with a fixed probability.
Genome crossover(const Genome& parent_a, const Genome& parent_b, double reenable_probability,
                 Rng& rng);

double compatibility_distance(const Genome& a, const Genome& b,
                              const EvolutionConfig& config);

/// Full speciation state carried across generations.
struct SpeciationState {
    std::vector<Species> species;
    double compat_threshold = 3.0;
};

/// Reassigns every genome to a species (existing representatives first, new
/// species otherwise) and nudges the threshold +-10% toward the target count.
void speciate(const Population& population, SpeciationState& state,
              const EvolutionConfig& config);

struct ReproductionCounters {
    int crossovers = 0;
    int asexual = 0;
    int interspecies = 0;
};

/// Produces the next population from an evaluated, speciated one.
Population next_generation(const Population& population, SpeciationState& state,
                           InnovationRegistry& registry, const EvolutionConfig& config,
                           Rng& rng, ReproductionCounters* counters = nullptr);

}  // namespace microevo
