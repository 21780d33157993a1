#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "microevo/world.hpp"

namespace microevo {

enum class Formation {
    diagonal,
    reversed_diagonal,
    side_by_side,
    reversed_side_by_side,
    surround,
    surrounded,
    random,
};

const char* to_string(Formation f);
Formation formation_from_string(const std::string& name);

struct Scenario {
    Formation formation = Formation::diagonal;
    int ranged_count = 5;
    int melee_count = 25;
    UnitStats ranged_stats = kVultureStats;
    UnitStats melee_stats = kZealotStats;
    Rect map_bounds{{0.0, 0.0}, {kDefaultMapSize, kDefaultMapSize}};
    int frame_budget = kDefaultFrameBudget;
    std::uint64_t spawn_seed = 0;
};

using TrainingSet = std::vector<Scenario>;

/// Places both teams according to the scenario's formation. Groups are packed
/// on a grid with 1-unit spacing; surround/surrounded rings have radius 10.
/// Random placement is uniform over the map, driven by spawn_seed.
/// Throws std::invalid_argument if a group cannot fit inside the map.
WorldState spawn(const Scenario& scenario);

/// The ten-scenario training set the evolution preset uses (five vultures
/// against 10..25 zealots over the five formation families).
TrainingSet default_training_set();

/// Episode-end inputs to the fitness formula.
struct FitnessInputs {
    int starting_melee = 0;               // Nz
    double melee_hitpoints_max = 100.0;   // Hzmax
    std::vector<double> remaining_melee_hp;
    std::vector<double> remaining_ranged_hp;
};

/// F = Nz * Hzmax + sum(remaining ranged hp) - sum(remaining melee hp).
/// Always >= 0 for reachable end states.
double fitness(const FitnessInputs& inputs);

double max_fitness(const Scenario& scenario);

}  // namespace microevo
