#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "microevo/evaluate.hpp"
#include "microevo/scenario.hpp"

namespace microevo {

struct SweepRow {
    Formation formation;
    int zealots = 0;
    int repeats = 0;
    double mean_remaining_ranged = 0.0;
    double mean_remaining_melee = 0.0;
    double mean_fitness = 0.0;
};

/// The six formations the generalization figures sweep over (random spawns
/// excluded; those are covered by distinct repeat seeds elsewhere).
std::vector<Formation> default_sweep_formations();

/// For every (formation, zealot count in [1, max_zealots]) runs `repeats`
/// episodes with distinct spawn seeds and averages the outcomes.
/// `base` supplies unit stats, map, frame budget and the ranged count.
std::vector<SweepRow> generalization_sweep(const Genome& genome,
                                           const std::vector<Formation>& formations,
                                           int max_zealots, int repeats,
                                           const Scenario& base,
                                           double move_scale = kDefaultMoveScale,
                                           std::uint64_t seed = 0);

inline constexpr const char* kSweepCsvHeader =
    "formation,zealots,repeats,mean_remaining_ranged,mean_remaining_melee,mean_fitness";

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace microevo
