#pragma once

#include <cstdint>
#include <vector>

#include "microevo/units.hpp"

namespace microevo {

/// One movement/attack order for a single unit on the next tick.
struct ActionCommand {
    Vec2 target_offset;   // desired displacement relative to the unit
    bool attack = false;  // attack nearest in-range enemy instead of moving

    bool operator==(const ActionCommand&) const = default;
};

inline constexpr double kDefaultTimestep = 1.0 / 16.0;  // seconds
inline constexpr double kDefaultMapSize = 64.0;         // world units, square map
inline constexpr int kDefaultFrameBudget = 3000;        // ticks

struct WorldState {
    std::vector<UnitState> units;  // living units only
    Rect map_bounds{{0.0, 0.0}, {kDefaultMapSize, kDefaultMapSize}};
    std::int64_t frame = 0;
    double dt = kDefaultTimestep;

    // Spawn-time team sizes; sensor count scaling divides by these.
    int starting_ranged = 0;
    int starting_melee = 0;

    const UnitState* find(UnitId id) const {
        for (const auto& u : units)
            if (u.id == id) return &u;
        return nullptr;
    }
    UnitState* find(UnitId id) {
        for (auto& u : units)
            if (u.id == id) return &u;
        return nullptr;
    }

    int count_team(Team t) const {
        int n = 0;
        for (const auto& u : units) n += (u.team == t);
        return n;
    }

    /// Records the current unit counts as the starting team sizes.
    /// spawn() calls this; hand-built worlds should too before encoding.
    void seal_spawn_counts() {
        starting_ranged = count_team(Team::ranged);
        starting_melee = count_team(Team::melee);
    }
};

}  // namespace microevo
