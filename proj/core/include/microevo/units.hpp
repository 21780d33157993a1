#pragma once

#include <cstdint>
#include <string>

#include "microevo/geometry.hpp"

namespace microevo {

using UnitId = std::uint32_t;

enum class Team { ranged, melee };

inline const char* to_string(Team t) { return t == Team::ranged ? "ranged" : "melee"; }

struct UnitStats {
    double hitpoints_max = 0.0;
    double damage = 0.0;         // hp per attack
    double attack_range = 0.0;   // world units
    double speed = 0.0;          // world units per second
    double cooldown = 0.0;       // seconds between attacks

    bool operator==(const UnitStats&) const = default;
};

// Stat presets copied from the Brood War unit data the simulation models.
inline constexpr UnitStats kVultureStats{80.0, 20.0, 5.0, 4.96, 1.26};
inline constexpr UnitStats kHellionStats{90.0, 13.0, 5.0, 5.95, 1.78};
inline constexpr UnitStats kZealotStats{100.0, 16.0, 0.1, 3.15, 0.857};

struct UnitState {
    UnitId id = 0;
    Team team = Team::ranged;
    Vec2 position;
    double hp = 0.0;
    double cooldown_remaining = 0.0;
    bool attack_move_flag = false;  // executed attack/move state of the previous tick
    UnitStats stats;

    bool alive() const { return hp > 0.0; }
};

}  // namespace microevo
