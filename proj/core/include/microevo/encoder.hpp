#pragma once

#include <array>

#include "microevo/world.hpp"

namespace microevo {

inline constexpr int kNumInputs = 40;
inline constexpr int kNumOutputs = 3;
inline constexpr int kNumRegions = 8;
inline constexpr double kDefaultMoveScale = 10.0;  // decode radius, world units

/// The 40 scaled network inputs, in the frozen layout genomes index into:
///   [0..7]   enemy average distance per region R1..R8
///   [8..15]  friendly average distance per region
///   [16..23] enemy count per region
///   [24..31] friendly count per region
///   [32..35] boundary distance N, S, E, W
///   [36]     self cooldown
///   [37]     self hitpoints
///   [38]     current attack/move state
///   [39]     previous attack/move output (raw scalar)
using SensorVector = std::array<double, kNumInputs>;

/// Region index for a relative position, 0-based (R1 == 0).
/// Quadrants are world-axis aligned: Q1=(+x,+y), Q2=(-x,+y), Q3=(-x,-y),
/// Q4=(+x,-y); R1-R4 are the parts within attack_range, R5-R8 beyond it.
/// Axis-aligned positions go to the lower-numbered adjacent quadrant and a
/// distance of exactly attack_range counts as inner.
int region_index(const Vec2& relative, double attack_range);

/// Builds the sensor vector for one controlled unit. prev_attack_output is
/// the raw third network output of the previous tick (1.0 at episode start).
/// Throws std::invalid_argument if the unit is not alive in the world.
SensorVector encode(const WorldState& world, UnitId unit_id, double prev_attack_output);

/// Maps the 3 raw network outputs to a command:
///   dx = (o1 - 0.5) * 2 * move_scale, dy likewise, attack = o3 > 0.5.
/// Outputs are clamped into [0,1] first.
ActionCommand decode(const std::array<double, kNumOutputs>& raw_outputs, double move_scale);

}  // namespace microevo
