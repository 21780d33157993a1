#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "microevo/encoder.hpp"
#include "microevo/world.hpp"

namespace microevo {

/// Advances the world by one tick. Commands must cover every living ranged
/// unit; melee units run the built-in pursuit AI. Attack resolution is
/// simultaneous: all damage is computed against the pre-tick state and dead
/// units are removed afterwards.
/// Throws std::invalid_argument for commands addressed to unknown or dead
/// units, for missing ranged commands, and for non-finite offsets.
void step(WorldState& world, const std::map<UnitId, ActionCommand>& commands);

/// Hand-coded melee AI: pursue the nearest enemy, attack when in range.
/// Distance ties break toward the lowest enemy id. No enemies -> idle.
ActionCommand zealot_ai(const WorldState& world, UnitId zealot_id, double move_scale);

/// One tick-by-tick log entry for a unit, recorded after command execution.
struct ReplayRecord {
    std::int64_t frame;
    UnitId unit;
    Team team;
    Vec2 position;
    double hp;
    bool attack;   // executed action this tick
    bool fired;    // dealt damage this tick
};

struct EpisodeResult {
    int remaining_ranged = 0;
    int remaining_melee = 0;
    std::vector<double> ranged_hp;  // per surviving unit
    std::vector<double> melee_hp;
    std::int64_t frames_used = 0;
    std::vector<ReplayRecord> replay;  // empty unless recording was requested
};

/// A controller maps the sensor vector to the 3 raw network outputs. It may
/// be stateful (recurrent nets), so each controlled unit gets its own
/// instance from the factory.
using Controller = std::function<std::array<double, kNumOutputs>(const SensorVector&)>;
using ControllerFactory = std::function<Controller()>;

struct EpisodeOptions {
    double move_scale = kDefaultMoveScale;
    bool record_replay = false;
};

/// Runs an episode from an already spawned world until one team is wiped out
/// or the frame budget is exhausted. Deterministic for a given world and
/// controller.
EpisodeResult run_episode(WorldState world, const ControllerFactory& make_controller,
                          int frame_budget, const EpisodeOptions& options = {});

/// Convenience wrapper for stateless controllers shared across units.
EpisodeResult run_episode(WorldState world, const Controller& controller,
                          int frame_budget, const EpisodeOptions& options = {});

}  // namespace microevo
