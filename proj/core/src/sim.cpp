#include "microevo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace microevo {

namespace {

const UnitState* nearest_enemy(const WorldState& world, const UnitState& self) {
    const UnitState* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& u : world.units) {
        if (u.team == self.team) continue;
        const double d = distance(u.position, self.position);
        if (d < best_dist || (d == best_dist && best && u.id < best->id)) {
            best = &u;
            best_dist = d;
        }
    }
    return best;
}

void step_impl(WorldState& world, const std::map<UnitId, ActionCommand>& commands,
               std::vector<UnitId>* fired_out) {
    for (const auto& [id, cmd] : commands) {
        const UnitState* u = world.find(id);
        if (u == nullptr)
            throw std::invalid_argument("step: command for unknown or dead unit");
        if (u->team != Team::ranged)
            throw std::invalid_argument("step: command for engine-controlled melee unit");
        if (!std::isfinite(cmd.target_offset.x) || !std::isfinite(cmd.target_offset.y))
            throw std::invalid_argument("step: non-finite command offset");
    }
    for (const auto& u : world.units)
        if (u.team == Team::ranged && !commands.contains(u.id))
            throw std::invalid_argument("step: missing command for living ranged unit");

    // Resolve every command against the pre-tick snapshot so the outcome is
    // independent of unit order and both sides of a mutual engagement trade.
    std::unordered_map<UnitId, Vec2> snapshot;
    snapshot.reserve(world.units.size());
    for (const auto& u : world.units) snapshot[u.id] = u.position;

    // Melee decisions are made against the pre-tick state as well.
    std::unordered_map<UnitId, ActionCommand> melee_commands;
    for (const auto& u : world.units)
        if (u.team == Team::melee)
            melee_commands[u.id] = zealot_ai(world, u.id, kDefaultMoveScale);

    std::unordered_map<UnitId, double> pending_damage;

    for (auto& u : world.units) {
        u.cooldown_remaining = std::max(0.0, u.cooldown_remaining - world.dt);

        const ActionCommand cmd =
            u.team == Team::ranged ? commands.at(u.id) : melee_commands.at(u.id);
        u.attack_move_flag = cmd.attack;

        if (cmd.attack) {
            if (u.cooldown_remaining > 0.0) continue;
            // Nearest in-range enemy by snapshot position, ties to lowest id.
            const UnitState* target = nullptr;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& e : world.units) {
                if (e.team == u.team) continue;
                const double d = distance(snapshot.at(e.id), snapshot.at(u.id));
                if (d > u.stats.attack_range) continue;
                if (d < best || (d == best && target && e.id < target->id)) {
                    target = &e;
                    best = d;
                }
            }
            if (target != nullptr) {
                pending_damage[target->id] += u.stats.damage;
                u.cooldown_remaining = u.stats.cooldown;
                if (fired_out) fired_out->push_back(u.id);
            }
        } else {
            const double len = cmd.target_offset.length();
            const double max_move = u.stats.speed * world.dt;
            Vec2 delta = cmd.target_offset;
            if (len > max_move && len > 0.0) delta = delta * (max_move / len);
            u.position = world.map_bounds.clamp(snapshot.at(u.id) + delta);
        }
    }

    for (auto& u : world.units) {
        auto it = pending_damage.find(u.id);
        if (it != pending_damage.end()) u.hp = std::max(0.0, u.hp - it->second);
    }
    std::erase_if(world.units, [](const UnitState& u) { return !u.alive(); });
    world.frame += 1;
}

}  // namespace

void step(WorldState& world, const std::map<UnitId, ActionCommand>& commands) {
    step_impl(world, commands, nullptr);
}

ActionCommand zealot_ai(const WorldState& world, UnitId zealot_id, double move_scale) {
    const UnitState* self = world.find(zealot_id);
    if (self == nullptr) throw std::invalid_argument("zealot_ai: unit not alive");

    const UnitState* target = nearest_enemy(world, *self);
    if (target == nullptr) return {};  // nobody left to fight

    const Vec2 to_target = target->position - self->position;
    if (to_target.length() <= self->stats.attack_range) return {{0.0, 0.0}, true};

    Vec2 offset = to_target;
    if (offset.length() > move_scale)
        offset = offset * (move_scale / offset.length());
    return {offset, false};
}

EpisodeResult run_episode(WorldState world, const ControllerFactory& make_controller,
                          int frame_budget, const EpisodeOptions& options) {
    if (world.starting_ranged == 0 && world.starting_melee == 0)
        world.seal_spawn_counts();

    struct UnitController {
        Controller controller;
        double prev_attack_output = 1.0;  // attack-capable posture at spawn
    };
    std::unordered_map<UnitId, UnitController> controllers;
    for (const auto& u : world.units)
        if (u.team == Team::ranged) controllers[u.id] = {make_controller(), 1.0};

    EpisodeResult result;
    for (int frame = 0; frame < frame_budget; ++frame) {
        if (world.count_team(Team::ranged) == 0 || world.count_team(Team::melee) == 0)
            break;

        std::map<UnitId, ActionCommand> commands;
        for (const auto& u : world.units) {
            if (u.team != Team::ranged) continue;
            auto& uc = controllers.at(u.id);
            const SensorVector sensors = encode(world, u.id, uc.prev_attack_output);
            const auto raw = uc.controller(sensors);
            uc.prev_attack_output = raw[2];
            commands[u.id] = decode(raw, options.move_scale);
        }

        std::vector<UnitId> fired;
        step_impl(world, commands, options.record_replay ? &fired : nullptr);
        result.frames_used += 1;

        if (options.record_replay) {
            for (const auto& u : world.units) {
                const bool did_fire = std::ranges::find(fired, u.id) != fired.end();
                result.replay.push_back({world.frame, u.id, u.team, u.position, u.hp,
                                         u.attack_move_flag, did_fire});
            }
        }
    }

    for (const auto& u : world.units) {
        if (u.team == Team::ranged) {
            result.remaining_ranged += 1;
            result.ranged_hp.push_back(u.hp);
        } else {
            result.remaining_melee += 1;
            result.melee_hp.push_back(u.hp);
        }
    }
    return result;
}

EpisodeResult run_episode(WorldState world, const Controller& controller,
                          int frame_budget, const EpisodeOptions& options) {
    return run_episode(std::move(world), ControllerFactory([&] { return controller; }),
                       frame_budget, options);
}

}  // namespace microevo
