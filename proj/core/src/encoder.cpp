#include "microevo/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace microevo {

int region_index(const Vec2& rel, double attack_range) {
    int quadrant;  // 0..3
    if (rel.x == 0.0 && rel.y == 0.0) {
        quadrant = 0;
    } else if (rel.y == 0.0) {
        // +x axis borders Q1/Q4 -> Q1; -x axis borders Q2/Q3 -> Q2.
        quadrant = rel.x > 0.0 ? 0 : 1;
    } else if (rel.x == 0.0) {
        // +y axis borders Q1/Q2 -> Q1; -y axis borders Q3/Q4 -> Q3.
        quadrant = rel.y > 0.0 ? 0 : 2;
    } else if (rel.x > 0.0) {
        quadrant = rel.y > 0.0 ? 0 : 3;
    } else {
        quadrant = rel.y > 0.0 ? 1 : 2;
    }
    const bool inner = rel.length() <= attack_range;
    return inner ? quadrant : quadrant + 4;
}

SensorVector encode(const WorldState& world, UnitId unit_id, double prev_attack_output) {
    const UnitState* self = world.find(unit_id);
    if (self == nullptr || !self->alive())
        throw std::invalid_argument("encode: unit not alive in world");

    const double range = self->stats.attack_range;
    const double diagonal = world.map_bounds.diagonal();

    std::array<double, kNumRegions> enemy_dist_sum{};
    std::array<double, kNumRegions> friendly_dist_sum{};
    std::array<int, kNumRegions> enemy_count{};
    std::array<int, kNumRegions> friendly_count{};

    for (const auto& u : world.units) {
        if (u.id == unit_id) continue;
        const Vec2 rel = u.position - self->position;
        const int r = region_index(rel, range);
        if (u.team == self->team) {
            friendly_count[r] += 1;
            friendly_dist_sum[r] += rel.length();
        } else {
            enemy_count[r] += 1;
            enemy_dist_sum[r] += rel.length();
        }
    }

    const int enemy_total =
        self->team == Team::ranged ? world.starting_melee : world.starting_ranged;
    const int friendly_total =
        self->team == Team::ranged ? world.starting_ranged : world.starting_melee;

    SensorVector s{};
    for (int r = 0; r < kNumRegions; ++r) {
        // Inner regions scale distance by attack range, outer by map diagonal.
        const double dist_scale = r < 4 ? range : diagonal;
        s[r] = enemy_count[r] > 0
                   ? std::clamp(enemy_dist_sum[r] / enemy_count[r] / dist_scale, 0.0, 1.0)
                   : 1.0;
        s[8 + r] = friendly_count[r] > 0
                       ? std::clamp(friendly_dist_sum[r] / friendly_count[r] / dist_scale,
                                    0.0, 1.0)
                       : 1.0;
        s[16 + r] = enemy_total > 0
                        ? static_cast<double>(enemy_count[r]) / enemy_total
                        : 0.0;
        s[24 + r] = friendly_total > 0
                        ? static_cast<double>(friendly_count[r]) / friendly_total
                        : 0.0;
    }

    const Rect& b = world.map_bounds;
    const Vec2 p = self->position;
    s[32] = (b.max.y - p.y) / b.height();  // north
    s[33] = (p.y - b.min.y) / b.height();  // south
    s[34] = (b.max.x - p.x) / b.width();   // east
    s[35] = (p.x - b.min.x) / b.width();   // west

    s[36] = self->stats.cooldown > 0.0
                ? self->cooldown_remaining / self->stats.cooldown
                : 0.0;
    s[37] = self->hp / self->stats.hitpoints_max;
    s[38] = self->attack_move_flag ? 1.0 : 0.0;
    s[39] = std::clamp(prev_attack_output, 0.0, 1.0);
    return s;
}

ActionCommand decode(const std::array<double, kNumOutputs>& raw, double move_scale) {
    const double o1 = std::clamp(raw[0], 0.0, 1.0);
    const double o2 = std::clamp(raw[1], 0.0, 1.0);
    const double o3 = std::clamp(raw[2], 0.0, 1.0);
    ActionCommand cmd;
    cmd.target_offset = {(o1 - 0.5) * 2.0 * move_scale, (o2 - 0.5) * 2.0 * move_scale};
    cmd.attack = o3 > 0.5;
    return cmd;
}

}  // namespace microevo
