#include "microevo/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "microevo/rng.hpp"

namespace microevo {

const char* to_string(Formation f) {
    switch (f) {
        case Formation::diagonal: return "diagonal";
        case Formation::reversed_diagonal: return "reversed_diagonal";
        case Formation::side_by_side: return "side_by_side";
        case Formation::reversed_side_by_side: return "reversed_side_by_side";
        case Formation::surround: return "surround";
        case Formation::surrounded: return "surrounded";
        case Formation::random: return "random";
    }
    return "unknown";
}

Formation formation_from_string(const std::string& name) {
    for (Formation f : {Formation::diagonal, Formation::reversed_diagonal,
                        Formation::side_by_side, Formation::reversed_side_by_side,
                        Formation::surround, Formation::surrounded, Formation::random})
        if (name == to_string(f)) return f;
    throw std::invalid_argument("unknown formation '" + name + "'");
}

namespace {

constexpr double kCornerInset = 8.0;       // diagonal groups sit this far from the corner
constexpr double kSideSeparation = 20.0;   // side-by-side half-distance from map center
constexpr double kRingRadius = 10.0;       // surround/surrounded ring
constexpr double kGridSpacing = 1.0;

/// Square grid packing centered on `center`, 1-unit spacing, row-major.
std::vector<Vec2> grid_positions(Vec2 center, int count) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    const int rows = (count + cols - 1) / cols;
    std::vector<Vec2> out;
    out.reserve(count);
    const double x0 = center.x - kGridSpacing * (cols - 1) / 2.0;
    const double y0 = center.y - kGridSpacing * (rows - 1) / 2.0;
    for (int k = 0; k < count; ++k)
        out.push_back({x0 + kGridSpacing * (k % cols), y0 + kGridSpacing * (k / cols)});
    return out;
}

std::vector<Vec2> ring_positions(Vec2 center, int count, double radius) {
    std::vector<Vec2> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / count;
        out.push_back({center.x + radius * std::cos(angle),
                       center.y + radius * std::sin(angle)});
    }
    return out;
}

std::vector<Vec2> random_positions(Rng& rng, const Rect& bounds, int count) {
    std::vector<Vec2> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back({rng.uniform(bounds.min.x, bounds.max.x),
                       rng.uniform(bounds.min.y, bounds.max.y)});
    return out;
}

void validate(const Scenario& sc) {
    if (sc.ranged_count <= 0 || sc.melee_count <= 0)
        throw std::invalid_argument("scenario: unit counts must be > 0");
    if (sc.frame_budget < 0)
        throw std::invalid_argument("scenario: frame budget must be >= 0");
    for (const UnitStats& st : {sc.ranged_stats, sc.melee_stats}) {
        if (st.hitpoints_max <= 0.0 || st.damage <= 0.0 || st.attack_range <= 0.0 ||
            st.speed <= 0.0 || st.cooldown <= 0.0)
            throw std::invalid_argument("scenario: unit stats must be strictly positive");
        if (st.attack_range > sc.map_bounds.diagonal())
            throw std::invalid_argument("scenario: attack range exceeds map diagonal");
    }
}

}  // namespace

WorldState spawn(const Scenario& sc) {
    validate(sc);
    const Rect& b = sc.map_bounds;
    const Vec2 c = b.center();

    std::vector<Vec2> ranged_pos, melee_pos;
    const Vec2 low_corner = b.min + Vec2{kCornerInset, kCornerInset};
    const Vec2 high_corner = b.max - Vec2{kCornerInset, kCornerInset};

    Rng rng(sc.spawn_seed);
    switch (sc.formation) {
        case Formation::diagonal:
            ranged_pos = grid_positions(low_corner, sc.ranged_count);
            melee_pos = grid_positions(high_corner, sc.melee_count);
            break;
        case Formation::reversed_diagonal:
            ranged_pos = grid_positions(high_corner, sc.ranged_count);
            melee_pos = grid_positions(low_corner, sc.melee_count);
            break;
        case Formation::side_by_side:
            ranged_pos = grid_positions({c.x - kSideSeparation, c.y}, sc.ranged_count);
            melee_pos = grid_positions({c.x + kSideSeparation, c.y}, sc.melee_count);
            break;
        case Formation::reversed_side_by_side:
            ranged_pos = grid_positions({c.x + kSideSeparation, c.y}, sc.ranged_count);
            melee_pos = grid_positions({c.x - kSideSeparation, c.y}, sc.melee_count);
            break;
        case Formation::surround:
            melee_pos = grid_positions(c, sc.melee_count);
            ranged_pos = ring_positions(c, sc.ranged_count, kRingRadius);
            break;
        case Formation::surrounded:
            ranged_pos = grid_positions(c, sc.ranged_count);
            melee_pos = ring_positions(c, sc.melee_count, kRingRadius);
            break;
        case Formation::random:
            ranged_pos = random_positions(rng, b, sc.ranged_count);
            melee_pos = random_positions(rng, b, sc.melee_count);
            break;
    }

    for (const auto& positions : {ranged_pos, melee_pos})
        for (const Vec2& p : positions)
            if (!b.contains(p))
                throw std::invalid_argument("scenario: group does not fit inside the map");

    WorldState world;
    world.map_bounds = b;
    UnitId next_id = 1;
    for (const Vec2& p : ranged_pos)
        world.units.push_back({next_id++, Team::ranged, p, sc.ranged_stats.hitpoints_max,
                               0.0, false, sc.ranged_stats});
    for (const Vec2& p : melee_pos)
        world.units.push_back({next_id++, Team::melee, p, sc.melee_stats.hitpoints_max,
                               0.0, false, sc.melee_stats});
    world.seal_spawn_counts();
    return world;
}

TrainingSet default_training_set() {
    auto make = [](Formation f, int zealots) {
        Scenario sc;
        sc.formation = f;
        sc.melee_count = zealots;
        return sc;
    };
    return {
        make(Formation::diagonal, 25),
        make(Formation::reversed_diagonal, 20),
        make(Formation::side_by_side, 10),
        make(Formation::reversed_side_by_side, 15),
        make(Formation::surround, 20),
        make(Formation::surround, 10),
        make(Formation::surrounded, 20),
        make(Formation::surrounded, 25),
        make(Formation::random, 15),
        make(Formation::random, 25),
    };
}

double fitness(const FitnessInputs& in) {
    double f = in.starting_melee * in.melee_hitpoints_max;
    for (double hp : in.remaining_ranged_hp) f += hp;
    for (double hp : in.remaining_melee_hp) f -= hp;
    return f;
}

double max_fitness(const Scenario& sc) {
    return sc.melee_count * sc.melee_stats.hitpoints_max +
           sc.ranged_count * sc.ranged_stats.hitpoints_max;
}

}  // namespace microevo
