#include <doctest.h>

#include <cmath>

#include "microevo/encoder.hpp"
#include "microevo/rng.hpp"

using namespace microevo;

namespace {

UnitState make_unit(UnitId id, Team team, Vec2 pos, const UnitStats& stats) {
    return {id, team, pos, stats.hitpoints_max, 0.0, false, stats};
}

WorldState world_with(std::vector<UnitState> units) {
    WorldState w;
    w.units = std::move(units);
    w.seal_spawn_counts();
    return w;
}

}  // namespace

TEST_CASE("region_index follows the frozen quadrant convention") {
    const double r = 5.0;
    CHECK(region_index({1, 1}, r) == 0);
    CHECK(region_index({-1, 1}, r) == 1);
    CHECK(region_index({-1, -1}, r) == 2);
    CHECK(region_index({1, -1}, r) == 3);
    CHECK(region_index({6, 6}, r) == 4);
    CHECK(region_index({-6, 6}, r) == 5);
    CHECK(region_index({-6, -6}, r) == 6);
    CHECK(region_index({6, -6}, r) == 7);
    // Axis ties resolve to the lower-numbered adjacent quadrant.
    CHECK(region_index({3, 0}, r) == 0);
    CHECK(region_index({-3, 0}, r) == 1);
    CHECK(region_index({0, 3}, r) == 0);
    CHECK(region_index({0, -3}, r) == 2);
    CHECK(region_index({0, 0}, r) == 0);
    // Distance exactly attack_range counts as inner.
    CHECK(region_index({5, 0}, r) == 0);
    CHECK(region_index({5.0001, 0}, r) == 4);
}

TEST_CASE("single enemy at relative (1,1) lands in R1 with distance sqrt2/5") {
    WorldState w = world_with({make_unit(1, Team::ranged, {20, 20}, kVultureStats),
                               make_unit(2, Team::melee, {21, 21}, kZealotStats)});
    const SensorVector s = encode(w, 1, 1.0);
    CHECK(s[0] == doctest::Approx(std::sqrt(2.0) / 5.0));
    CHECK(s[16] == 1.0);  // 1 of 1 starting enemies
    for (int r = 1; r < 8; ++r) {
        CHECK(s[r] == 1.0);       // empty enemy distance
        CHECK(s[16 + r] == 0.0);  // empty enemy count
    }
    for (int r = 0; r < 8; ++r) {
        CHECK(s[8 + r] == 1.0);   // no friendlies anywhere
        CHECK(s[24 + r] == 0.0);
    }
}

TEST_CASE("empty battlefield encodes empty-region defaults") {
    WorldState w = world_with({make_unit(1, Team::ranged, {16, 48}, kVultureStats)});
    const SensorVector s = encode(w, 1, 1.0);
    for (int r = 0; r < 8; ++r) {
        CHECK(s[r] == 1.0);
        CHECK(s[8 + r] == 1.0);
        CHECK(s[16 + r] == 0.0);
        CHECK(s[24 + r] == 0.0);
    }
    CHECK(s[32] == doctest::Approx(0.25));   // north
    CHECK(s[33] == doctest::Approx(0.75));   // south
    CHECK(s[34] == doctest::Approx(0.75));   // east
    CHECK(s[35] == doctest::Approx(0.25));   // west
}

TEST_CASE("unit at the map center sees 0.5 on all four boundary sensors") {
    WorldState w = world_with({make_unit(1, Team::ranged, {32, 32}, kVultureStats)});
    const SensorVector s = encode(w, 1, 1.0);
    for (int i = 32; i < 36; ++i) CHECK(s[i] == doctest::Approx(0.5));
}

TEST_CASE("self sensors reflect cooldown, hp, and attack state") {
    auto v = make_unit(1, Team::ranged, {32, 32}, kVultureStats);
    v.cooldown_remaining = kVultureStats.cooldown / 2.0;
    v.hp = 40.0;
    v.attack_move_flag = true;
    WorldState w = world_with({v});
    const SensorVector s = encode(w, 1, 0.7);
    CHECK(s[36] == doctest::Approx(0.5));
    CHECK(s[37] == doctest::Approx(0.5));
    CHECK(s[38] == 1.0);
    CHECK(s[39] == 0.7);
    CHECK(encode(w, 1, 3.0)[39] == 1.0);  // prev output clamped defensively
}

TEST_CASE("encode rejects unknown units") {
    WorldState w = world_with({make_unit(1, Team::ranged, {32, 32}, kVultureStats)});
    CHECK_THROWS_AS(encode(w, 2, 1.0), std::invalid_argument);
}

TEST_CASE("all sensors stay in [0,1] and counts are conserved under fuzzing") {
    Rng rng(12345);
    for (int iter = 0; iter < 2000; ++iter) {
        WorldState w;
        const int n_ranged = 1 + static_cast<int>(rng.uniform_index(6));
        const int n_melee = static_cast<int>(rng.uniform_index(12));
        UnitId id = 1;
        for (int i = 0; i < n_ranged; ++i) {
            auto u = make_unit(id++, Team::ranged,
                               {rng.uniform(0, 64), rng.uniform(0, 64)}, kVultureStats);
            u.hp = rng.uniform(0.01, 80.0);
            u.cooldown_remaining = rng.uniform(0.0, kVultureStats.cooldown);
            u.attack_move_flag = rng.bernoulli(0.5);
            w.units.push_back(u);
        }
        for (int i = 0; i < n_melee; ++i)
            w.units.push_back(make_unit(id++, Team::melee,
                                        {rng.uniform(0, 64), rng.uniform(0, 64)},
                                        kZealotStats));
        w.seal_spawn_counts();

        const SensorVector s = encode(w, 1, rng.uniform());
        for (double v : s) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        // Counts scale by starting totals; summing back recovers living units.
        double enemy_sum = 0.0, friendly_sum = 0.0;
        for (int r = 0; r < 8; ++r) {
            enemy_sum += s[16 + r] * w.starting_melee;
            friendly_sum += s[24 + r] * w.starting_ranged;
        }
        CHECK(enemy_sum == doctest::Approx(n_melee));
        CHECK(friendly_sum == doctest::Approx(n_ranged - 1));
    }
}

TEST_CASE("region membership is a partition") {
    Rng rng(99);
    for (int iter = 0; iter < 500; ++iter) {
        const Vec2 rel{rng.uniform(-40, 40), rng.uniform(-40, 40)};
        const int r = region_index(rel, 5.0);
        CHECK(r >= 0);
        CHECK(r < kNumRegions);
    }
}

TEST_CASE("encoding is translation invariant") {
    // Integer coordinates keep the relative-position arithmetic exact, so the
    // invariance can be asserted with == rather than a tolerance.
    Rng rng(4242);
    auto coord = [&] { return static_cast<double>(rng.uniform_index(31)); };
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<UnitState> units;
        UnitId id = 1;
        for (int i = 0; i < 4; ++i)
            units.push_back(make_unit(id++, Team::ranged, {coord(), coord()},
                                      kVultureStats));
        for (int i = 0; i < 6; ++i)
            units.push_back(make_unit(id++, Team::melee, {coord(), coord()},
                                      kZealotStats));
        WorldState w = world_with(units);

        const Vec2 shift{static_cast<double>(rng.uniform_index(21)),
                         static_cast<double>(rng.uniform_index(21))};
        WorldState w2 = w;
        for (auto& u : w2.units) u.position = u.position + shift;
        w2.map_bounds.min = w2.map_bounds.min + shift;
        w2.map_bounds.max = w2.map_bounds.max + shift;

        const SensorVector a = encode(w, 1, 0.5);
        const SensorVector b = encode(w2, 1, 0.5);
        for (int i = 0; i < kNumInputs; ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("decode maps centered outputs to idle and thresholds strictly") {
    CHECK(decode({0.5, 0.5, 0.4}, 10.0) == ActionCommand{{0, 0}, false});
    CHECK(decode({1.0, 0.0, 0.9}, 10.0) == ActionCommand{{10, -10}, true});
    CHECK(decode({0.5, 0.5, 0.5}, 10.0).attack == false);  // strict >
    CHECK(decode({0.5, 0.5, 0.50001}, 10.0).attack == true);
}

TEST_CASE("decode clamps out-of-range outputs defensively") {
    const ActionCommand c = decode({1.7, -0.3, 2.0}, 10.0);
    CHECK(c.target_offset == Vec2{10, -10});
    CHECK(c.attack);
}

TEST_CASE("any offset within the move scale is reachable by some raw output") {
    Rng rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        const double ms = 10.0;
        const Vec2 want{rng.uniform(-ms, ms), rng.uniform(-ms, ms)};
        const bool attack = rng.bernoulli(0.5);
        const std::array<double, kNumOutputs> raw{want.x / (2 * ms) + 0.5,
                                                  want.y / (2 * ms) + 0.5,
                                                  attack ? 1.0 : 0.0};
        const ActionCommand c = decode(raw, ms);
        CHECK(c.target_offset.x == doctest::Approx(want.x));
        CHECK(c.target_offset.y == doctest::Approx(want.y));
        CHECK(c.attack == attack);
    }
}
