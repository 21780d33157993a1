#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "microevo/rng.hpp"
#include "microevo/sim.hpp"

namespace microevo {

/// Scripted reference policies run through the same episode pipeline as
/// evolved controllers. They read only the sensor vector.
///
///   stand_and_fire  always requests an attack
///   flee            moves away from enemy-heavy quadrants, nudged off walls
///   random          uniform outputs from a per-unit seeded stream
inline ControllerFactory make_baseline_factory(const std::string& policy,
                                               std::uint64_t seed = 0) {
    if (policy == "stand_and_fire") {
        return [] {
            return Controller([](const SensorVector&) {
                return std::array<double, kNumOutputs>{0.5, 0.5, 1.0};
            });
        };
    }
    if (policy == "flee") {
        return [] {
            return Controller([](const SensorVector& s) {
                // Threat direction from per-quadrant enemy mass, inner regions
                // weighted up since they are the immediate danger.
                double tx = 0.0, ty = 0.0;
                static constexpr double dir_x[4] = {1.0, -1.0, -1.0, 1.0};
                static constexpr double dir_y[4] = {1.0, 1.0, -1.0, -1.0};
                for (int q = 0; q < 4; ++q) {
                    const double mass = 2.0 * s[16 + q] + s[16 + 4 + q];
                    tx += mass * dir_x[q];
                    ty += mass * dir_y[q];
                }
                const double tlen = std::hypot(tx, ty);
                if (tlen == 0.0)
                    return std::array<double, kNumOutputs>{0.5, 0.5, 0.0};

                // Orbit the map while threatened: run from the enemy, follow
                // the tangent of a circle around the map center, and pull
                // back inside when drifting toward the edge. A faster unit on
                // this path can never be cornered by a slower pursuer.
                const double px = s[35], py = s[33];  // position as map fractions
                const double vx = px - 0.5, vy = py - 0.5;
                const double vlen = std::hypot(vx, vy);
                double hx = -tx / tlen, hy = -ty / tlen;
                if (vlen > 0.0) {
                    hx += 1.2 * (-vy / vlen);
                    hy += 1.2 * (vx / vlen);
                }
                const double overshoot = std::max(0.0, vlen - 0.35);
                if (vlen > 0.0) {
                    hx -= 8.0 * overshoot * vx / vlen;
                    hy -= 8.0 * overshoot * vy / vlen;
                }
                const double hlen = std::hypot(hx, hy);
                if (hlen > 0.0) {
                    hx /= hlen;
                    hy /= hlen;
                }
                return std::array<double, kNumOutputs>{0.5 + 0.5 * hx, 0.5 + 0.5 * hy,
                                                       0.0};
            });
        };
    }
    if (policy == "random") {
        auto counter = std::make_shared<std::uint64_t>(0);
        return [seed, counter] {
            auto rng = std::make_shared<Rng>(derive_seed(seed, (*counter)++));
            return Controller([rng](const SensorVector&) {
                return std::array<double, kNumOutputs>{rng->uniform(), rng->uniform(),
                                                       rng->uniform()};
            });
        };
    }
    throw std::invalid_argument("unknown baseline policy '" + policy + "'");
}

}  // namespace microevo
