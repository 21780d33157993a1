#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "microevo/sim.hpp"

namespace microevo {

/// Replay log format: one JSON object per line with keys
/// frame, unit, team, x, y, hp, attack, fired.
void write_replay(const std::vector<ReplayRecord>& records, std::ostream& out);
void write_replay(const std::vector<ReplayRecord>& records, const std::string& path);
std::vector<ReplayRecord> read_replay(std::istream& in);
std::vector<ReplayRecord> read_replay_file(const std::string& path);

/// Summary of hit-and-run behavior extracted from a replay.
struct KitingReport {
    std::int64_t ranged_unit_frames = 0;  // sum over ranged units of frames observed
    int attack_toggles = 0;               // attack<->move switches across all ranged units
    int fire_events = 0;
    double alternation_rate = 0.0;  // attack_toggles / ranged_unit_frames
    double mean_fire_distance = 0.0;    // to nearest melee at the firing instant
    double max_fire_distance = 0.0;
    double mean_distance_to_nearest_melee = 0.0;  // over all ranged unit frames
};

KitingReport kiting_report(const std::vector<ReplayRecord>& records);

std::string kiting_report_text(const KitingReport& report);

}  // namespace microevo
