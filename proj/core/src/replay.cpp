#include "microevo/replay.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace microevo {

using nlohmann::json;

void write_replay(const std::vector<ReplayRecord>& records, std::ostream& out) {
    for (const ReplayRecord& r : records) {
        const json j{{"frame", r.frame},   {"unit", r.unit},
                     {"team", to_string(r.team)}, {"x", r.position.x},
                     {"y", r.position.y}, {"hp", r.hp},
                     {"attack", r.attack}, {"fired", r.fired}};
        out << j.dump() << '\n';
    }
}

void write_replay(const std::vector<ReplayRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write replay " + path);
    write_replay(records, out);
}

std::vector<ReplayRecord> read_replay(std::istream& in) {
    std::vector<ReplayRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        ReplayRecord r;
        r.frame = j.at("frame").get<std::int64_t>();
        r.unit = j.at("unit").get<UnitId>();
        r.team = j.at("team").get<std::string>() == "ranged" ? Team::ranged : Team::melee;
        r.position = {j.at("x").get<double>(), j.at("y").get<double>()};
        r.hp = j.at("hp").get<double>();
        r.attack = j.at("attack").get<bool>();
        r.fired = j.at("fired").get<bool>();
        records.push_back(r);
    }
    return records;
}

std::vector<ReplayRecord> read_replay_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read replay " + path);
    return read_replay(in);
}

KitingReport kiting_report(const std::vector<ReplayRecord>& records) {
    KitingReport rep;

    // Records are frame-ordered; regroup so distances can be measured
    // against the same frame's melee positions.
    std::map<std::int64_t, std::vector<const ReplayRecord*>> frames;
    for (const ReplayRecord& r : records) frames[r.frame].push_back(&r);

    std::map<UnitId, bool> last_attack;
    double fire_distance_sum = 0.0;
    double nearest_distance_sum = 0.0;

    for (const auto& [frame, items] : frames) {
        for (const ReplayRecord* r : items) {
            if (r->team != Team::ranged) continue;

            double nearest = std::numeric_limits<double>::infinity();
            for (const ReplayRecord* m : items) {
                if (m->team != Team::melee) continue;
                nearest = std::min(nearest, distance(r->position, m->position));
            }

            rep.ranged_unit_frames += 1;
            if (std::isfinite(nearest)) nearest_distance_sum += nearest;

            auto it = last_attack.find(r->unit);
            if (it != last_attack.end() && it->second != r->attack)
                rep.attack_toggles += 1;
            last_attack[r->unit] = r->attack;

            if (r->fired) {
                rep.fire_events += 1;
                if (std::isfinite(nearest)) {
                    fire_distance_sum += nearest;
                    rep.max_fire_distance = std::max(rep.max_fire_distance, nearest);
                }
            }
        }
    }

    if (rep.ranged_unit_frames > 0) {
        rep.alternation_rate =
            static_cast<double>(rep.attack_toggles) / rep.ranged_unit_frames;
        rep.mean_distance_to_nearest_melee = nearest_distance_sum / rep.ranged_unit_frames;
    }
    if (rep.fire_events > 0) rep.mean_fire_distance = fire_distance_sum / rep.fire_events;
    return rep;
}

std::string kiting_report_text(const KitingReport& r) {
    std::ostringstream os;
    os << "ranged_unit_frames: " << r.ranged_unit_frames << '\n'
       << "attack_toggles: " << r.attack_toggles << '\n'
       << "fire_events: " << r.fire_events << '\n'
       << "alternation_rate: " << r.alternation_rate << '\n'
       << "mean_fire_distance: " << r.mean_fire_distance << '\n'
       << "max_fire_distance: " << r.max_fire_distance << '\n'
       << "mean_distance_to_nearest_melee: " << r.mean_distance_to_nearest_melee << '\n';
    return os.str();
}

}  // namespace microevo
