#include "microevo/sweep.hpp"

#include <fstream>

#include "microevo/network.hpp"
#include "microevo/rng.hpp"

namespace microevo {

std::vector<Formation> default_sweep_formations() {
    return {Formation::diagonal,      Formation::reversed_diagonal,
            Formation::side_by_side,  Formation::reversed_side_by_side,
            Formation::surround,      Formation::surrounded};
}

std::vector<SweepRow> generalization_sweep(const Genome& genome,
                                           const std::vector<Formation>& formations,
                                           int max_zealots, int repeats,
                                           const Scenario& base, double move_scale,
                                           std::uint64_t seed) {
    if (max_zealots < 1) throw std::invalid_argument("sweep: max_zealots must be >= 1");
    if (repeats < 1) throw std::invalid_argument("sweep: repeats must be >= 1");

    const ControllerFactory factory = make_genome_controller_factory(genome);
    EpisodeOptions options;
    options.move_scale = move_scale;

    std::vector<SweepRow> rows;
    rows.reserve(formations.size() * static_cast<std::size_t>(max_zealots));
    for (std::size_t fi = 0; fi < formations.size(); ++fi) {
        for (int z = 1; z <= max_zealots; ++z) {
            SweepRow row{formations[fi], z, repeats, 0.0, 0.0, 0.0};
            for (int rep = 0; rep < repeats; ++rep) {
                Scenario sc = base;
                sc.formation = formations[fi];
                sc.melee_count = z;
                sc.spawn_seed = derive_seed(seed, fi * 1000 + static_cast<std::uint64_t>(z),
                                            static_cast<std::uint64_t>(rep));
                const EpisodeResult r =
                    run_episode(spawn(sc), factory, sc.frame_budget, options);
                row.mean_remaining_ranged += r.remaining_ranged;
                row.mean_remaining_melee += r.remaining_melee;
                row.mean_fitness += episode_fitness(r, sc);
            }
            row.mean_remaining_ranged /= repeats;
            row.mean_remaining_melee /= repeats;
            row.mean_fitness /= repeats;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    out.precision(17);
    for (const SweepRow& r : rows)
        out << to_string(r.formation) << ',' << r.zealots << ',' << r.repeats << ','
            << r.mean_remaining_ranged << ',' << r.mean_remaining_melee << ','
            << r.mean_fitness << '\n';
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep csv " + path);
    write_sweep_csv(rows, out);
}

}  // namespace microevo
