// Command-line front end: training runs, generalization sweeps, replay
// export, scripted baselines, and the remote evaluation worker.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "microevo/baselines.hpp"
#include "microevo/config.hpp"
#include "microevo/network.hpp"
#include "microevo/replay.hpp"
#include "microevo/socket_pool.hpp"
#include "microevo/sweep.hpp"
#include "microevo/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace microevo;

namespace {

// Exit codes: 0 ok, 2 config/schema, 3 I/O, 4 runtime.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitRuntime = 4;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

/// One manifest per output location; enough to re-run the command.
struct Manifest {
    std::string command;
    json parameters;
    std::string started;
    std::vector<fs::path> artifacts;

    void write(const fs::path& path) const {
        json arts = json::object();
        for (const fs::path& a : artifacts)
            if (fs::exists(a)) arts[a.filename().string()] = file_hash(a);
        const json j{{"command", command},
                     {"parameters", parameters},
                     {"started", started},
                     {"finished", iso_timestamp()},
                     {"artifact_hashes", arts}};
        std::ofstream out(path);
        out << j.dump(2) << '\n';
    }
};

Scenario scenario_from_flags(const std::string& formation, int zealots, int ranged,
                             std::uint64_t seed) {
    Scenario sc;
    sc.formation = formation_from_string(formation);
    sc.melee_count = zealots;
    sc.ranged_count = ranged;
    sc.spawn_seed = seed;
    return sc;
}

int cmd_train(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, unsigned workers,
              const std::string& resume_from, const std::vector<std::string>& endpoints) {
    RunConfig config = load_run_config(config_path);
    if (seed_override) config.evolution.seed = *seed_override;

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    const fs::path checkpoints = out / "checkpoints";
    fs::create_directories(checkpoints);

    Manifest manifest{"train",
                      {{"config", config_path},
                       {"out", out_dir},
                       {"seed", config.evolution.seed},
                       {"workers", workers},
                       {"config_hash", config.hash()}},
                      iso_timestamp(),
                      {}};

    std::ofstream stats_csv(out / "stats.csv");
    if (!stats_csv) {
        std::cerr << "cannot write " << (out / "stats.csv") << "\n";
        return kExitIo;
    }
    stats_csv << stats_csv_header() << '\n';
    auto on_generation = [&](const GenerationStats& s) {
        stats_csv << stats_csv_row(s) << '\n';
        stats_csv.flush();
        std::cout << "gen " << s.generation << " best " << s.best_fitness << " mean "
                  << s.mean_fitness << " species " << s.species_count << "\n";
    };

    std::unique_ptr<WorkerPool> pool;
    if (!endpoints.empty())
        pool = std::make_unique<SocketWorkerPool>(endpoints, config.move_scale);
    else
        pool = std::make_unique<InProcessWorkerPool>(workers, config.move_scale);

    const TrainResult result =
        resume_from.empty()
            ? train(config, *pool, checkpoints.string(), on_generation)
            : resume(resume_from, config, *pool, checkpoints.string(), on_generation);

    save_genome(result.best_genome, (out / "best_genome.json").string(),
                result.stats.empty() ? 0 : result.stats.back().generation, config.hash());
    save_run_config(config, (out / "config_used.json").string());

    manifest.artifacts = {out / "stats.csv", out / "best_genome.json",
                          out / "config_used.json"};
    manifest.write(out / "manifest.json");
    std::cout << "best fitness " << result.best_fitness << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& genome_path, const std::string& out_csv,
              const std::vector<std::string>& formation_names, int max_zealots,
              int repeats, std::uint64_t seed) {
    const Genome genome = load_genome(genome_path);

    std::vector<Formation> formations;
    if (formation_names.empty())
        formations = default_sweep_formations();
    else
        for (const auto& n : formation_names)
            formations.push_back(formation_from_string(n));

    Manifest manifest{"sweep",
                      {{"genome", genome_path},
                       {"out", out_csv},
                       {"max_zealots", max_zealots},
                       {"repeats", repeats},
                       {"seed", seed}},
                      iso_timestamp(),
                      {}};

    const Scenario base;  // vulture vs zealot defaults
    const auto rows =
        generalization_sweep(genome, formations, max_zealots, repeats, base,
                             kDefaultMoveScale, seed);
    write_sweep_csv(rows, out_csv);
    manifest.artifacts = {out_csv};
    manifest.write(out_csv + ".manifest.json");
    std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
    return kExitOk;
}

int cmd_replay(const std::string& genome_path, const std::string& policy,
               const std::string& out_path, const std::string& formation, int zealots,
               int ranged, std::uint64_t seed, bool report) {
    ControllerFactory factory;
    if (!genome_path.empty())
        factory = make_genome_controller_factory(load_genome(genome_path));
    else
        factory = make_baseline_factory(policy.empty() ? "stand_and_fire" : policy, seed);

    const Scenario sc = scenario_from_flags(formation, zealots, ranged, seed);
    EpisodeOptions options;
    options.record_replay = true;
    const EpisodeResult result = run_episode(spawn(sc), factory, sc.frame_budget, options);

    write_replay(result.replay, out_path);

    Manifest manifest{"replay",
                      {{"genome", genome_path},
                       {"policy", policy},
                       {"formation", formation},
                       {"zealots", zealots},
                       {"ranged", ranged},
                       {"seed", seed},
                       {"out", out_path}},
                      iso_timestamp(),
                      {out_path}};
    manifest.write(out_path + ".manifest.json");

    std::cout << "frames " << result.frames_used << " remaining ranged "
              << result.remaining_ranged << " remaining melee " << result.remaining_melee
              << " fitness " << episode_fitness(result, sc) << "\n";
    if (report) std::cout << kiting_report_text(kiting_report(result.replay));
    return kExitOk;
}

int cmd_baseline(const std::string& policy, const std::string& formation, int zealots,
                 int ranged, std::uint64_t seed) {
    const ControllerFactory factory = make_baseline_factory(policy, seed);
    const Scenario sc = scenario_from_flags(formation, zealots, ranged, seed);
    const EpisodeResult result = run_episode(spawn(sc), factory, sc.frame_budget);
    const double f = episode_fitness(result, sc);
    std::cout << "policy " << policy << " formation " << formation << " zealots "
              << zealots << "\n"
              << "fitness " << f << " / max " << max_fitness(sc) << "\n"
              << "remaining ranged " << result.remaining_ranged << " remaining melee "
              << result.remaining_melee << " frames " << result.frames_used << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NEAT micro-combat trainer and evaluation tools"};
    app.require_subcommand(1);

    // train
    auto* train_cmd = app.add_subcommand("train", "Evolve controllers per a config file");
    std::string config_path, out_dir, resume_from;
    std::optional<std::uint64_t> seed_override;
    unsigned workers = std::thread::hardware_concurrency();
    std::vector<std::string> endpoints;
    train_cmd->add_option("--config", config_path, "run config (JSON)")->required();
    train_cmd->add_option("--out", out_dir, "output directory")->required();
    train_cmd->add_option("--seed", seed_override, "override the config RNG seed");
    train_cmd->add_option("--workers", workers, "in-process worker threads");
    train_cmd->add_option("--resume", resume_from, "checkpoint file to continue from");
    train_cmd->add_option("--remote-worker", endpoints,
                          "host:port of evaluation workers (replaces in-process pool)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Generalization sweep over zealot counts");
    std::string genome_path, out_csv;
    std::vector<std::string> formations;
    int max_zealots = 30, repeats = 10;
    std::uint64_t seed = 0;
    sweep_cmd->add_option("--genome", genome_path, "genome JSON file")->required();
    sweep_cmd->add_option("--out", out_csv, "output CSV path")->required();
    sweep_cmd->add_option("--formations", formations, "formations to sweep");
    sweep_cmd->add_option("--max-zealots", max_zealots, "sweep zealot counts 1..N");
    sweep_cmd->add_option("--repeats", repeats, "episodes per cell");
    sweep_cmd->add_option("--seed", seed, "sweep seed");

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Export a tick-by-tick episode log");
    std::string replay_genome, replay_policy, replay_out, replay_formation = "diagonal";
    int replay_zealots = 25, replay_ranged = 5;
    std::uint64_t replay_seed = 0;
    bool replay_report = false;
    replay_cmd->add_option("--genome", replay_genome, "genome JSON file");
    replay_cmd->add_option("--policy", replay_policy,
                           "baseline policy instead of a genome");
    replay_cmd->add_option("--out", replay_out, "replay output path")->required();
    replay_cmd->add_option("--formations,--formation", replay_formation, "spawn formation");
    replay_cmd->add_option("--zealots", replay_zealots, "zealot count");
    replay_cmd->add_option("--ranged", replay_ranged, "ranged unit count");
    replay_cmd->add_option("--seed", replay_seed, "spawn seed");
    replay_cmd->add_flag("--report", replay_report, "print a kiting report");

    // baseline
    auto* baseline_cmd = app.add_subcommand("baseline", "Run a scripted baseline policy");
    std::string policy = "stand_and_fire", baseline_formation = "diagonal";
    int baseline_zealots = 25, baseline_ranged = 5;
    std::uint64_t baseline_seed = 0;
    baseline_cmd->add_option("--policy", policy, "stand_and_fire | flee | random");
    baseline_cmd->add_option("--formations,--formation", baseline_formation, "spawn formation");
    baseline_cmd->add_option("--zealots", baseline_zealots, "zealot count");
    baseline_cmd->add_option("--ranged", baseline_ranged, "ranged unit count");
    baseline_cmd->add_option("--seed", baseline_seed, "episode seed");

    // worker
    auto* worker_cmd = app.add_subcommand("worker", "Serve remote evaluation requests");
    int port = 9100;
    worker_cmd->add_option("--port", port, "listen port");

    // preset
    auto* preset_cmd =
        app.add_subcommand("preset", "Write the published-experiment config preset");
    std::string preset_out = "paper_sim.cfg";
    preset_cmd->add_option("--out", preset_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train_cmd)
            return cmd_train(config_path, out_dir, seed_override, workers, resume_from,
                             endpoints);
        if (*sweep_cmd)
            return cmd_sweep(genome_path, out_csv, formations, max_zealots, repeats, seed);
        if (*replay_cmd)
            return cmd_replay(replay_genome, replay_policy, replay_out, replay_formation,
                              replay_zealots, replay_ranged, replay_seed, replay_report);
        if (*baseline_cmd)
            return cmd_baseline(policy, baseline_formation, baseline_zealots,
                                baseline_ranged, baseline_seed);
        if (*worker_cmd) {
            std::atomic<bool> stop{false};
            std::cout << "worker listening on port " << port << "\n";
            serve_worker(port, &stop);
            return kExitOk;
        }
        if (*preset_cmd) {
            save_run_config(paper_sim_config(), preset_out);
            std::cout << "wrote " << preset_out << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string msg = e.what();
        if (msg.find("cannot read") != std::string::npos ||
            msg.find("cannot write") != std::string::npos ||
            msg.find("cannot open") != std::string::npos)
            return kExitIo;
        return kExitRuntime;
    }
    return kExitConfig;
}
