#include <benchmark/benchmark.h>

#include "microevo/evaluate.hpp"
#include "microevo/neat.hpp"
#include "microevo/network.hpp"
#include "microevo/scenario.hpp"

using namespace microevo;

namespace {

Genome random_genome(std::uint64_t seed, int extra_connections = 40) {
    EvolutionConfig cfg;
    cfg.population_size = 1;
    cfg.initial_connection_probability = 0.3;
    InnovationRegistry reg;
    Rng rng(seed);
    Genome g = seed_population(cfg, reg, rng)[0];
    EvolutionConfig grow = cfg;
    grow.weight_mutation_probability = 0.5;
    grow.add_node_probability = 0.3;
    grow.add_connection_probability = 0.5;
    grow.delete_connection_probability = 0.0;
    for (int i = 0; i < extra_connections; ++i) mutate(g, reg, grow, rng);
    return g;
}

void bench_step(benchmark::State& state) {
    Scenario sc;  // 5 vultures vs 25 zealots, diagonal
    WorldState world = spawn(sc);
    std::map<UnitId, ActionCommand> commands;
    for (const auto& u : world.units)
        if (u.team == Team::ranged) commands[u.id] = {{1.0, 1.0}, false};
    for (auto _ : state) {
        WorldState w = world;
        step(w, commands);
        benchmark::DoNotOptimize(w.frame);
    }
}
BENCHMARK(bench_step);

void bench_encode(benchmark::State& state) {
    const WorldState world = spawn(Scenario{});
    for (auto _ : state) {
        const SensorVector s = encode(world, 1, 0.5);
        benchmark::DoNotOptimize(s[0]);
    }
}
BENCHMARK(bench_encode);

void bench_activate(benchmark::State& state) {
    Network net(random_genome(7));
    SensorVector s{};
    Rng rng(3);
    for (auto& v : s) v = rng.uniform();
    for (auto _ : state) {
        const auto out = net.activate(s);
        benchmark::DoNotOptimize(out[0]);
    }
}
BENCHMARK(bench_activate);

void bench_episode(benchmark::State& state) {
    Scenario sc;
    sc.melee_count = 10;
    sc.frame_budget = 500;
    const Genome g = random_genome(11);
    for (auto _ : state) {
        const EpisodeResult r =
            run_episode(spawn(sc), make_genome_controller_factory(g), sc.frame_budget);
        benchmark::DoNotOptimize(r.frames_used);
    }
}
BENCHMARK(bench_episode);

void bench_next_generation(benchmark::State& state) {
    EvolutionConfig cfg;
    cfg.population_size = 50;
    InnovationRegistry reg;
    Rng rng(5);
    Population pop = seed_population(cfg, reg, rng);
    for (std::size_t i = 0; i < pop.size(); ++i)
        pop[i].fitness = static_cast<double>(i + 1);
    SpeciationState species;
    speciate(pop, species, cfg);
    for (auto _ : state) {
        SpeciationState s = species;
        Rng r(9);
        Population next = next_generation(pop, s, reg, cfg, r);
        benchmark::DoNotOptimize(next.size());
    }
}
BENCHMARK(bench_next_generation);

}  // namespace

BENCHMARK_MAIN();
