#include "microevo/evaluate.hpp"

#include <deque>
#include <iostream>
#include <mutex>
#include <thread>

#include "microevo/network.hpp"

namespace microevo {

double episode_fitness(const EpisodeResult& result, const Scenario& scenario) {
    FitnessInputs in;
    in.starting_melee = scenario.melee_count;
    in.melee_hitpoints_max = scenario.melee_stats.hitpoints_max;
    in.remaining_melee_hp = result.melee_hp;
    in.remaining_ranged_hp = result.ranged_hp;
    return fitness(in);
}

double evaluate_genome(const Genome& genome, const TrainingSet& training_set,
                       double move_scale) {
    double total = 0.0;
    EpisodeOptions options;
    options.move_scale = move_scale;
    const ControllerFactory factory = make_genome_controller_factory(genome);
    for (const Scenario& sc : training_set) {
        const EpisodeResult r = run_episode(spawn(sc), factory, sc.frame_budget, options);
        total += episode_fitness(r, sc);
    }
    return total;
}

std::vector<double> evaluate_population(const Population& population,
                                        const TrainingSet& training_set,
                                        WorkerPool& pool) {
    constexpr int kMaxAttempts = 3;

    struct Job {
        std::size_t index;
        int attempts = 0;
    };

    std::vector<double> results(population.size(), 0.0);
    std::mutex mutex;
    std::deque<Job> queue;
    for (std::size_t i = 0; i < population.size(); ++i) queue.push_back({i, 0});
    std::size_t completed = 0;
    std::size_t live_workers = pool.worker_count();

    auto worker_loop = [&](std::size_t slot) {
        for (;;) {
            Job job;
            {
                std::lock_guard lock(mutex);
                if (queue.empty()) return;
                job = queue.front();
                queue.pop_front();
            }
            try {
                const double f = pool.run_job(slot, population[job.index], training_set);
                std::lock_guard lock(mutex);
                results[job.index] = f;
                ++completed;
            } catch (const WorkerFailure& e) {
                // Worker is gone; hand the job back and retire this slot.
                std::lock_guard lock(mutex);
                queue.push_front(job);
                --live_workers;
                std::cerr << "worker " << slot << " failed: " << e.what() << "\n";
                return;
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                job.attempts += 1;
                if (job.attempts >= kMaxAttempts) {
                    results[job.index] = 0.0;
                    ++completed;
                    std::cerr << "genome " << job.index << " failed " << kMaxAttempts
                              << " attempts, fitness 0: " << e.what() << "\n";
                } else {
                    queue.push_back(job);
                }
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(pool.worker_count());
    for (std::size_t w = 0; w < pool.worker_count(); ++w)
        threads.emplace_back(worker_loop, w);
    for (auto& t : threads) t.join();

    if (completed != population.size()) {
        if (live_workers == 0)
            throw OrchestrationError("all workers dead with evaluations pending");
        throw OrchestrationError("evaluation ended with unprocessed genomes");
    }
    return results;
}

}  // namespace microevo
