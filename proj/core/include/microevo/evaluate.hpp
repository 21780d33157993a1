#pragma once

#include <stdexcept>
#include <vector>

#include "microevo/genome.hpp"
#include "microevo/scenario.hpp"
#include "microevo/sim.hpp"

namespace microevo {

/// Fitness of a finished episode under its scenario.
double episode_fitness(const EpisodeResult& result, const Scenario& scenario);

/// Sum of per-scenario fitness over the training set. Pure and deterministic
/// for a given (genome, training set).
double evaluate_genome(const Genome& genome, const TrainingSet& training_set,
                       double move_scale = kDefaultMoveScale);

/// Transport-level worker failure: the worker is considered dead and its job
/// is re-dispatched without consuming a retry.
struct WorkerFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All workers died with evaluations still pending.
struct OrchestrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class WorkerPool {
public:
    virtual ~WorkerPool() = default;
    virtual std::size_t worker_count() const = 0;
    /// Evaluates one genome on worker slot `worker`. Called concurrently,
    /// one thread per slot. Throws WorkerFailure on transport loss.
    virtual double run_job(std::size_t worker, const Genome& genome,
                           const TrainingSet& training_set) = 0;
};

/// Evaluates every genome in-process; `workers` threads share the queue.
class InProcessWorkerPool : public WorkerPool {
public:
    explicit InProcessWorkerPool(std::size_t workers, double move_scale = kDefaultMoveScale)
        : workers_(workers == 0 ? 1 : workers), move_scale_(move_scale) {}
    std::size_t worker_count() const override { return workers_; }
    double run_job(std::size_t, const Genome& genome,
                   const TrainingSet& training_set) override {
        return evaluate_genome(genome, training_set, move_scale_);
    }

private:
    std::size_t workers_;
    double move_scale_;
};

/// Evaluates the population on the pool. Each genome is evaluated exactly
/// once; results do not depend on worker count or completion order. A job
/// failing 3 attempts gets fitness 0 (logged to stderr); if every worker dies
/// with jobs pending an OrchestrationError is thrown.
std::vector<double> evaluate_population(const Population& population,
                                        const TrainingSet& training_set,
                                        WorkerPool& pool);

}  // namespace microevo
