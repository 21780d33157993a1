#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "microevo/evaluate.hpp"

namespace microevo {

/// Wire protocol: 4-byte big-endian payload length, then a JSON object.
/// Request:  {"type":"EVAL","genome":{...},"scenarios":[...],"move_scale":x}
/// Reply:    {"type":"RESULT","fitness":f} or {"type":"ERROR","message":m}

/// Worker pool backed by remote evaluation servers, one connection per
/// endpoint ("host:port"). Connection or protocol loss surfaces as
/// WorkerFailure so the orchestrator re-dispatches the job elsewhere.
class SocketWorkerPool : public WorkerPool {
public:
    explicit SocketWorkerPool(const std::vector<std::string>& endpoints,
                              double move_scale = kDefaultMoveScale);
    ~SocketWorkerPool() override;

    SocketWorkerPool(const SocketWorkerPool&) = delete;
    SocketWorkerPool& operator=(const SocketWorkerPool&) = delete;

    std::size_t worker_count() const override { return fds_.size(); }
    double run_job(std::size_t worker, const Genome& genome,
                   const TrainingSet& training_set) override;

private:
    std::vector<int> fds_;
    double move_scale_;
};

/// Blocking evaluation server: accepts connections on `port` and answers
/// EVAL requests until the client disconnects (or `stop` becomes true, polled
/// between connections). Returns the number of requests served.
std::size_t serve_worker(int port, const std::atomic<bool>* stop = nullptr);

}  // namespace microevo
