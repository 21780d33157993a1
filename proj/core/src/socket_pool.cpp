#include "microevo/socket_pool.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

#include <json.hpp>

#include "microevo/config.hpp"

namespace microevo {

using nlohmann::json;

namespace {

void write_all(int fd, const void* data, std::size_t len) {
    const char* p = static_cast<const char*>(data);
    while (len > 0) {
        const ssize_t n = ::send(fd, p, len, MSG_NOSIGNAL);
        if (n <= 0) throw WorkerFailure("socket write failed");
        p += n;
        len -= static_cast<std::size_t>(n);
    }
}

bool read_all(int fd, void* data, std::size_t len) {
    char* p = static_cast<char*>(data);
    while (len > 0) {
        const ssize_t n = ::recv(fd, p, len, 0);
        if (n == 0) return false;  // orderly shutdown
        if (n < 0) throw WorkerFailure("socket read failed");
        p += n;
        len -= static_cast<std::size_t>(n);
    }
    return true;
}

void send_message(int fd, const json& j) {
    const std::string payload = j.dump();
    const std::uint32_t len = htonl(static_cast<std::uint32_t>(payload.size()));
    write_all(fd, &len, sizeof(len));
    write_all(fd, payload.data(), payload.size());
}

bool receive_message(int fd, json& out) {
    std::uint32_t len_be;
    if (!read_all(fd, &len_be, sizeof(len_be))) return false;
    const std::uint32_t len = ntohl(len_be);
    if (len > 64u * 1024u * 1024u) throw WorkerFailure("oversized message");
    std::string payload(len, '\0');
    if (!read_all(fd, payload.data(), len)) throw WorkerFailure("truncated message");
    out = json::parse(payload);
    return true;
}

int connect_to(const std::string& endpoint) {
    const auto colon = endpoint.rfind(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("endpoint must be host:port, got " + endpoint);
    const std::string host = endpoint.substr(0, colon);
    const std::string port = endpoint.substr(colon + 1);

    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0 || res == nullptr)
        throw WorkerFailure("cannot resolve " + endpoint);
    int fd = -1;
    for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
        fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) throw WorkerFailure("cannot connect to " + endpoint);
    return fd;
}

}  // namespace

SocketWorkerPool::SocketWorkerPool(const std::vector<std::string>& endpoints,
                                   double move_scale)
    : move_scale_(move_scale) {
    if (endpoints.empty()) throw std::invalid_argument("socket pool needs >= 1 endpoint");
    fds_.reserve(endpoints.size());
    for (const auto& e : endpoints) fds_.push_back(connect_to(e));
}

SocketWorkerPool::~SocketWorkerPool() {
    for (int fd : fds_)
        if (fd >= 0) ::close(fd);
}

double SocketWorkerPool::run_job(std::size_t worker, const Genome& genome,
                                 const TrainingSet& training_set) {
    json scenarios = json::array();
    for (const Scenario& sc : training_set) scenarios.push_back(scenario_to_json(sc));
    const json request{{"type", "EVAL"},
                       {"genome", genome_to_json_obj(genome)},
                       {"scenarios", scenarios},
                       {"move_scale", move_scale_}};
    const int fd = fds_.at(worker);
    send_message(fd, request);
    json reply;
    if (!receive_message(fd, reply)) throw WorkerFailure("worker closed connection");
    const auto type = reply.at("type").get<std::string>();
    if (type == "RESULT") return reply.at("fitness").get<double>();
    if (type == "ERROR")
        throw std::runtime_error("remote evaluation error: " +
                                 reply.at("message").get<std::string>());
    throw WorkerFailure("unexpected reply type " + type);
}

std::size_t serve_worker(int port, const std::atomic<bool>* stop) {
    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) throw std::runtime_error("worker: cannot create socket");
    const int one = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(listener);
        throw std::runtime_error("worker: cannot bind port " + std::to_string(port));
    }
    if (::listen(listener, 4) != 0) {
        ::close(listener);
        throw std::runtime_error("worker: listen failed");
    }

    std::size_t served = 0;
    while (stop == nullptr || !stop->load()) {
        const int conn = ::accept(listener, nullptr, nullptr);
        if (conn < 0) break;
        try {
            json request;
            while (receive_message(conn, request)) {
                json reply;
                try {
                    if (request.at("type").get<std::string>() != "EVAL")
                        throw std::runtime_error("expected EVAL request");
                    const Genome genome = genome_from_json_obj(request.at("genome"));
                    TrainingSet ts;
                    for (const auto& s : request.at("scenarios"))
                        ts.push_back(scenario_from_json(s));
                    const double move_scale =
                        request.value("move_scale", kDefaultMoveScale);
                    reply = {{"type", "RESULT"},
                             {"fitness", evaluate_genome(genome, ts, move_scale)}};
                    ++served;
                } catch (const std::exception& e) {
                    reply = {{"type", "ERROR"}, {"message", e.what()}};
                }
                send_message(conn, reply);
            }
        } catch (const std::exception&) {
            // connection dropped mid-message; fall through to next accept
        }
        ::close(conn);
        if (stop == nullptr) break;  // one client session per invocation
    }
    ::close(listener);
    return served;
}

}  // namespace microevo
