#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include "boss/pipeline.hpp"

namespace boss {

/// "OK label=<spam|ham> boss=<0|1> cos=<6dp|-> euc=<6dp|-> score=<6dp>"
std::string format_decision(const Decision& d);

struct Reply {
    std::string line;  // without the trailing LF
    bool close = false;
};

/// Handles one request line (CHECK, LABEL, STATS, QUIT) against `engine`.
Reply handle_request(Engine& engine, std::string_view line);

/// Newline-delimited TCP front end. One thread per connection; all
/// connections share the same Engine.
class Server {
public:
    Server(Engine& engine, std::string host, std::uint16_t port);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and starts accepting; returns the bound port (useful with port 0).
    std::uint16_t start();
    /// Blocks until stop() is called from another thread.
    void wait();
    void stop();

private:
    struct Connection;

    void accept_loop();
    void serve_connection(Connection& c);
    void reap_finished();

    Engine& engine_;
    std::string host_;
    std::uint16_t port_;
    int listen_fd_ = -1;
    std::atomic<bool> running_{false};
    std::thread acceptor_;
    std::mutex clients_mutex_;
    std::list<std::unique_ptr<Connection>> connections_;
};

/// Parses "host:port" (or a bare port, meaning 127.0.0.1).
std::pair<std::string, std::uint16_t> parse_listen_address(std::string_view addr);

}  // namespace boss
