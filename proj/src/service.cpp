#include "boss/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <stdexcept>
#include <system_error>

namespace boss {

namespace {

constexpr std::size_t kMaxRequestBytes = 64 * 1024;

[[noreturn]] void throw_errno(const std::string& what) {
    throw std::system_error(errno, std::generic_category(), what);
}

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

std::string optional_fixed6(const std::optional<double>& v) { return v ? format_fixed6(*v) : "-"; }

}  // namespace

std::string format_decision(const Decision& d) {
    return "OK label=" + std::string(to_string(d.label)) + " boss=" + std::to_string(d.boss_flag) +
           " cos=" + optional_fixed6(d.match.cosine) + " euc=" + optional_fixed6(d.match.euclidean) +
           " score=" + format_fixed6(d.score);
}

Reply handle_request(Engine& engine, std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto space = line.find(' ');
    const std::string_view verb = line.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);

    if (verb == "CHECK") return {format_decision(engine.process(rest, Label::unknown))};
    if (verb == "LABEL") {
        const auto sep = rest.find(' ');
        const auto label = parse_label(rest.substr(0, sep));
        if (!label || *label == Label::unknown) return {"ERR label must be spam or ham"};
        const std::string_view subject = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);
        return {format_decision(engine.process(subject, *label))};
    }
    if (verb == "STATS") return {"OK " + engine.stats_line()};
    if (verb == "QUIT") return {"OK bye", true};
    if (verb.empty()) return {"ERR empty request"};
    return {"ERR unknown command"};
}

std::pair<std::string, std::uint16_t> parse_listen_address(std::string_view addr) {
    std::string host = "127.0.0.1";
    std::string_view port_text = addr;
    if (const auto colon = addr.rfind(':'); colon != std::string_view::npos) {
        host = std::string(addr.substr(0, colon));
        port_text = addr.substr(colon + 1);
    }
    unsigned port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port > 65535) {
        throw std::invalid_argument("bad listen address: " + std::string(addr));
    }
    return {host, static_cast<std::uint16_t>(port)};
}

// ---------------------------------------------------------------------------

struct Server::Connection {
    int fd = -1;
    std::thread worker;
    std::atomic<bool> done{false};
};

Server::Server(Engine& engine, std::string host, std::uint16_t port)
    : engine_(engine), host_(std::move(host)), port_(port) {}

Server::~Server() { stop(); }

std::uint16_t Server::start() {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw_errno("socket");
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port_);
    if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::invalid_argument("bad listen host: " + host_);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
        ::listen(listen_fd_, SOMAXCONN) < 0) {
        const int err = errno;
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::system_error(err, std::generic_category(), "bind " + host_ + ":" + std::to_string(port_));
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
    return port_;
}

void Server::wait() {
    if (acceptor_.joinable()) acceptor_.join();
}

void Server::stop() {
    if (running_.exchange(false)) {
        ::shutdown(listen_fd_, SHUT_RDWR);
    }
    if (acceptor_.joinable()) acceptor_.join();
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
        listen_fd_ = -1;
    }

    std::list<std::unique_ptr<Connection>> connections;
    {
        std::lock_guard lock(clients_mutex_);
        connections.swap(connections_);
        for (auto& c : connections) ::shutdown(c->fd, SHUT_RDWR);
    }
    for (auto& c : connections) {
        if (c->worker.joinable()) c->worker.join();
        ::close(c->fd);
    }
}

void Server::reap_finished() {
    std::lock_guard lock(clients_mutex_);
    for (auto it = connections_.begin(); it != connections_.end();) {
        if ((*it)->done) {
            (*it)->worker.join();
            ::close((*it)->fd);
            it = connections_.erase(it);
        } else {
            ++it;
        }
    }
}

void Server::accept_loop() {
    while (running_) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, 200);
        reap_finished();
        if (ready <= 0) continue;

        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (!running_) break;
            continue;
        }
        std::lock_guard lock(clients_mutex_);
        if (!running_) {
            ::close(fd);
            break;
        }
        auto& c = connections_.emplace_back(std::make_unique<Connection>());
        c->fd = fd;
        c->worker = std::thread([this, conn = c.get()] { serve_connection(*conn); });
    }
}

void Server::serve_connection(Connection& c) {
    std::string buffer;
    char chunk[4096];
    bool discarding = false;  // inside an over-long line
    bool open = true;

    while (open) {
        const ssize_t n = ::recv(c.fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));

        std::size_t start = 0;
        for (std::size_t nl; open && (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
            if (discarding) {
                discarding = false;
                continue;
            }
            Reply reply;
            try {
                reply = handle_request(engine_, std::string_view(buffer).substr(start, nl - start));
            } catch (const std::exception& e) {
                reply = {std::string("ERR ") + e.what()};
            }
            open = send_all(c.fd, reply.line + '\n') && !reply.close;
        }
        buffer.erase(0, start);

        if (open && buffer.size() > kMaxRequestBytes) {
            buffer.clear();
            if (!discarding) open = send_all(c.fd, "ERR request too long\n");
            discarding = true;
        }
    }
    ::shutdown(c.fd, SHUT_RDWR);
    c.done = true;
}

}  // namespace boss
