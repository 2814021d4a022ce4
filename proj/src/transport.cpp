#include "duet/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <iostream>

#include "duet/errors.hpp"

namespace duet {

namespace {

void read_exact(int fd, std::uint8_t* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        ssize_t r = ::recv(fd, buf + got, n - got, 0);
        if (r == 0) throw IoError("transport: connection closed mid-frame");
        if (r < 0) {
            if (errno == EINTR) continue;
            throw IoError(std::string("transport: recv failed: ") + std::strerror(errno));
        }
        got += static_cast<std::size_t>(r);
    }
}

void write_exact(int fd, const std::uint8_t* buf, std::size_t n) {
    std::size_t sent = 0;
    while (sent < n) {
        ssize_t r = ::send(fd, buf + sent, n - sent, MSG_NOSIGNAL);
        if (r < 0) {
            if (errno == EINTR) continue;
            throw IoError(std::string("transport: send failed: ") + std::strerror(errno));
        }
        sent += static_cast<std::size_t>(r);
    }
}

struct FdGuard {
    int fd;
    ~FdGuard() {
        if (fd >= 0) ::close(fd);
    }
};

int connect_to(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string service = std::to_string(port);
    int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
    if (rc != 0)
        throw IoError("transport: cannot resolve " + host + ": " + gai_strerror(rc));

    int fd = -1;
    int last_errno = 0;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        last_errno = errno;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0)
        throw IoError("transport: cannot connect to " + host + ":" + service + ": " +
                      std::strerror(last_errno));
    return fd;
}

} // namespace

std::vector<std::uint8_t> read_frame(int fd) {
    std::uint8_t head[4];
    read_exact(fd, head, 4);
    const std::uint32_t n = static_cast<std::uint32_t>(head[0]) |
                            (static_cast<std::uint32_t>(head[1]) << 8) |
                            (static_cast<std::uint32_t>(head[2]) << 16) |
                            (static_cast<std::uint32_t>(head[3]) << 24);
    if (n > wire::kMaxPayloadBytes) throw IoError("transport: oversized frame");
    std::vector<std::uint8_t> payload(n);
    read_exact(fd, payload.data(), payload.size());
    return payload;
}

void write_frame(int fd, const std::vector<std::uint8_t>& payload) {
    if (payload.size() > wire::kMaxPayloadBytes)
        throw IoError("transport: oversized frame");
    const std::uint32_t n = static_cast<std::uint32_t>(payload.size());
    std::uint8_t head[4] = {static_cast<std::uint8_t>(n & 0xff),
                            static_cast<std::uint8_t>((n >> 8) & 0xff),
                            static_cast<std::uint8_t>((n >> 16) & 0xff),
                            static_cast<std::uint8_t>((n >> 24) & 0xff)};
    write_exact(fd, head, 4);
    write_exact(fd, payload.data(), payload.size());
}

QueryServer::QueryServer(ServerContext ctx, const std::string& host, std::uint16_t port)
    : ctx_(std::move(ctx)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0)
        throw IoError(std::string("transport: socket failed: ") + std::strerror(errno));

    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        throw IoError("transport: listen address must be a numeric IPv4 address: " + host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        int err = errno;
        ::close(listen_fd_);
        throw IoError("transport: bind to " + host + ":" + std::to_string(port) +
                      " failed: " + std::strerror(err));
    }
    if (::listen(listen_fd_, 16) < 0) {
        int err = errno;
        ::close(listen_fd_);
        throw IoError(std::string("transport: listen failed: ") + std::strerror(err));
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len) < 0) {
        int err = errno;
        ::close(listen_fd_);
        throw IoError(std::string("transport: getsockname failed: ") + std::strerror(err));
    }
    port_ = ntohs(bound.sin_port);
}

QueryServer::~QueryServer() { stop(); }

void QueryServer::run() { serve_loop(); }

void QueryServer::start() {
    thread_ = std::thread([this] { serve_loop(); });
}

void QueryServer::stop() {
    if (stopping_.exchange(true)) {
        if (thread_.joinable()) thread_.join();
        return;
    }
    if (listen_fd_ >= 0) {
        ::shutdown(listen_fd_, SHUT_RDWR); // wakes a blocked accept
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    if (thread_.joinable()) thread_.join();
    std::lock_guard<std::mutex> lock(workers_mutex_);
    for (auto& w : workers_) w.join();
    workers_.clear();
}

void QueryServer::serve_loop() {
    while (!stopping_.load()) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break; // listening socket was shut down
        }
        std::lock_guard<std::mutex> lock(workers_mutex_);
        workers_.emplace_back([this, fd] { handle(fd); });
    }
}

void QueryServer::handle(int fd) {
    FdGuard guard{fd};
    try {
        wire::QueryMessage msg = wire::decode(read_frame(fd));
        write_frame(fd, wire::encode_response(server_run(ctx_, msg)));
    } catch (const std::exception& e) {
        // Bad queries get no reply; the client sees the closed connection.
        std::cerr << "query failed: " << e.what() << '\n';
    }
}

wire::ResponseMessage tcp_query(const std::string& host, std::uint16_t port,
                                const wire::QueryMessage& msg) {
    FdGuard guard{connect_to(host, port)};
    write_frame(guard.fd, wire::encode(msg));
    return wire::decode_response(read_frame(guard.fd));
}

wire::ResponseMessage loopback_query(const ServerContext& ctx, const wire::QueryMessage& msg) {
    wire::QueryMessage over_wire = wire::decode(wire::encode(msg));
    return wire::decode_response(wire::encode_response(server_run(ctx, over_wire)));
}

} // namespace duet
