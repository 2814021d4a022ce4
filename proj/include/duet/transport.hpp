#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "duet/pipeline.hpp"

namespace duet {

// Stream framing: a u32 LE byte count, then the payload. One query and one
// response per connection.
std::vector<std::uint8_t> read_frame(int fd);
void write_frame(int fd, const std::vector<std::uint8_t>& payload);

// TCP server answering embedding queries. Each accepted connection is served
// on its own thread; malformed queries close the connection without a reply.
class QueryServer {
public:
    QueryServer(ServerContext ctx, const std::string& host, std::uint16_t port);
    ~QueryServer();

    QueryServer(const QueryServer&) = delete;
    QueryServer& operator=(const QueryServer&) = delete;

    std::uint16_t port() const { return port_; } // resolved port (0 picks one)
    void run();                                  // serve on this thread until stop()
    void start();                                // serve on a background thread
    void stop();

private:
    void serve_loop();
    void handle(int fd);

    ServerContext ctx_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::thread thread_;
    std::atomic<bool> stopping_{false};
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
};

// Sends one query and waits for the response.
wire::ResponseMessage tcp_query(const std::string& host, std::uint16_t port,
                                const wire::QueryMessage& msg);

// In-process equivalent of a network round trip: the message passes through
// the same encode/decode path as the socket transport.
wire::ResponseMessage loopback_query(const ServerContext& ctx, const wire::QueryMessage& msg);

} // namespace duet
