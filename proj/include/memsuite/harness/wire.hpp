#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "memsuite/core/environment.hpp"

namespace memsuite::harness {

using json = nlohmann::json;

/// Blocking newline-delimited text over a pair of file descriptors.
class line_stream {
public:
    line_stream(int in_fd, int out_fd, bool owns);
    line_stream(const line_stream&) = delete;
    line_stream& operator=(const line_stream&) = delete;
    ~line_stream();

    /// Connects to "host:port"; throws std::runtime_error on failure.
    static std::unique_ptr<line_stream> connect(const std::string& address);

    /// False on end of stream. The newline is stripped.
    bool read_line(std::string& line);
    /// Appends the newline. Throws std::runtime_error when the peer is gone.
    void write_line(std::string_view line);
    /// Unblocks a reader on another thread.
    void shutdown() noexcept;

private:
    int in_, out_;
    bool owns_;
    std::string buf_;
    std::size_t pos_ = 0;
};

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws bad_request on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

json encode_specs(const env_specs& s);
json encode_step(const step_result& r);
/// Inverse of encode_step; throws bad_request.
step_result decode_step(const json& j);
/// Reads {task_id, mode, obs_mode, reward_mode, params}; throws bad_request.
env_config decode_config(const json& payload);

struct server_options {
    std::string bind = "127.0.0.1:0";  // "host:port" or "stdio"
    int max_sessions = 64;
};

/// NDJSON environment server. Requests are {"op", "session", "payload"} with op
/// in make/reset/step/spec/close; responses are {"ok", "session", "payload"} or
/// {"ok": false, "error": <error name>, "message"}. One response per request,
/// in order. Sessions opened on a connection are closed when it drops.
class wire_server {
public:
    explicit wire_server(server_options opt = {});
    wire_server(const wire_server&) = delete;
    wire_server& operator=(const wire_server&) = delete;
    ~wire_server();

    /// Binds and accepts connections on a background thread; throws bind_failed.
    void start();
    /// The bound TCP port (after start).
    [[nodiscard]] int port() const noexcept { return port_; }
    void stop();

    /// Serves one stream until it ends, on the calling thread.
    void serve_stream(line_stream& s);
    /// One request line to one response line. `owned` collects sessions made.
    std::string handle(std::string_view line, std::vector<std::string>* owned = nullptr);

    [[nodiscard]] std::size_t session_count() const;

private:
    struct session {
        std::mutex mu;
        std::unique_ptr<environment> env;
    };

    json dispatch(const std::string& op, const std::string& id, const json& payload, std::vector<std::string>* owned,
                  std::string& out_id);
    std::shared_ptr<session> find(const std::string& id) const;
    void accept_loop();

    server_options opt_;
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<session>> sessions_;
    std::uint64_t next_id_ = 1;

    int listen_fd_ = -1;
    int port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread acceptor_;
    std::mutex conn_mu_;
    std::vector<std::thread> workers_;
    std::vector<line_stream*> live_;
};

/// Blocking client for wire_server; mirrors the in-process environment calls.
class wire_client {
public:
    explicit wire_client(const std::string& address);

    /// Raw request; returns the response object.
    json request(const std::string& op, const std::string& session, const json& payload = json::object());

    /// Typed helpers; throw memsuite::error with the server's error name.
    std::string make(const json& config, const std::string& session = "");
    step_result reset(const std::string& session, std::uint64_t seed);
    step_result step(const std::string& session, std::span<const double> action);
    json spec(const std::string& session);
    void close(const std::string& session);

private:
    json checked(const std::string& op, const std::string& session, const json& payload);

    std::unique_ptr<line_stream> link_;
};

}  // namespace memsuite::harness
