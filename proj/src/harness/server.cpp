#include <algorithm>
#include <cstring>

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include "memsuite/core/error.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/harness/wire.hpp"
#include "net.hpp"

namespace memsuite::harness {

namespace {

json failure(const std::string& name, std::string message, const std::string& id) {
    if (message.starts_with(name + ": ")) message.erase(0, name.size() + 2);
    json j = {{"ok", false}, {"error", name}, {"message", message}};
    if (!id.empty()) j["session"] = id;
    return j;
}

}  // namespace

wire_server::wire_server(server_options opt) : opt_(std::move(opt)) {}

wire_server::~wire_server() { stop(); }

std::size_t wire_server::session_count() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

std::shared_ptr<wire_server::session> wire_server::find(const std::string& id) const {
    std::lock_guard lock(mu_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw error(errc::bad_request, "unknown session '" + id + "'");
    return it->second;
}

json wire_server::dispatch(const std::string& op, const std::string& id, const json& payload,
                           std::vector<std::string>* owned, std::string& out_id) {
    if (op == "make") {
        const env_config cfg = decode_config(payload);
        auto env = std::make_unique<environment>(make(cfg));
        std::shared_ptr<session> s;
        {
            std::lock_guard lock(mu_);
            out_id = id.empty() ? "s" + std::to_string(next_id_++) : id;
            auto it = sessions_.find(out_id);
            if (it == sessions_.end()) {
                if (static_cast<int>(sessions_.size()) >= opt_.max_sessions)
                    throw error(errc::session_limit, "server holds " + std::to_string(sessions_.size()) +
                                                         " sessions (limit " + std::to_string(opt_.max_sessions) + ")");
                it = sessions_.emplace(out_id, std::make_shared<session>()).first;
                if (owned) owned->push_back(out_id);
            }
            s = it->second;
        }
        std::lock_guard lock(s->mu);
        s->env = std::move(env);
        return {{"env", out_id}, {"specs", encode_specs(s->env->specs())}};
    }
    out_id = id;
    if (id.empty()) throw error(errc::bad_request, "'" + op + "' needs a session");
    if (op == "close") {
        std::lock_guard lock(mu_);
        if (sessions_.erase(id) == 0) throw error(errc::bad_request, "unknown session '" + id + "'");
        return json::object();
    }
    const auto s = find(id);
    std::lock_guard lock(s->mu);
    if (!s->env) throw error(errc::bad_request, "session has no environment");
    if (op == "spec") return encode_specs(s->env->specs());
    if (op == "reset") {
        std::uint64_t seed = s->env->config().seed;
        if (payload.is_object() && payload.contains("seed")) {
            if (!payload.at("seed").is_number_unsigned() && !payload.at("seed").is_number_integer())
                throw error(errc::bad_request, "seed must be a non-negative integer");
            seed = payload.at("seed").get<std::uint64_t>();
        }
        return encode_step(s->env->reset(seed));
    }
    if (op == "step") {
        if (!payload.is_object() || !payload.contains("action"))
            throw error(errc::bad_request, "step payload needs 'action'");
        const json& a = payload.at("action");
        std::vector<double> action;
        if (a.is_number()) {
            action.push_back(a.get<double>());
        } else if (a.is_array()) {
            for (const auto& v : a) {
                if (!v.is_number()) throw error(errc::action_shape, "action entries must be numbers");
                action.push_back(v.get<double>());
            }
        } else {
            throw error(errc::action_shape, "action must be a number or an array");
        }
        return encode_step(s->env->step(action));
    }
    throw error(errc::bad_request, "unknown op '" + op + "'");
}

std::string wire_server::handle(std::string_view line, std::vector<std::string>* owned) {
    json req;
    try {
        req = json::parse(line);
    } catch (const json::exception& e) {
        return failure("BadRequest", std::string("malformed JSON: ") + e.what(), "").dump();
    }
    std::string id;
    try {
        if (!req.is_object() || !req.contains("op") || !req.at("op").is_string())
            throw error(errc::bad_request, "request needs a string 'op'");
        if (req.contains("session")) {
            if (!req.at("session").is_string()) throw error(errc::bad_request, "'session' must be a string");
            id = req.at("session").get<std::string>();
        }
        std::string out_id;
        const json payload = req.value("payload", json::object());
        json result = dispatch(req.at("op").get<std::string>(), id, payload, owned, out_id);
        json resp = {{"ok", true}, {"payload", std::move(result)}};
        if (!out_id.empty()) resp["session"] = out_id;
        return resp.dump();
    } catch (const error& e) {
        return failure(std::string(e.name()), e.what(), id).dump();
    } catch (const std::exception& e) {
        return failure("BadRequest", e.what(), id).dump();
    }
}

void wire_server::serve_stream(line_stream& s) {
    std::vector<std::string> owned;
    std::string line;
    try {
        while (s.read_line(line)) {
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            s.write_line(handle(line, &owned));
        }
    } catch (const std::exception&) {
        // Peer vanished mid-write; fall through to release its sessions.
    }
    std::lock_guard lock(mu_);
    for (const auto& id : owned) sessions_.erase(id);
}

void wire_server::start() {
    if (opt_.bind == "stdio") throw error(errc::bind_failed, "stdio is served with serve_stream");
    std::pair<std::string, std::string> hp;
    try {
        hp = split_address(opt_.bind);
    } catch (const std::exception& e) {
        throw error(errc::bind_failed, e.what());
    }
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (const int rc = ::getaddrinfo(hp.first.c_str(), hp.second.c_str(), &hints, &res); rc != 0)
        throw error(errc::bind_failed, opt_.bind + ": " + ::gai_strerror(rc));
    std::string why = "no usable address";
    for (addrinfo* p = res; p; p = p->ai_next) {
        const int fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
        if (fd < 0) continue;
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, p->ai_addr, p->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            listen_fd_ = fd;
            break;
        }
        why = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (listen_fd_ < 0) throw error(errc::bind_failed, opt_.bind + ": " + why);

    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = addr.ss_family == AF_INET6 ? ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port)
                                       : ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
    stopping_ = false;
    acceptor_ = std::thread([this] { accept_loop(); });
}

void wire_server::accept_loop() {
    while (!stopping_) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (stopping_) break;
            if (errno == EINTR || errno == ECONNABORTED) continue;
            break;
        }
        set_nodelay(fd);
        std::lock_guard lock(conn_mu_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        auto* stream = new line_stream(fd, fd, true);
        live_.push_back(stream);
        workers_.emplace_back([this, stream] {
            serve_stream(*stream);
            std::lock_guard l(conn_mu_);
            live_.erase(std::find(live_.begin(), live_.end(), stream));
            delete stream;
        });
    }
}

void wire_server::stop() {
    if (listen_fd_ < 0) return;
    stopping_ = true;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (acceptor_.joinable()) acceptor_.join();
    std::vector<std::thread> workers;
    {
        std::lock_guard lock(conn_mu_);
        for (auto* s : live_) s->shutdown();
        workers.swap(workers_);
    }
    for (auto& t : workers) t.join();
    listen_fd_ = -1;
}

wire_client::wire_client(const std::string& address) : link_(line_stream::connect(address)) {}

json wire_client::request(const std::string& op, const std::string& session, const json& payload) {
    json req = {{"op", op}, {"payload", payload}};
    if (!session.empty()) req["session"] = session;
    link_->write_line(req.dump());
    std::string line;
    if (!link_->read_line(line)) throw std::runtime_error("server closed the connection");
    return json::parse(line);
}

json wire_client::checked(const std::string& op, const std::string& session, const json& payload) {
    json resp = request(op, session, payload);
    if (!resp.value("ok", false)) {
        const std::string name = resp.value("error", std::string("BadRequest"));
        throw error(parse_errc(name).value_or(errc::bad_request), resp.value("message", name));
    }
    return resp;
}

std::string wire_client::make(const json& config, const std::string& session) {
    return checked("make", session, config).at("session").get<std::string>();
}

step_result wire_client::reset(const std::string& session, std::uint64_t seed) {
    return decode_step(checked("reset", session, {{"seed", seed}}).at("payload"));
}

step_result wire_client::step(const std::string& session, std::span<const double> action) {
    return decode_step(checked("step", session, {{"action", std::vector<double>(action.begin(), action.end())}})
                           .at("payload"));
}

json wire_client::spec(const std::string& session) { return checked("spec", session, json::object()).at("payload"); }

void wire_client::close(const std::string& session) { checked("close", session, json::object()); }

}  // namespace memsuite::harness
