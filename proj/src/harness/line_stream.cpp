#include <cerrno>
#include <cstring>
#include <stdexcept>

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include "memsuite/harness/wire.hpp"
#include "net.hpp"

namespace memsuite::harness {

std::pair<std::string, std::string> split_address(const std::string& address) {
    const auto colon = address.rfind(':');
    if (colon == std::string::npos || colon + 1 == address.size())
        throw std::invalid_argument("address must be host:port, got '" + address + "'");
    std::string host = address.substr(0, colon);
    if (host.empty()) host = "127.0.0.1";
    return {host, address.substr(colon + 1)};
}

line_stream::line_stream(int in_fd, int out_fd, bool owns) : in_(in_fd), out_(out_fd), owns_(owns) {}

line_stream::~line_stream() {
    if (!owns_) return;
    ::close(in_);
    if (out_ != in_) ::close(out_);
}

std::unique_ptr<line_stream> line_stream::connect(const std::string& address) {
    const auto [host, port] = split_address(address);
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0)
        throw std::runtime_error("cannot resolve " + address + ": " + ::gai_strerror(rc));
    int fd = -1;
    for (addrinfo* p = res; p; p = p->ai_next) {
        fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) throw std::runtime_error("cannot connect to " + address);
    set_nodelay(fd);
    return std::make_unique<line_stream>(fd, fd, true);
}

bool line_stream::read_line(std::string& line) {
    for (;;) {
        const auto nl = buf_.find('\n', pos_);
        if (nl != std::string::npos) {
            line.assign(buf_, pos_, nl - pos_);
            pos_ = nl + 1;
            if (pos_ > 65536) {
                buf_.erase(0, pos_);
                pos_ = 0;
            }
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        char chunk[65536];
        const ssize_t n = ::read(in_, chunk, sizeof chunk);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) {
            if (pos_ < buf_.size()) {
                line.assign(buf_, pos_, std::string::npos);
                buf_.clear();
                pos_ = 0;
                return true;
            }
            return false;
        }
        buf_.append(chunk, static_cast<std::size_t>(n));
    }
}

void line_stream::write_line(std::string_view line) {
    std::string data(line);
    data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = send_all_or_write(out_, data.data() + off, data.size() - off);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) throw std::runtime_error(std::string("write failed: ") + std::strerror(errno));
        off += static_cast<std::size_t>(n);
    }
}

void line_stream::shutdown() noexcept { ::shutdown(in_, SHUT_RDWR); }

}  // namespace memsuite::harness
