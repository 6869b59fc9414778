#pragma once

#include <cerrno>
#include <string>
#include <utility>

#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

namespace memsuite::harness {

/// "host:port" to (host, port); an empty host means loopback.
std::pair<std::string, std::string> split_address(const std::string& address);

inline void set_nodelay(int fd) noexcept {
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

/// send() with MSG_NOSIGNAL on sockets, write() on anything else (stdio).
inline ssize_t send_all_or_write(int fd, const char* data, std::size_t n) noexcept {
    const ssize_t r = ::send(fd, data, n, MSG_NOSIGNAL);
    if (r < 0 && errno == ENOTSOCK) return ::write(fd, data, n);
    return r;
}

}  // namespace memsuite::harness
