#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace memsuite {

/// Error categories surfaced by the library. The string names are part of the
/// wire protocol and the CLI output, so they must stay stable.
enum class errc {
    unknown_task,
    invalid_mode,
    bad_param,
    action_shape,
    action_range,
    stepped_finished,
    out_of_episode,
    lane_action_shape,
    oracle_unavailable,
    oracle_failure_rate,
    bad_magic,
    schema_mismatch,
    truncated_payload,
    agent_protocol,
    timeout,
    bind_failed,
    session_limit,
    bad_request,
};

constexpr std::string_view errc_name(errc code) noexcept {
    switch (code) {
        case errc::unknown_task: return "UnknownTask";
        case errc::invalid_mode: return "InvalidMode";
        case errc::bad_param: return "BadParam";
        case errc::action_shape: return "ActionShape";
        case errc::action_range: return "ActionRange";
        case errc::stepped_finished: return "SteppedFinished";
        case errc::out_of_episode: return "OutOfEpisode";
        case errc::lane_action_shape: return "LaneActionShape";
        case errc::oracle_unavailable: return "OracleUnavailable";
        case errc::oracle_failure_rate: return "OracleFailureRate";
        case errc::bad_magic: return "BadMagic";
        case errc::schema_mismatch: return "SchemaMismatch";
        case errc::truncated_payload: return "TruncatedPayload";
        case errc::agent_protocol: return "AgentProtocol";
        case errc::timeout: return "Timeout";
        case errc::bind_failed: return "BindFailed";
        case errc::session_limit: return "SessionLimit";
        case errc::bad_request: return "BadRequest";
    }
    return "Unknown";
}

/// Inverse of errc_name.
inline std::optional<errc> parse_errc(std::string_view name) noexcept {
    for (int i = 0; i <= static_cast<int>(errc::bad_request); ++i)
        if (errc_name(static_cast<errc>(i)) == name) return static_cast<errc>(i);
    return std::nullopt;
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }
    [[nodiscard]] std::string_view name() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

/// Raised by the vector engine; carries the offending lane.
class lane_error : public error {
public:
    lane_error(std::size_t lane, const std::string& what)
        : error(errc::lane_action_shape, "lane " + std::to_string(lane) + ": " + what), lane_(lane) {}

    [[nodiscard]] std::size_t lane() const noexcept { return lane_; }

private:
    std::size_t lane_;
};

}  // namespace memsuite
