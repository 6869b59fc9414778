#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "memsuite/core/environment.hpp"
#include "memsuite/core/types.hpp"

namespace memsuite {

/// One task group (e.g. "RememberColor" with modes 3/5/9).
struct task_entry {
    std::string group;
    memsuite::suite suite = suite::diagnostic;
    std::vector<std::string> modes;
    /// Builds the metadata for (mode, params); throws bad_param on invalid params.
    std::function<task_meta(const std::string& mode, const task_params& params)> meta;
    std::function<std::unique_ptr<task>(const std::string& mode, const task_params& params)> factory;
};

class registry {
public:
    registry() = default;

    /// All diagnostic and tabletop tasks.
    static const registry& builtin();

    void add(task_entry entry);

    /// Resolves "Group", "GroupMode", or either with a "-v0" suffix. A non-empty
    /// `mode` must agree with a mode embedded in the id.
    [[nodiscard]] std::pair<const task_entry*, std::string> resolve(std::string_view task_id,
                                                                    std::string_view mode) const;

    [[nodiscard]] const std::vector<task_entry>& entries() const noexcept { return entries_; }

private:
    std::vector<task_entry> entries_;
};

/// Full id for a (group, mode) pair: the group for single-mode tasks, otherwise group + mode.
std::string full_task_id(const std::string& group, const std::string& mode,
                         const std::vector<std::string>& modes);

environment make(const env_config& config, const registry& reg = registry::builtin());

/// Default metadata of every (group, mode) combination, in registry order.
std::vector<task_meta> list_tasks(const registry& reg = registry::builtin());

}  // namespace memsuite
