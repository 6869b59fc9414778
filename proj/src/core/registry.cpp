#include "memsuite/core/registry.hpp"

#include <algorithm>

#include "memsuite/core/error.hpp"

namespace memsuite {

void register_diagnostic_tasks(registry& reg);
void register_tabletop_tasks(registry& reg);

const registry& registry::builtin() {
    static const registry reg = [] {
        registry r;
        register_tabletop_tasks(r);
        register_diagnostic_tasks(r);
        return r;
    }();
    return reg;
}

void registry::add(task_entry entry) {
    for (const auto& e : entries_)
        if (e.group == entry.group) throw error(errc::bad_param, "duplicate task group " + entry.group);
    entries_.push_back(std::move(entry));
}

std::pair<const task_entry*, std::string> registry::resolve(std::string_view task_id, std::string_view mode) const {
    std::string id(task_id);
    if (id.size() > 3 && id.ends_with("-v0")) id.resize(id.size() - 3);

    for (const auto& e : entries_) {
        if (e.group == id) {
            if (mode.empty()) return {&e, e.modes.front()};
            if (std::find(e.modes.begin(), e.modes.end(), mode) == e.modes.end())
                throw error(errc::invalid_mode, "mode '" + std::string(mode) + "' not valid for " + e.group);
            return {&e, std::string(mode)};
        }
    }
    // Longest group prefix wins, so "RememberShapeAndColor3x2" is not read as "RememberShape".
    const task_entry* best = nullptr;
    for (const auto& e : entries_) {
        if (id.size() > e.group.size() && id.starts_with(e.group) && (!best || e.group.size() > best->group.size()))
            best = &e;
    }
    if (best) {
        const std::string embedded = id.substr(best->group.size());
        if (std::find(best->modes.begin(), best->modes.end(), embedded) == best->modes.end())
            throw error(errc::unknown_task, "unknown task '" + std::string(task_id) + "'");
        if (!mode.empty() && mode != embedded)
            throw error(errc::invalid_mode, "mode '" + std::string(mode) + "' conflicts with id " + id);
        return {best, embedded};
    }
    throw error(errc::unknown_task, "unknown task '" + std::string(task_id) + "'");
}

std::string full_task_id(const std::string& group, const std::string& mode, const std::vector<std::string>& modes) {
    if (modes.size() == 1) return group;
    return group + mode;
}

environment make(const env_config& config, const registry& reg) {
    auto [entry, mode] = reg.resolve(config.task_id, config.mode);
    task_meta meta = entry->meta(mode, config.params);
    if (std::find(meta.observation_modes.begin(), meta.observation_modes.end(), config.obs_mode) ==
        meta.observation_modes.end())
        throw error(errc::bad_param, "observation mode '" + std::string(observation_mode_name(config.obs_mode)) +
                                         "' not supported by " + meta.task_id);
    if (config.reward && std::find(meta.reward_modes.begin(), meta.reward_modes.end(), *config.reward) ==
                             meta.reward_modes.end())
        throw error(errc::bad_param, "reward mode '" + std::string(reward_mode_name(*config.reward)) +
                                         "' not supported by " + meta.task_id);
    env_config resolved = config;
    resolved.mode = mode;
    return environment(std::move(meta), std::move(resolved), entry->factory(mode, config.params));
}

std::vector<task_meta> list_tasks(const registry& reg) {
    std::vector<task_meta> out;
    for (const auto& e : reg.entries())
        for (const auto& m : e.modes) out.push_back(e.meta(m, {}));
    return out;
}

}  // namespace memsuite
