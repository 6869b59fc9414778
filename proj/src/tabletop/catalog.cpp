#include "memsuite/core/params.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/tabletop/task.hpp"

namespace memsuite {

namespace {

using namespace tabletop;

struct group_info {
    const char* group;
    std::vector<std::string> modes;
    memory_type type;
    int xi;
    std::vector<std::string> notes;
};

task_meta tabletop_meta(const group_info& g, const std::string& mode) {
    const mode_config cfg = make_mode_config(g.group, mode);
    task_meta m;
    m.group = g.group;
    m.mode = mode;
    m.task_id = full_task_id(m.group, mode, g.modes);
    m.suite = suite::tabletop;
    m.memory_types = static_cast<unsigned>(g.type);
    m.correlation_horizon = g.xi;
    m.timeout = cfg.timeout;
    m.modes = g.modes;
    m.oracle_info_schema = oracle_layout(cfg);
    m.prompt_schema = prompt_layout(cfg);
    m.reward_modes = {reward_mode::dense, reward_mode::sparse};
    m.observation_modes = {observation_mode::state, observation_mode::masked, observation_mode::rgb,
                           observation_mode::masked_rgb};
    m.notes = g.notes;
    m.notes.push_back("proprio = (x, y, theta, grip, vx, vy, dtheta/dt, grip rate)");
    return m;
}

}  // namespace

void register_tabletop_tasks(registry& reg) {
    const std::vector<group_info> groups{
        {"ShellGame", {"Touch", "Push", "Pick"}, memory_type::object, 3,
         {"Push target zone: forward strip 0.1 m deep starting 0.1 m ahead of the rest position",
          "Pick: grab and displace the mug at least 0.1 m"}},
        {"Intercept", {"Slow", "Medium", "Fast"}, memory_type::spatial, 2,
         {"target zone fixed at (0, 0.3); ball origin and velocity randomized"}},
        {"InterceptGrab", {"Slow", "Medium", "Fast"}, memory_type::spatial, 2, {}},
        {"RotateLenient", {"Pos", "PosNeg"}, memory_type::spatial, 2,
         {"peg translation ignored", "success compares accumulated rotation with target_angle"}},
        {"RotateStrict", {"Pos", "PosNeg"}, memory_type::spatial, 2,
         {"success compares accumulated rotation with target_angle"}},
        {"TakeItBack", {"default"}, memory_type::spatial, 5, {"xy_initial replaces the 3D initial position"}},
        {"RememberColor", {"3", "5", "9"}, memory_type::object, 7, {}},
        {"RememberShape", {"3", "5", "9"}, memory_type::object, 7, {}},
        {"RememberShapeAndColor", {"3x2", "3x3", "5x3"}, memory_type::object, 7, {}},
        {"BunchOfColors", {"3", "5", "7"}, memory_type::capacity, 7, {"selection shows all 9 palette colours"}},
        {"SeqOfColors", {"3", "5", "7"}, memory_type::capacity, 7, {"selection shows all 9 palette colours"}},
        {"ChainOfColors", {"3", "5", "7"}, memory_type::sequential, 7, {"selection shows all 9 palette colours"}},
    };
    for (const auto& g : groups) {
        task_entry e;
        e.group = g.group;
        e.suite = suite::tabletop;
        e.modes = g.modes;
        e.meta = [g](const std::string& mode, const task_params& params) {
            param_reader(params, g.group).finish();
            return tabletop_meta(g, mode);
        };
        e.factory = [g](const std::string& mode, const task_params& params) -> std::unique_ptr<task> {
            param_reader(params, g.group).finish();
            return std::make_unique<tabletop_task>(make_mode_config(g.group, mode));
        };
        reg.add(std::move(e));
    }
}

}  // namespace memsuite
