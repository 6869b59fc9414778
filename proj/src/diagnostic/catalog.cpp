#include "memsuite/core/params.hpp"
#include "memsuite/core/registry.hpp"
#include "memsuite/diagnostic/tasks.hpp"

namespace memsuite {

namespace {

using namespace diagnostic;

constexpr unsigned object = static_cast<unsigned>(memory_type::object);
constexpr unsigned spatial = static_cast<unsigned>(memory_type::spatial);
constexpr unsigned sequential = static_cast<unsigned>(memory_type::sequential);
constexpr unsigned capacity = static_cast<unsigned>(memory_type::capacity);

struct built {
    task_meta meta;
    std::unique_ptr<task> impl;
};

task_meta base_meta(std::string group, unsigned types, int timeout, int xi, vector_layout oracle,
                    std::vector<std::string> notes = {}) {
    task_meta m;
    m.task_id = group;
    m.group = std::move(group);
    m.mode = "default";
    m.suite = suite::diagnostic;
    m.memory_types = types;
    m.timeout = timeout;
    m.correlation_horizon = xi;
    m.modes = {"default"};
    m.oracle_info_schema = std::move(oracle);
    m.reward_modes = {reward_mode::dense};
    m.observation_modes = {observation_mode::state, observation_mode::masked};
    m.notes = std::move(notes);
    return m;
}

void add(registry& reg, const std::string& group, std::function<built(const task_params&)> build) {
    task_entry e;
    e.group = group;
    e.suite = suite::diagnostic;
    e.modes = {"default"};
    e.meta = [build](const std::string&, const task_params& p) { return build(p).meta; };
    e.factory = [build](const std::string&, const task_params& p) { return build(p).impl; };
    reg.add(std::move(e));
}

}  // namespace

void register_diagnostic_tasks(registry& reg) {
    add(reg, "MemoryLength", [](const task_params& params) {
        const auto p = memory_length::parse(params);
        return built{base_meta("MemoryLength", object, p.memory_length + 1, p.memory_length + 1,
                               {{"context", p.num_bits}, {"query", 1}}),
                     std::make_unique<memory_length>(p)};
    });
    add(reg, "MemoryCards", [](const task_params& params) {
        const auto p = memory_cards::parse(params);
        return built{base_meta("MemoryCards", capacity, p.max_steps, 2, {{"deck", 2 * p.num_pairs}},
                               {"reward 0 per correct and -1 per incorrect guess", "max_steps default 50"}),
                     std::make_unique<memory_cards>(p)};
    });
    add(reg, "Numpad", [](const task_params& params) {
        const auto p = numpad::parse(params);
        return built{base_meta("Numpad", sequential, p.max_steps, 2,
                               {{"sequence", p.sequence_length}, {"progress", 1}},
                               {"terminates when the sequence is completed", "max_steps default 50"}),
                     std::make_unique<numpad>(p)};
    });
    add(reg, "MinigridMemory", [](const task_params& params) {
        const auto p = minigrid_memory::parse(params);
        return built{base_meta("MinigridMemory", object, p.max_steps, p.corridor_length,
                               {{"room_object", 1}, {"correct_arm", 1}}, {"corridor_length default 7"}),
                     std::make_unique<minigrid_memory>(p)};
    });
    add(reg, "PassiveTMaze", [](const task_params& params) {
        const auto p = passive_tmaze::parse(params);
        return built{base_meta("PassiveTMaze", object, passive_tmaze::timeout(p), p.corridor_length + 1,
                               {{"goal", 1}}, {"corridor_length default 10", "slack default 1"}),
                     std::make_unique<passive_tmaze>(p)};
    });
    add(reg, "PassiveVisualMatch", [](const task_params& params) {
        const auto p = passive_visual_match::parse(params);
        return built{base_meta("PassiveVisualMatch", object, passive_visual_match::timeout(p),
                               p.distractor_steps + 2, {{"target_color", 1}, {"target_pad", 1}},
                               {"phase lengths 5/10/10 by default"}),
                     std::make_unique<passive_visual_match>(p)};
    });
    add(reg, "MortarMayhem", [](const task_params& params) {
        const auto p = mortar_mayhem::parse(params);
        return built{base_meta("MortarMayhem", capacity | sequential, 2 * p.commands, p.commands + 1,
                               {{"command", 1}}, {"symbolic 5x5 grid, 10 commands by default"}),
                     std::make_unique<mortar_mayhem>(p)};
    });
    add(reg, "MysteryPath", [](const task_params& params) {
        const auto p = mystery_path::parse(params);
        return built{base_meta("MysteryPath", capacity | spatial, p.max_steps, 2,
                               {{"path_mask", p.size * p.size}}, {"symbolic 7x7 grid, max_steps 128 by default"}),
                     std::make_unique<mystery_path>(p)};
    });
    add(reg, "RepeatFirst", [](const task_params& params) {
        const auto p = repeat_first::parse(params);
        return built{base_meta("RepeatFirst", object, p.length, 2, {{"first", 1}}, {"length default 52"}),
                     std::make_unique<repeat_first>(p)};
    });
    add(reg, "RepeatPrevious", [](const task_params& params) {
        const auto p = repeat_previous::parse(params);
        return built{base_meta("RepeatPrevious", sequential | object, p.length, p.k + 1, {{"target", 1}},
                               {"length default 52", "k default 4"}),
                     std::make_unique<repeat_previous>(p)};
    });
    add(reg, "Autoencode", [](const task_params& params) {
        const auto p = autoencode::parse(params);
        return built{base_meta("Autoencode", sequential, 2 * p.length - 1, p.length, {{"target", 1}},
                               {"deck of 12 cards over 4 values by default"}),
                     std::make_unique<autoencode>(p)};
    });
    add(reg, "CountRecall", [](const task_params& params) {
        const auto p = count_recall::parse(params);
        return built{base_meta("CountRecall", object | capacity, p.length, 2, {{"count", 1}},
                               {"length default 52", "values default 4"}),
                     std::make_unique<count_recall>(p)};
    });
    add(reg, "StatelessCartpole", [](const task_params& params) {
        const auto p = stateless_cartpole::parse(params, 0.0);
        return built{base_meta("StatelessCartpole", sequential, p.max_steps, 2,
                               {{"x", 1}, {"x_dot", 1}, {"theta", 1}, {"theta_dot", 1}}),
                     std::make_unique<stateless_cartpole>(p)};
    });
    add(reg, "NoisyStatelessCartpole", [](const task_params& params) {
        const auto p = stateless_cartpole::parse(params, 0.1);
        return built{base_meta("NoisyStatelessCartpole", sequential, p.max_steps, 2,
                               {{"x", 1}, {"x_dot", 1}, {"theta", 1}, {"theta_dot", 1}},
                               {"noise_sigma default 0.1"}),
                     std::make_unique<stateless_cartpole>(p)};
    });
    add(reg, "StatelessPendulum", [](const task_params& params) {
        const auto p = stateless_pendulum::parse(params, 0.0);
        return built{base_meta("StatelessPendulum", sequential, p.max_steps, 2, {{"theta", 1}, {"theta_dot", 1}}),
                     std::make_unique<stateless_pendulum>(p)};
    });
    add(reg, "NoisyStatelessPendulum", [](const task_params& params) {
        const auto p = stateless_pendulum::parse(params, 0.1);
        return built{base_meta("NoisyStatelessPendulum", sequential, p.max_steps, 2,
                               {{"theta", 1}, {"theta_dot", 1}}, {"noise_sigma default 0.1"}),
                     std::make_unique<stateless_pendulum>(p)};
    });
    add(reg, "MultiarmedBandit", [](const task_params& params) {
        const auto p = bandit::parse(params);
        return built{base_meta("MultiarmedBandit", object | capacity, p.length, 2, {{"means", p.arms}},
                               {"arms default 10"}),
                     std::make_unique<bandit>(p)};
    });
    add(reg, "Concentration", [](const task_params& params) {
        const auto p = concentration::parse(params);
        return built{base_meta("Concentration", capacity, p.flips, 2, {{"ranks", p.ranks * p.suits}},
                               {"52 cards matched by rank, 104 flips by default"}),
                     std::make_unique<concentration>(p)};
    });
    add(reg, "Battleship", [](const task_params& params) {
        const auto p = battleship::parse(params);
        return built{base_meta("Battleship", spatial, p.max_steps, 2, {{"board", p.size * p.size}},
                               {"8x8 board with ships 5/4/3/2 by default"}),
                     std::make_unique<battleship>(p)};
    });
    add(reg, "MineSweeper", [](const task_params& params) {
        const auto p = minesweeper::parse(params);
        return built{base_meta("MineSweeper", spatial, p.max_steps, 2, {{"mines", p.size * p.size}},
                               {"8x8 board with 10 mines by default"}),
                     std::make_unique<minesweeper>(p)};
    });
    add(reg, "LabyrinthExplore", [](const task_params& params) {
        const auto p = labyrinth::parse(params);
        return built{base_meta("LabyrinthExplore", spatial, p.max_steps, 2, {{"row", 1}, {"col", 1}},
                               {"11x11 recursive-backtracker maze by default"}),
                     std::make_unique<labyrinth>(p, false)};
    });
    add(reg, "LabyrinthEscape", [](const task_params& params) {
        const auto p = labyrinth::parse(params);
        return built{base_meta("LabyrinthEscape", spatial, p.max_steps, 2, {{"row", 1}, {"col", 1}},
                               {"11x11 recursive-backtracker maze by default"}),
                     std::make_unique<labyrinth>(p, true)};
    });
    add(reg, "HigherLower", [](const task_params& params) {
        param_reader(params, "HigherLower").finish();
        return built{base_meta("HigherLower", object | sequential, 51, 2, {{"next_rank", 1}}),
                     std::make_unique<higher_lower>()};
    });
}

}  // namespace memsuite
