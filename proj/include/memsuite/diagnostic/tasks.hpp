#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "memsuite/core/environment.hpp"
#include "memsuite/core/rng.hpp"

namespace memsuite::diagnostic {

/// Copy-cloning and mode-independent observation spaces for the catalog tasks.
/// Each task keeps its hidden state in a public `state_t` so tests can inspect
/// and perturb it.
template <class Derived>
class catalog_task : public task {
public:
    [[nodiscard]] std::unique_ptr<task> clone() const override {
        return std::make_unique<Derived>(static_cast<const Derived&>(*this));
    }
    [[nodiscard]] space_spec observation_space(observation_mode) const override {
        return static_cast<const Derived&>(*this).obs_space();
    }
};

// --- bit / symbol sequences -------------------------------------------------

class memory_length final : public catalog_task<memory_length> {
public:
    struct params_t {
        int memory_length = 10;
        int num_bits = 1;
    };
    struct state_t {
        std::vector<int> context;  // +1 / -1
        int query = 0;
        int t = 0;
    };

    explicit memory_length(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(2); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class memory_cards final : public catalog_task<memory_cards> {
public:
    struct params_t {
        int num_pairs = 5;
        int max_steps = 50;
    };
    struct state_t {
        std::vector<int> deck;  // value at each position
        std::vector<std::uint8_t> removed;
        int revealed = 0;
        rng gen;
    };

    explicit memory_cards(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(2 * p_.num_pairs); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    void reveal_random();

    params_t p_;
    state_t s_;
};

class repeat_previous final : public catalog_task<repeat_previous> {
public:
    struct params_t {
        int k = 4;
        int length = 52;
    };
    struct state_t {
        std::vector<int> symbols;  // symbols[i] shown at step i
        int t = 0;
        rng gen;
    };

    explicit repeat_previous(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class repeat_first final : public catalog_task<repeat_first> {
public:
    struct params_t {
        int length = 52;
    };
    struct state_t {
        int first = 0;
        int current = 0;
        int t = 0;
        rng gen;
    };

    explicit repeat_first(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class count_recall final : public catalog_task<count_recall> {
public:
    struct params_t {
        int values = 4;
        int length = 52;
    };
    struct state_t {
        std::vector<int> counts;  // occurrences among values already shown before this step
        int next_value = 0;
        int query = 0;
        int t = 0;
        rng gen;
    };

    explicit count_recall(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.length + 1); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class higher_lower final : public catalog_task<higher_lower> {
public:
    struct state_t {
        std::array<int, 52> deck{};  // card ids; rank = id / 4
        int index = 0;               // position of the reference card
    };
    static constexpr int rank_of(int card) noexcept { return card / 4; }

    higher_lower() = default;

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(2); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    state_t s_;
};

class autoencode final : public catalog_task<autoencode> {
public:
    struct params_t {
        int length = 12;
        int values = 4;
    };
    struct state_t {
        std::vector<int> deck;
        int t = 0;
    };

    explicit autoencode(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.values); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class concentration final : public catalog_task<concentration> {
public:
    struct params_t {
        int ranks = 13;
        int suits = 4;
        int flips = 104;
    };
    enum card_state : std::uint8_t { face_down, face_up, removed };
    struct state_t {
        std::vector<int> ranks;
        std::vector<std::uint8_t> status;
        std::vector<int> up;  // face-up cards of the current turn, at most 2
        int matched = 0;
    };

    explicit concentration(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] int cards() const noexcept { return p_.ranks * p_.suits; }
    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(cards()); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class bandit final : public catalog_task<bandit> {
public:
    struct params_t {
        int arms = 10;
        int length = 100;
    };
    struct state_t {
        std::vector<double> means;
        int last_arm = -1;
        double last_reward = 0.0;
        rng gen;
    };

    explicit bandit(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.arms); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

// --- boards and grids -------------------------------------------------------

class battleship final : public catalog_task<battleship> {
public:
    struct params_t {
        int size = 8;
        int max_steps = 100;
    };
    static constexpr std::array<int, 4> fleet{5, 4, 3, 2};
    static constexpr int ship_cells = 14;

    struct state_t {
        std::vector<std::uint8_t> ship;  // 1 where a ship occupies the cell
        std::vector<std::uint8_t> shot;
        int hits = 0;
        int last = -1;
        bool last_hit = false;
    };

    explicit battleship(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.size * p_.size); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class minesweeper final : public catalog_task<minesweeper> {
public:
    struct params_t {
        int size = 8;
        int mines = 10;
        int max_steps = 100;
    };
    struct state_t {
        std::vector<std::uint8_t> mine;
        std::vector<std::uint8_t> revealed;
        int safe_revealed = 0;
        int last = -1;
        int last_count = 0;  // adjacent mines of the last revealed safe cell
    };

    explicit minesweeper(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.size * p_.size); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] int adjacent_mines(int cell) const;
    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

/// Grid move actions shared by the maze tasks.
enum move : int { move_left = 0, move_right = 1, move_up = 2, move_down = 3 };

class passive_tmaze final : public catalog_task<passive_tmaze> {
public:
    struct params_t {
        int corridor_length = 10;
        int slack = 1;
    };
    struct state_t {
        bool goal_up = true;
        int x = 0;
        int y = 0;  // 0 in the corridor, +1 / -1 in the goal arms
        int t = 0;
    };

    explicit passive_tmaze(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);
    static int timeout(const params_t& p) noexcept { return p.corridor_length + 2 * p.slack; }

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class minigrid_memory final : public catalog_task<minigrid_memory> {
public:
    struct params_t {
        int corridor_length = 7;
        int max_steps = 100;
    };
    struct state_t {
        int room_object = 0;  // 0 key, 1 ball
        int up_object = 0;
        int x = 1;  // corridor cell, 1..corridor_length; the junction is the last cell
        int t = 0;
    };

    explicit minigrid_memory(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);
    /// Reward for reaching the matching object on step t of at most T.
    static double terminal_reward(int t, int max_steps) noexcept { return 1.0 - 0.9 * t / max_steps; }

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class numpad final : public catalog_task<numpad> {
public:
    struct params_t {
        int size = 3;
        int sequence_length = 3;
        int max_steps = 50;
    };
    enum action_t : int { stay = 0, up = 1, down = 2, left = 3, right = 4 };
    struct state_t {
        std::vector<int> sequence;  // tile indices
        int pos = 0;
        int progress = 0;  // sequence tiles lit since the last reset of progress
    };

    explicit numpad(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(5); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class passive_visual_match final : public catalog_task<passive_visual_match> {
public:
    struct params_t {
        int pads = 3;
        int colors = 9;
        int cue_steps = 5;
        int distractor_steps = 10;
        int select_steps = 10;
    };
    struct state_t {
        int target = 0;
        std::vector<int> pad_colors;
        std::vector<int> distractors;  // one color per distractor step
        int t = 0;
    };

    explicit passive_visual_match(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);
    static int timeout(const params_t& p) noexcept { return p.cue_steps + p.distractor_steps + p.select_steps; }

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(p_.pads + 1); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class mortar_mayhem final : public catalog_task<mortar_mayhem> {
public:
    struct params_t {
        int size = 5;
        int commands = 10;
    };
    /// Command k moves by (dx[k], dy[k]); 0 is "stay".
    static constexpr std::array<int, 9> dx{0, 0, 1, 1, 1, 0, -1, -1, -1};
    static constexpr std::array<int, 9> dy{0, 1, 1, 0, -1, -1, -1, 0, 1};

    struct state_t {
        std::vector<int> commands;
        int x = 0;
        int y = 0;
        int t = 0;
    };

    explicit mortar_mayhem(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(9); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class mystery_path final : public catalog_task<mystery_path> {
public:
    struct params_t {
        int size = 7;
        int max_steps = 128;
    };
    struct state_t {
        std::vector<int> path;  // cells from start (left column) to goal (right column)
        std::vector<std::uint8_t> on_path;
        std::vector<std::uint8_t> visited;
        int pos = 0;
        bool fell = false;
    };

    explicit mystery_path(params_t p) : p_(p) {}
    static params_t parse(const task_params& params);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    state_t s_;
};

class labyrinth final : public catalog_task<labyrinth> {
public:
    struct params_t {
        int size = 11;
        int max_steps = 500;
    };
    struct state_t {
        std::vector<std::uint8_t> wall;
        std::vector<std::uint8_t> visited;
        int free_cells = 0;
        int visited_count = 0;
        int pos = 0;
        int exit = 0;
    };

    labyrinth(params_t p, bool escape) : p_(p), escape_(escape) {}
    static params_t parse(const task_params& params);
    /// Recursive-backtracker maze on an odd-sized grid; cells with odd
    /// coordinates are rooms, the border is wall.
    static std::vector<std::uint8_t> generate(int size, rng& gen);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(4); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    [[nodiscard]] const params_t& params() const noexcept { return p_; }
    state_t& state() noexcept { return s_; }

private:
    params_t p_;
    bool escape_;
    state_t s_;
};

// --- control ----------------------------------------------------------------

/// Cart-pole with the conventional constants and semi-implicit Euler.
struct cartpole_physics {
    static constexpr double gravity = 9.8;
    static constexpr double cart_mass = 1.0;
    static constexpr double pole_mass = 0.1;
    static constexpr double half_length = 0.5;
    static constexpr double force_mag = 10.0;
    static constexpr double dt = 0.02;
    static constexpr double theta_limit = 12.0 * 2.0 * 3.141592653589793 / 360.0;
    static constexpr double x_limit = 2.4;

    double x = 0, x_dot = 0, theta = 0, theta_dot = 0;

    void advance(int push_right) noexcept;
    [[nodiscard]] bool failed() const noexcept { return x < -x_limit || x > x_limit || theta < -theta_limit || theta > theta_limit; }
};

class stateless_cartpole final : public catalog_task<stateless_cartpole> {
public:
    struct params_t {
        double noise_sigma = 0.0;
        int max_steps = 200;
    };
    struct state_t {
        cartpole_physics phys;
        std::array<float, 2> obs{};
        int t = 0;
        rng noise;
    };

    explicit stateless_cartpole(params_t p) : p_(p) {}
    static params_t parse(const task_params& params, double default_sigma);

    [[nodiscard]] space_spec action_space() const override { return space_spec::discrete(2); }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    void sample_observation();

    params_t p_;
    state_t s_;
};

/// Pendulum swing-up: g = 10, m = l = 1, dt = 0.05, |theta_dot| <= 8, |u| <= 2.
struct pendulum_physics {
    static constexpr double gravity = 10.0;
    static constexpr double mass = 1.0;
    static constexpr double length = 1.0;
    static constexpr double dt = 0.05;
    static constexpr double max_speed = 8.0;
    static constexpr double max_torque = 2.0;

    double theta = 0, theta_dot = 0;

    /// Applies torque u and returns the step cost's negation.
    double advance(double u) noexcept;
    static double angle_normalize(double a) noexcept;
};

class stateless_pendulum final : public catalog_task<stateless_pendulum> {
public:
    struct params_t {
        double noise_sigma = 0.0;
        int max_steps = 200;
    };
    struct state_t {
        pendulum_physics phys;
        float obs = 0;
        rng noise;
    };

    explicit stateless_pendulum(params_t p) : p_(p) {}
    static params_t parse(const task_params& params, double default_sigma);

    [[nodiscard]] space_spec action_space() const override {
        return space_spec::uniform_box(-pendulum_physics::max_torque, pendulum_physics::max_torque, {1});
    }
    [[nodiscard]] space_spec obs_space() const;
    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;

    state_t& state() noexcept { return s_; }

private:
    void sample_observation();

    params_t p_;
    state_t s_;
};

}  // namespace memsuite::diagnostic
