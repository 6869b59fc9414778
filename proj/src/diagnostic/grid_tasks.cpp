#include <algorithm>
#include <numeric>

#include "memsuite/core/error.hpp"
#include "memsuite/core/params.hpp"
#include "memsuite/diagnostic/tasks.hpp"

namespace memsuite::diagnostic {

namespace {

int action_index(std::span<const double> a) { return static_cast<int>(a[0]); }

void one_hot(std::vector<float>& out, std::size_t offset, int index) {
    if (index >= 0) out[offset + static_cast<std::size_t>(index)] = 1.0f;
}

}  // namespace

// --- Battleship ---------------------------------------------------------------

battleship::params_t battleship::parse(const task_params& params) {
    param_reader r(params, "Battleship");
    params_t p;
    p.size = r.integer("size", p.size, 5, 64);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    return p;
}

space_spec battleship::obs_space() const { return space_spec::uniform_box(0, 1, {2 * p_.size + 2}); }

void battleship::reset(std::uint64_t seed) {
    rng gen(seed);
    const int n = p_.size;
    s_.ship.assign(n * n, 0);
    for (int len : fleet) {
        for (;;) {
            const bool horizontal = gen.bernoulli(0.5);
            const int r = gen.below_int(horizontal ? n : n - len + 1);
            const int c = gen.below_int(horizontal ? n - len + 1 : n);
            bool free = true;
            for (int i = 0; i < len && free; ++i)
                free = !s_.ship[horizontal ? r * n + c + i : (r + i) * n + c];
            if (!free) continue;
            for (int i = 0; i < len; ++i) s_.ship[horizontal ? r * n + c + i : (r + i) * n + c] = 1;
            break;
        }
    }
    s_.shot.assign(n * n, 0);
    s_.hits = 0;
    s_.last = -1;
    s_.last_hit = false;
}

transition battleship::step(std::span<const double> action) {
    const int a = action_index(action);
    transition tr;
    s_.last = a;
    s_.last_hit = s_.ship[a] != 0;
    if (s_.shot[a]) {
        tr.reward = -1.0 / (p_.size * p_.size);
        return tr;
    }
    s_.shot[a] = 1;
    if (s_.ship[a]) {
        ++s_.hits;
        tr.reward = 1.0 / ship_cells;
        tr.success = tr.terminated = s_.hits == ship_cells;
    }
    return tr;
}

void battleship::observe(observation_mode, std::vector<float>& out) const {
    out.assign(2 * p_.size + 2, 0.0f);
    if (s_.last < 0) return;
    one_hot(out, 0, s_.last / p_.size);
    one_hot(out, p_.size, s_.last % p_.size);
    out[2 * p_.size + (s_.last_hit ? 0 : 1)] = 1.0f;
}

std::vector<float> battleship::oracle_info() const { return {s_.ship.begin(), s_.ship.end()}; }

// --- MineSweeper --------------------------------------------------------------

minesweeper::params_t minesweeper::parse(const task_params& params) {
    param_reader r(params, "MineSweeper");
    params_t p;
    p.size = r.integer("size", p.size, 2, 64);
    p.mines = r.integer("mines", p.mines, 1, 64 * 64 - 1);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    if (p.mines >= p.size * p.size) throw error(errc::bad_param, "MineSweeper: too many mines for the board");
    return p;
}

space_spec minesweeper::obs_space() const { return space_spec::uniform_box(0, 1, {2 * p_.size + 9}); }

void minesweeper::reset(std::uint64_t seed) {
    rng gen(seed);
    const int cells = p_.size * p_.size;
    std::vector<int> order(cells);
    std::iota(order.begin(), order.end(), 0);
    gen.shuffle(order);
    s_.mine.assign(cells, 0);
    for (int i = 0; i < p_.mines; ++i) s_.mine[order[i]] = 1;
    s_.revealed.assign(cells, 0);
    s_.safe_revealed = 0;
    s_.last = -1;
    s_.last_count = -1;
}

int minesweeper::adjacent_mines(int cell) const {
    const int n = p_.size, r = cell / n, c = cell % n;
    int count = 0;
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            const int rr = r + dr, cc = c + dc;
            if ((dr || dc) && rr >= 0 && rr < n && cc >= 0 && cc < n) count += s_.mine[rr * n + cc];
        }
    return count;
}

transition minesweeper::step(std::span<const double> action) {
    const int a = action_index(action);
    transition tr;
    s_.last = a;
    if (s_.revealed[a]) {
        s_.last_count = adjacent_mines(a);
        return tr;
    }
    if (s_.mine[a]) {
        s_.last_count = -1;
        tr.reward = -1.0;
        tr.terminated = true;
        return tr;
    }
    s_.revealed[a] = 1;
    ++s_.safe_revealed;
    s_.last_count = adjacent_mines(a);
    const int safe = p_.size * p_.size - p_.mines;
    tr.reward = 1.0 / safe;
    tr.success = tr.terminated = s_.safe_revealed == safe;
    return tr;
}

void minesweeper::observe(observation_mode, std::vector<float>& out) const {
    out.assign(2 * p_.size + 9, 0.0f);
    if (s_.last < 0) return;
    one_hot(out, 0, s_.last / p_.size);
    one_hot(out, p_.size, s_.last % p_.size);
    one_hot(out, 2 * p_.size, s_.last_count);
}

std::vector<float> minesweeper::oracle_info() const { return {s_.mine.begin(), s_.mine.end()}; }

// --- PassiveTMaze -------------------------------------------------------------

passive_tmaze::params_t passive_tmaze::parse(const task_params& params) {
    param_reader r(params, "PassiveTMaze");
    params_t p;
    p.corridor_length = r.integer("corridor_length", p.corridor_length, 1, 100000);
    p.slack = r.integer("slack", p.slack, 1, 100000);
    r.finish();
    return p;
}

// [cue (+1 up / -1 down, first step only), at junction, at start]
space_spec passive_tmaze::obs_space() const { return space_spec::box({-1, 0, 0}, {1, 1, 1}, {3}); }

void passive_tmaze::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.goal_up = gen.bernoulli(0.5);
    s_.x = s_.y = s_.t = 0;
}

transition passive_tmaze::step(std::span<const double> action) {
    transition tr;
    ++s_.t;
    switch (action_index(action)) {
        case move_left: s_.x = std::max(0, s_.x - 1); break;
        case move_right: s_.x = std::min(p_.corridor_length, s_.x + 1); break;
        case move_up:
        case move_down:
            if (s_.x == p_.corridor_length) {
                const bool up = action_index(action) == move_up;
                s_.y = up ? 1 : -1;
                tr.success = up == s_.goal_up;
                tr.reward = tr.success ? 1.0 : 0.0;
                tr.terminated = true;
            }
            break;
    }
    return tr;
}

void passive_tmaze::observe(observation_mode, std::vector<float>& out) const {
    out.assign(3, 0.0f);
    if (s_.t == 0) out[0] = s_.goal_up ? 1.0f : -1.0f;
    out[1] = s_.x == p_.corridor_length && s_.y == 0 ? 1.0f : 0.0f;
    out[2] = s_.x == 0 ? 1.0f : 0.0f;
}

phase_id passive_tmaze::phase() const {
    if (s_.t == 0) return phase_id::observation;
    return s_.x == p_.corridor_length ? phase_id::selection : phase_id::delay;
}

std::vector<float> passive_tmaze::oracle_info() const { return {s_.goal_up ? 1.0f : -1.0f}; }

// --- MinigridMemory -----------------------------------------------------------

minigrid_memory::params_t minigrid_memory::parse(const task_params& params) {
    param_reader r(params, "MinigridMemory");
    params_t p;
    p.corridor_length = r.integer("corridor_length", p.corridor_length, 2, 10000);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    return p;
}

// [room object one-hot, up-arm object one-hot, down-arm object one-hot,
//  left blocked, right blocked, at junction]
space_spec minigrid_memory::obs_space() const { return space_spec::uniform_box(0, 1, {9}); }

void minigrid_memory::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.room_object = gen.below_int(2);
    s_.up_object = gen.below_int(2);
    s_.x = 1 + gen.below_int(p_.corridor_length - 1);
    s_.t = 0;
}

transition minigrid_memory::step(std::span<const double> action) {
    transition tr;
    ++s_.t;
    const int a = action_index(action);
    const int junction = p_.corridor_length;
    if (a == move_left) s_.x = std::max(1, s_.x - 1);
    if (a == move_right) s_.x = std::min(junction, s_.x + 1);
    if ((a == move_up || a == move_down) && s_.x == junction) {
        const int chosen = a == move_up ? s_.up_object : 1 - s_.up_object;
        tr.success = chosen == s_.room_object;
        tr.reward = tr.success ? terminal_reward(s_.t, p_.max_steps) : 0.0;
        tr.terminated = true;
    }
    return tr;
}

void minigrid_memory::observe(observation_mode, std::vector<float>& out) const {
    out.assign(9, 0.0f);
    const int junction = p_.corridor_length;
    if (s_.x == 1) one_hot(out, 0, s_.room_object);
    if (s_.x == junction) {
        one_hot(out, 2, s_.up_object);
        one_hot(out, 4, 1 - s_.up_object);
    }
    out[6] = s_.x == 1 ? 1.0f : 0.0f;
    out[7] = s_.x == junction ? 1.0f : 0.0f;
    out[8] = s_.x == junction ? 1.0f : 0.0f;
}

std::vector<float> minigrid_memory::oracle_info() const {
    return {static_cast<float>(s_.room_object), static_cast<float>(s_.up_object == s_.room_object ? 1 : -1)};
}

// --- Numpad -------------------------------------------------------------------

numpad::params_t numpad::parse(const task_params& params) {
    param_reader r(params, "Numpad");
    params_t p;
    p.size = r.integer("size", p.size, 2, 32);
    p.sequence_length = r.integer("sequence_length", p.sequence_length, 1, 32 * 32);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    if (p.sequence_length > p.size * p.size)
        throw error(errc::bad_param, "Numpad: sequence longer than the number of tiles");
    return p;
}

space_spec numpad::obs_space() const { return space_spec::uniform_box(0, 1, {2 * p_.size * p_.size}); }

void numpad::reset(std::uint64_t seed) {
    rng gen(seed);
    const int n = p_.size;
    // Self-avoiding walk over 4-neighbours; restarts from scratch when stuck.
    for (;;) {
        std::vector<std::uint8_t> used(n * n, 0);
        s_.sequence.assign(1, gen.below_int(n * n));
        used[s_.sequence[0]] = 1;
        while (static_cast<int>(s_.sequence.size()) < p_.sequence_length) {
            const int cur = s_.sequence.back(), r = cur / n, c = cur % n;
            int options[4], k = 0;
            if (r > 0 && !used[cur - n]) options[k++] = cur - n;
            if (r < n - 1 && !used[cur + n]) options[k++] = cur + n;
            if (c > 0 && !used[cur - 1]) options[k++] = cur - 1;
            if (c < n - 1 && !used[cur + 1]) options[k++] = cur + 1;
            if (k == 0) break;
            const int next = options[gen.below_int(k)];
            used[next] = 1;
            s_.sequence.push_back(next);
        }
        if (static_cast<int>(s_.sequence.size()) == p_.sequence_length) break;
    }
    s_.pos = gen.below_int(n * n);
    s_.progress = 0;
}

transition numpad::step(std::span<const double> action) {
    transition tr;
    const int n = p_.size, r = s_.pos / n, c = s_.pos % n;
    int target = -1;
    switch (action_index(action)) {
        case up: target = r > 0 ? s_.pos - n : -1; break;
        case down: target = r < n - 1 ? s_.pos + n : -1; break;
        case left: target = c > 0 ? s_.pos - 1 : -1; break;
        case right: target = c < n - 1 ? s_.pos + 1 : -1; break;
        default: break;
    }
    if (target < 0) return tr;
    s_.pos = target;
    if (target == s_.sequence[s_.progress]) {
        ++s_.progress;
        tr.reward = 1.0;
    } else {
        s_.progress = 0;
        if (target == s_.sequence[0]) {
            s_.progress = 1;
            tr.reward = 1.0;
        }
    }
    tr.success = tr.terminated = s_.progress == p_.sequence_length;
    return tr;
}

void numpad::observe(observation_mode, std::vector<float>& out) const {
    const int cells = p_.size * p_.size;
    out.assign(2 * cells, 0.0f);
    one_hot(out, 0, s_.pos);
    for (int i = 0; i < s_.progress; ++i) out[cells + s_.sequence[i]] = 1.0f;
}

std::vector<float> numpad::oracle_info() const {
    std::vector<float> out(s_.sequence.begin(), s_.sequence.end());
    out.push_back(static_cast<float>(s_.progress));
    return out;
}

// --- PassiveVisualMatch -------------------------------------------------------

passive_visual_match::params_t passive_visual_match::parse(const task_params& params) {
    param_reader r(params, "PassiveVisualMatch");
    params_t p;
    p.pads = r.integer("pads", p.pads, 2, 64);
    p.colors = r.integer("colors", p.colors, 2, 64);
    p.cue_steps = r.integer("cue_steps", p.cue_steps, 1, 100000);
    p.distractor_steps = r.integer("distractor_steps", p.distractor_steps, 0, 100000);
    p.select_steps = r.integer("select_steps", p.select_steps, 1, 100000);
    r.finish();
    if (p.pads > p.colors) throw error(errc::bad_param, "PassiveVisualMatch: more pads than colors");
    return p;
}

// [current color one-hot, pad colors (pads x colors), phase one-hot(3)]
space_spec passive_visual_match::obs_space() const {
    return space_spec::uniform_box(0, 1, {p_.colors * (p_.pads + 1) + 3});
}

void passive_visual_match::reset(std::uint64_t seed) {
    rng gen(seed);
    s_.target = gen.below_int(p_.colors);
    std::vector<int> others;
    for (int c = 0; c < p_.colors; ++c)
        if (c != s_.target) others.push_back(c);
    gen.shuffle(others);
    s_.pad_colors.assign(others.begin(), others.begin() + (p_.pads - 1));
    s_.pad_colors.push_back(s_.target);
    gen.shuffle(s_.pad_colors);
    s_.distractors.resize(p_.distractor_steps);
    for (int& d : s_.distractors) d = gen.below_int(p_.colors);
    s_.t = 0;
}

transition passive_visual_match::step(std::span<const double> action) {
    transition tr;
    const int a = action_index(action);
    if (s_.t >= p_.cue_steps + p_.distractor_steps && a < p_.pads) {
        tr.success = s_.pad_colors[a] == s_.target;
        tr.reward = tr.success ? 1.0 : 0.0;
        tr.terminated = true;
    }
    ++s_.t;
    return tr;
}

void passive_visual_match::observe(observation_mode, std::vector<float>& out) const {
    const int c = p_.colors;
    out.assign(c * (p_.pads + 1) + 3, 0.0f);
    const std::size_t phase_at = static_cast<std::size_t>(c * (p_.pads + 1));
    if (s_.t < p_.cue_steps) {
        one_hot(out, 0, s_.target);
        out[phase_at] = 1.0f;
    } else if (s_.t < p_.cue_steps + p_.distractor_steps) {
        one_hot(out, 0, s_.distractors[s_.t - p_.cue_steps]);
        out[phase_at + 1] = 1.0f;
    } else {
        for (int k = 0; k < p_.pads; ++k) one_hot(out, static_cast<std::size_t>(c * (k + 1)), s_.pad_colors[k]);
        out[phase_at + 2] = 1.0f;
    }
}

phase_id passive_visual_match::phase() const {
    if (s_.t < p_.cue_steps) return phase_id::observation;
    if (s_.t < p_.cue_steps + p_.distractor_steps) return phase_id::delay;
    return phase_id::selection;
}

std::vector<float> passive_visual_match::oracle_info() const {
    const auto it = std::find(s_.pad_colors.begin(), s_.pad_colors.end(), s_.target);
    return {static_cast<float>(s_.target), static_cast<float>(it - s_.pad_colors.begin())};
}

// --- MortarMayhem -------------------------------------------------------------

mortar_mayhem::params_t mortar_mayhem::parse(const task_params& params) {
    param_reader r(params, "MortarMayhem");
    params_t p;
    p.size = r.integer("size", p.size, 2, 64);
    p.commands = r.integer("commands", p.commands, 1, 10000);
    r.finish();
    return p;
}

// [command one-hot(9), position one-hot(size^2), execution flag]
space_spec mortar_mayhem::obs_space() const { return space_spec::uniform_box(0, 1, {10 + p_.size * p_.size}); }

void mortar_mayhem::reset(std::uint64_t seed) {
    rng gen(seed);
    const int n = p_.size;
    s_.x = gen.below_int(n);
    s_.y = gen.below_int(n);
    s_.commands.clear();
    int x = s_.x, y = s_.y;
    for (int i = 0; i < p_.commands; ++i) {
        int valid[9], k = 0;
        for (int c = 0; c < 9; ++c) {
            const int nx = x + dx[c], ny = y + dy[c];
            if (nx >= 0 && nx < n && ny >= 0 && ny < n) valid[k++] = c;
        }
        const int c = valid[gen.below_int(k)];
        s_.commands.push_back(c);
        x += dx[c];
        y += dy[c];
    }
    s_.t = 0;
}

transition mortar_mayhem::step(std::span<const double> action) {
    transition tr;
    const int e = s_.t - p_.commands;
    ++s_.t;
    if (e < 0) return tr;
    const int cmd = s_.commands[e];
    const int tx = s_.x + dx[cmd], ty = s_.y + dy[cmd];
    const int a = action_index(action);
    const int n = p_.size;
    s_.x = std::clamp(s_.x + dx[a], 0, n - 1);
    s_.y = std::clamp(s_.y + dy[a], 0, n - 1);
    if (s_.x != tx || s_.y != ty) {
        tr.terminated = true;
        return tr;
    }
    tr.reward = 0.1;
    tr.success = tr.terminated = e == p_.commands - 1;
    return tr;
}

void mortar_mayhem::observe(observation_mode, std::vector<float>& out) const {
    out.assign(10 + p_.size * p_.size, 0.0f);
    if (s_.t < p_.commands) one_hot(out, 0, s_.commands[s_.t]);
    one_hot(out, 9, s_.y * p_.size + s_.x);
    if (s_.t >= p_.commands) out.back() = 1.0f;
}

phase_id mortar_mayhem::phase() const { return s_.t < p_.commands ? phase_id::observation : phase_id::action; }

std::vector<float> mortar_mayhem::oracle_info() const {
    const int e = s_.t - p_.commands;
    return {static_cast<float>(e >= 0 && e < p_.commands ? s_.commands[e] : -1)};
}

// --- MysteryPath --------------------------------------------------------------

mystery_path::params_t mystery_path::parse(const task_params& params) {
    param_reader r(params, "MysteryPath");
    params_t p;
    p.size = r.integer("size", p.size, 3, 64);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    return p;
}

space_spec mystery_path::obs_space() const { return space_spec::uniform_box(0, 1, {p_.size * p_.size + 1}); }

void mystery_path::reset(std::uint64_t seed) {
    rng gen(seed);
    const int n = p_.size;
    s_.on_path.assign(n * n, 0);
    int r = gen.below_int(n), c = 0;
    s_.path.assign(1, r * n);
    s_.on_path[r * n] = 1;
    while (c < n - 1) {
        int options[3], k = 0;
        options[k++] = r * n + c + 1;
        if (gen.bernoulli(0.5)) {
            if (r > 0 && !s_.on_path[(r - 1) * n + c]) options[k++] = (r - 1) * n + c;
            if (r < n - 1 && !s_.on_path[(r + 1) * n + c]) options[k++] = (r + 1) * n + c;
        }
        const int next = options[k == 1 ? 0 : 1 + gen.below_int(k - 1)];
        r = next / n;
        c = next % n;
        s_.path.push_back(next);
        s_.on_path[next] = 1;
    }
    s_.visited.assign(n * n, 0);
    s_.pos = s_.path.front();
    s_.visited[s_.pos] = 1;
    s_.fell = false;
}

transition mystery_path::step(std::span<const double> action) {
    transition tr;
    const int n = p_.size, r = s_.pos / n, c = s_.pos % n;
    int target = -1;
    switch (action_index(action)) {
        case move_up: target = r > 0 ? s_.pos - n : -1; break;
        case move_down: target = r < n - 1 ? s_.pos + n : -1; break;
        case move_left: target = c > 0 ? s_.pos - 1 : -1; break;
        case move_right: target = c < n - 1 ? s_.pos + 1 : -1; break;
        default: break;
    }
    s_.fell = false;
    if (target < 0) return tr;
    if (!s_.on_path[target]) {
        s_.pos = s_.path.front();
        s_.fell = true;
        return tr;
    }
    s_.pos = target;
    if (!s_.visited[target]) {
        s_.visited[target] = 1;
        tr.reward = 0.1;
    }
    tr.success = tr.terminated = target == s_.path.back();
    return tr;
}

void mystery_path::observe(observation_mode, std::vector<float>& out) const {
    out.assign(p_.size * p_.size + 1, 0.0f);
    one_hot(out, 0, s_.pos);
    out.back() = s_.fell ? 1.0f : 0.0f;
}

std::vector<float> mystery_path::oracle_info() const { return {s_.on_path.begin(), s_.on_path.end()}; }

// --- Labyrinth ----------------------------------------------------------------

labyrinth::params_t labyrinth::parse(const task_params& params) {
    param_reader r(params, "Labyrinth");
    params_t p;
    p.size = r.integer("size", p.size, 5, 255);
    p.max_steps = r.integer("max_steps", p.max_steps, 1, 1000000);
    r.finish();
    if (p.size % 2 == 0) throw error(errc::bad_param, "Labyrinth: size must be odd");
    return p;
}

std::vector<std::uint8_t> labyrinth::generate(int size, rng& gen) {
    std::vector<std::uint8_t> wall(size * size, 1);
    std::vector<int> stack{size + 1};
    wall[size + 1] = 0;
    while (!stack.empty()) {
        const int cur = stack.back(), r = cur / size, c = cur % size;
        int options[4], k = 0;
        if (r > 2 && wall[cur - 2 * size]) options[k++] = cur - 2 * size;
        if (r < size - 3 && wall[cur + 2 * size]) options[k++] = cur + 2 * size;
        if (c > 2 && wall[cur - 2]) options[k++] = cur - 2;
        if (c < size - 3 && wall[cur + 2]) options[k++] = cur + 2;
        if (k == 0) {
            stack.pop_back();
            continue;
        }
        const int next = options[gen.below_int(k)];
        wall[(cur + next) / 2] = 0;
        wall[next] = 0;
        stack.push_back(next);
    }
    return wall;
}

space_spec labyrinth::obs_space() const { return space_spec::uniform_box(0, 2, {8}); }

void labyrinth::reset(std::uint64_t seed) {
    rng gen(seed);
    const int n = p_.size;
    s_.wall = generate(n, gen);
    s_.free_cells = static_cast<int>(std::count(s_.wall.begin(), s_.wall.end(), 0));
    s_.pos = n + 1;
    s_.exit = (n - 2) * n + (n - 2);
    s_.visited.assign(n * n, 0);
    s_.visited[s_.pos] = 1;
    s_.visited_count = 1;
}

transition labyrinth::step(std::span<const double> action) {
    transition tr;
    const int n = p_.size;
    int target = s_.pos;
    switch (action_index(action)) {
        case move_left: target -= 1; break;
        case move_right: target += 1; break;
        case move_up: target -= n; break;
        case move_down: target += n; break;
        default: break;
    }
    if (!s_.wall[target]) s_.pos = target;
    if (escape_) {
        if (s_.pos == s_.exit) {
            tr.reward = 1.0;
            tr.success = tr.terminated = true;
        }
        return tr;
    }
    tr.reward = -0.001;
    if (!s_.visited[s_.pos]) {
        s_.visited[s_.pos] = 1;
        ++s_.visited_count;
        tr.reward += 1.0 / s_.free_cells;
    }
    tr.success = tr.terminated = s_.visited_count == s_.free_cells;
    return tr;
}

void labyrinth::observe(observation_mode, std::vector<float>& out) const {
    out.assign(8, 0.0f);
    const int n = p_.size;
    int k = 0;
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            if (!dr && !dc) continue;
            const int cell = s_.pos + dr * n + dc;
            out[k++] = s_.wall[cell] ? 1.0f : (escape_ && cell == s_.exit ? 2.0f : 0.0f);
        }
}

std::vector<float> labyrinth::oracle_info() const {
    return {static_cast<float>(s_.pos / p_.size), static_cast<float>(s_.pos % p_.size)};
}

}  // namespace memsuite::diagnostic
