#include <algorithm>
#include <cmath>
#include <numbers>

#include "memsuite/core/error.hpp"
#include "memsuite/core/rng.hpp"
#include "memsuite/tabletop/task.hpp"

namespace memsuite::tabletop {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double gripper_limit = workspace_half - gripper_radius;
constexpr std::array<int, 5> pair_shapes{glyph::cube, glyph::sphere, glyph::t_shape, glyph::cross, glyph::torus};
constexpr double cue_x = 0.0, cue_y = 0.15;
constexpr double zone_x = 0.0, zone_y = 0.3;

struct cell {
    double x, y;
};

std::vector<cell> grid(int cols) {
    std::vector<cell> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < cols; ++c) out.push_back({0.15 * (c - (cols - 1) / 2.0), 0.3 - 0.15 * r});
    return out;
}

/// `n` distinct cells of the grid in slot order (row-major).
std::vector<cell> pick_cells(int cols, int n, rng& gen) {
    const auto all = grid(cols);
    std::vector<int> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    gen.shuffle(idx);
    idx.resize(static_cast<std::size_t>(n));
    std::sort(idx.begin(), idx.end());
    std::vector<cell> out;
    for (int i : idx) out.push_back(all[static_cast<std::size_t>(i)]);
    return out;
}

object make_object(role kind, int shape, int color, double x, double y, double radius) {
    object o;
    o.kind = kind;
    o.shape = shape;
    o.color = color;
    o.x = o.x0 = x;
    o.y = o.y0 = y;
    o.radius = radius;
    return o;
}

double clamp_in(double v, double radius) {
    const double lim = workspace_half - radius;
    return std::clamp(v, -lim, lim);
}


bool is_cue_family(family f) {
    return f == family::bunch_of_colors || f == family::seq_of_colors || f == family::chain_of_colors;
}

bool is_rotate(family f) { return f == family::rotate_lenient || f == family::rotate_strict; }

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

double closeness(double d, double scale = 5.0) { return 1.0 - std::tanh(scale * d); }

}  // namespace

space_spec tabletop_task::action_space() const {
    return space_spec::box({-max_step, -max_step, -max_turn, 0.0}, {max_step, max_step, max_turn, 1.0}, {4});
}

space_spec tabletop_task::observation_space(observation_mode mode) const {
    const int prompt = layout_size(prompt_layout(cfg_));
    int n = proprio_size + prompt;
    if (mode != observation_mode::rgb) n += slot_count(cfg_) * object_feature_size;
    if (mode == observation_mode::state) n += layout_size(oracle_layout(cfg_));
    return space_spec::uniform_box(-100.0, 100.0, {n});
}

void tabletop_task::reset(std::uint64_t seed) {
    s_ = scene{};
    layout_attrs_.clear();
    terms_ = {};
    rng layout(seed, 0);
    rng hidden(seed, 1);
    auto& objs = s_.objects;

    switch (cfg_.fam) {
        case family::shell_game: {
            object ball = make_object(role::ball, glyph::sphere, 0, 0, 0.15, ball_radius);
            ball.solid = false;
            objs.push_back(ball);
            for (int i = 0; i < 3; ++i) {
                object m = make_object(role::mug, glyph::mug, neutral, 0.15 * (i - 1), 0.22, mug_radius);
                m.pushable = m.grabbable = true;
                objs.push_back(m);
            }
            s_.answer = {hidden.below_int(3)};
            break;
        }
        case family::intercept:
        case family::intercept_grab: {
            const double speed = hidden.uniform(cfg_.speed_lo, cfg_.speed_hi);
            const double heading = hidden.uniform(-pi / 12, pi / 12);
            object ball = make_object(role::ball, glyph::sphere, 0, -0.4, layout.uniform(-0.15, 0.05), ball_radius);
            ball.vx = speed * std::cos(heading);
            ball.vy = speed * std::sin(heading);
            ball.pushable = true;
            ball.grabbable = cfg_.fam == family::intercept_grab;
            ball.visible = true;
            s_.ball_v0x = ball.vx;
            s_.ball_v0y = ball.vy;
            objs.push_back(ball);
            if (cfg_.fam == family::intercept) {
                object zone = make_object(role::zone, glyph::region, 1, zone_x, zone_y, zone_radius);
                zone.solid = false;
                zone.visible = true;
                objs.push_back(zone);
            }
            break;
        }
        case family::rotate_lenient:
        case family::rotate_strict: {
            object p = make_object(role::peg, glyph::peg, 2, layout.uniform(-0.1, 0.1), layout.uniform(0.0, 0.2),
                                   peg_radius);
            p.angle = layout.uniform(-pi, pi);
            p.pushable = p.grabbable = true;
            p.visible = true;
            objs.push_back(p);
            s_.target_angle =
                cfg_.pos_neg ? hidden.uniform(-pi / 4, pi / 4) : (pi / 2) * (1.0 - hidden.uniform());
            break;
        }
        case family::take_it_back: {
            object c = make_object(role::cube, glyph::cube, 1, layout.uniform(-0.25, 0.25), layout.uniform(-0.1, 0.25),
                                   cube_radius);
            c.pushable = c.grabbable = true;
            c.visible = true;
            double gx = 0, gy = 0;
            do {
                gx = layout.uniform(-0.3, 0.3);
                gy = layout.uniform(-0.15, 0.35);
            } while (dist(gx, gy, c.x, c.y) < 0.2);
            object goal = make_object(role::goal_region, glyph::region, 0, gx, gy, region_radius);
            goal.solid = false;
            goal.visible = true;
            object start = make_object(role::initial_region, glyph::region, neutral, c.x, c.y, region_radius);
            start.solid = false;
            objs.push_back(c);
            objs.push_back(goal);
            objs.push_back(start);
            break;
        }
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color: {
            const int k = cfg_.candidates;
            objs.push_back(make_object(role::cue, glyph::cube, neutral, cue_x, cue_y, cube_radius));
            const auto cells = pick_cells(k > 9 ? 5 : 3, k, layout);
            layout_attrs_.resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) layout_attrs_[static_cast<std::size_t>(i)] = i;
            layout.shuffle(layout_attrs_);
            for (const auto& c : cells) objs.push_back(make_object(role::candidate, glyph::cube, neutral, c.x, c.y, cube_radius));
            for (int i = 0; i < k; ++i) {
                object& o = objs[static_cast<std::size_t>(1 + i)];
                const int item = layout_attrs_[static_cast<std::size_t>(i)];
                if (cfg_.fam == family::remember_color) o.color = item;
                else if (cfg_.fam == family::remember_shape) o.shape = item;
                else {
                    o.shape = pair_shapes[static_cast<std::size_t>(item / cfg_.colors)];
                    o.color = item % cfg_.colors;
                }
            }
            if (cfg_.fam == family::remember_shape_and_color)
                s_.answer = {hidden.below_int(cfg_.shapes), hidden.below_int(cfg_.colors)};
            else
                s_.answer = {hidden.below_int(k)};
            break;
        }
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors: {
            const int n = cfg_.cues;
            if (cfg_.fam == family::bunch_of_colors) {
                for (const auto& c : pick_cells(3, n, layout))
                    objs.push_back(make_object(role::cue, glyph::cube, neutral, c.x, c.y, cube_radius));
            } else {
                for (int j = 0; j < n; ++j)
                    objs.push_back(make_object(role::cue, glyph::cube, neutral, cue_x, cue_y, cube_radius));
            }
            layout_attrs_.resize(9);
            for (int i = 0; i < 9; ++i) layout_attrs_[static_cast<std::size_t>(i)] = i;
            layout.shuffle(layout_attrs_);
            const auto cells = grid(3);
            for (int i = 0; i < 9; ++i)
                objs.push_back(make_object(role::candidate, glyph::cube, layout_attrs_[static_cast<std::size_t>(i)],
                                           cells[static_cast<std::size_t>(i)].x, cells[static_cast<std::size_t>(i)].y,
                                           cube_radius));
            std::vector<int> colors(9);
            for (int i = 0; i < 9; ++i) colors[static_cast<std::size_t>(i)] = i;
            hidden.shuffle(colors);
            colors.resize(static_cast<std::size_t>(n));
            s_.answer = colors;
            break;
        }
    }
    apply_answer();
    update_visibility();
}

void tabletop_task::retarget(const std::vector<int>& answer) {
    if (answer.size() != s_.answer.size()) throw error(errc::bad_param, "answer arity mismatch");
    s_.answer = answer;
    apply_answer();
    update_visibility();
}

void tabletop_task::apply_answer() {
    auto& objs = s_.objects;
    s_.targets.clear();
    switch (cfg_.fam) {
        case family::shell_game: {
            const int c = s_.answer.at(0);
            objs[0].x = objs[0].x0 = objs[static_cast<std::size_t>(1 + c)].x0;
            objs[0].y = objs[0].y0 = objs[static_cast<std::size_t>(1 + c)].y0;
            s_.targets = {1 + c};
            break;
        }
        case family::intercept:
        case family::intercept_grab:
        case family::rotate_lenient:
        case family::rotate_strict:
        case family::take_it_back: s_.targets = {0}; break;
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color: {
            int item = s_.answer.at(0);
            if (cfg_.fam == family::remember_shape_and_color) item = s_.answer.at(0) * cfg_.colors + s_.answer.at(1);
            object& cue = objs[0];
            if (cfg_.fam == family::remember_color) cue.color = item;
            else if (cfg_.fam == family::remember_shape) cue.shape = item;
            else {
                cue.shape = pair_shapes[static_cast<std::size_t>(s_.answer[0])];
                cue.color = s_.answer[1];
            }
            for (std::size_t i = 0; i < layout_attrs_.size(); ++i)
                if (layout_attrs_[i] == item) s_.targets = {1 + static_cast<int>(i)};
            break;
        }
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors: {
            const int n = cfg_.cues;
            for (int j = 0; j < n; ++j) {
                const int color = s_.answer.at(static_cast<std::size_t>(j));
                objs[static_cast<std::size_t>(j)].color = color;
                for (std::size_t i = 0; i < layout_attrs_.size(); ++i)
                    if (layout_attrs_[i] == color) s_.targets.push_back(n + static_cast<int>(i));
            }
            break;
        }
    }
}

void tabletop_task::update_visibility() {
    const int t = s_.t;
    auto& objs = s_.objects;
    switch (cfg_.fam) {
        case family::shell_game:
            objs[0].visible = t < 5;
            for (std::size_t i = 1; i < objs.size(); ++i) objs[i].visible = t >= 5;
            break;
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color:
            objs[0].visible = t < 5;
            for (std::size_t i = 1; i < objs.size(); ++i) objs[i].visible = t >= 10;
            break;
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors: {
            const int n = cfg_.cues;
            const bool bunch = cfg_.fam == family::bunch_of_colors;
            for (int j = 0; j < n; ++j)
                objs[static_cast<std::size_t>(j)].visible = bunch ? t < 5 : (t >= 5 * j && t < 5 * j + 5);
            const int selection = bunch ? 10 : 5 * n + 5;
            for (std::size_t i = static_cast<std::size_t>(n); i < objs.size(); ++i) objs[i].visible = t >= selection;
            break;
        }
        default: break;
    }
}

void tabletop_task::refresh() {
    update_visibility();
    for (std::size_t i = 0; i < s_.objects.size(); ++i)
        if (!touching(static_cast<int>(i))) s_.objects[i].contact_streak = 0;
}

bool tabletop_task::touching(int index) const noexcept {
    const object& o = s_.objects[static_cast<std::size_t>(index)];
    if (!o.visible || !o.solid) return false;
    return dist(o.x, o.y, s_.gripper.x, s_.gripper.y) <= gripper_radius + o.radius + touch_tolerance;
}

void tabletop_task::push_objects(double dx, double dy) {
    const auto& g = s_.gripper;
    const double moved = std::hypot(dx, dy);
    for (std::size_t i = 0; i < s_.objects.size(); ++i) {
        object& o = s_.objects[i];
        if (!o.visible || !o.solid || !o.pushable || static_cast<int>(i) == g.held) continue;
        const double reach = gripper_radius + o.radius;
        const double wx = o.x - g.x, wy = o.y - g.y;
        const double d2 = wx * wx + wy * wy;
        if (d2 >= reach * reach) continue;
        double ux = 0, uy = 1;
        if (moved > 0) {
            ux = dx / moved;
            uy = dy / moved;
        } else if (d2 > 0) {
            const double d = std::sqrt(d2);
            ux = wx / d;
            uy = wy / d;
        }
        const double b = wx * ux + wy * uy;
        const double shift = -b + std::sqrt(b * b - d2 + reach * reach);
        o.x = clamp_in(o.x + shift * ux, o.radius);
        o.y = clamp_in(o.y + shift * uy, o.radius);
        o.vx = o.vy = 0;
    }
}

void tabletop_task::integrate_ball() {
    if (cfg_.fam != family::intercept && cfg_.fam != family::intercept_grab) return;
    object& b = s_.objects[0];
    if (s_.gripper.held == 0) return;
    const double v = std::hypot(b.vx, b.vy);
    if (v == 0) return;
    const double ux = b.vx / v, uy = b.vy / v;
    const double dv = ball_deceleration * dt;
    double travel = 0, v_next = 0;
    if (v > dv) {
        v_next = v - dv;
        travel = 0.5 * (v + v_next) * dt;
    } else {
        travel = v * v / (2 * ball_deceleration);
    }
    double stop_at = travel;
    bool stopped = v_next == 0;

    const double reach = gripper_radius + b.radius;
    const double wx = b.x - s_.gripper.x, wy = b.y - s_.gripper.y;
    const double bdot = wx * ux + wy * uy;
    const double disc = bdot * bdot - (wx * wx + wy * wy - reach * reach);
    if (disc >= 0) {
        const double s = -bdot - std::sqrt(disc);
        if (s > -1e-9 && s <= stop_at) {
            stop_at = std::max(s, 0.0);
            stopped = true;
        }
    }
    const double lim = workspace_half - b.radius;
    auto wall = [&](double p, double u) {
        if (u > 0) return (lim - p) / u;
        if (u < 0) return (-lim - p) / u;
        return travel + 1;
    };
    const double sw = std::max(0.0, std::min(wall(b.x, ux), wall(b.y, uy)));
    if (sw < stop_at) {
        stop_at = sw;
        stopped = true;
    }
    b.x += stop_at * ux;
    b.y += stop_at * uy;
    if (stopped) {
        b.vx = b.vy = 0;
    } else {
        b.vx = v_next * ux;
        b.vy = v_next * uy;
    }
}

transition tabletop_task::step(std::span<const double> action) {
    auto& g = s_.gripper;
    const double grip = action[3];
    g.grip_rate = (grip - g.grip) / dt;
    g.grip = grip;
    if (g.held >= 0 && grip <= 0.5) g.held = -1;

    const double nx = std::clamp(g.x + action[0], -gripper_limit, gripper_limit);
    const double ny = std::clamp(g.y + action[1], -gripper_limit, gripper_limit);
    const double dx = nx - g.x, dy = ny - g.y;
    g.x = nx;
    g.y = ny;
    g.theta += action[2];
    g.vx = dx / dt;
    g.vy = dy / dt;
    g.omega = action[2] / dt;

    s_.rotated_this_step = false;
    if (g.held >= 0) {
        object& o = s_.objects[static_cast<std::size_t>(g.held)];
        o.x = clamp_in(o.x + dx, o.radius);
        o.y = clamp_in(o.y + dy, o.radius);
        o.vx = o.vy = 0;
        if (action[2] != 0) {
            o.angle += action[2];
            if (o.kind == role::peg) {
                s_.rotation += action[2];
                s_.rotated_this_step = true;
            }
        }
    }

    ++s_.t;
    update_visibility();
    push_objects(dx, dy);
    integrate_ball();

    if (g.held < 0 && grip > 0.5) {
        for (std::size_t i = 0; i < s_.objects.size(); ++i) {
            if (s_.objects[i].grabbable && touching(static_cast<int>(i))) {
                g.held = static_cast<int>(i);
                s_.objects[i].vx = s_.objects[i].vy = 0;
                break;
            }
        }
    }

    update_progress();
    const bool success = !s_.failed && succeeded();
    transition tr;
    tr.success = success;
    tr.terminated = success || s_.failed;
    compute_reward(success);
    tr.reward = s_.failed ? 0.0 : terms_.total();
    if (cfg_.fam == family::take_it_back && !s_.latched) {
        const object& c = s_.objects[0];
        const object& goal = s_.objects[1];
        if (dist(c.x, c.y, goal.x, goal.y) <= region_radius) {
            s_.latched = true;
            s_.objects[1].color = 4;
        }
    }
    return tr;
}

void tabletop_task::update_progress() {
    for (std::size_t i = 0; i < s_.objects.size(); ++i) {
        object& o = s_.objects[i];
        o.contact_streak = touching(static_cast<int>(i)) ? o.contact_streak + 1 : 0;
    }
    if (!is_cue_family(cfg_.fam) || s_.failed) return;
    for (std::size_t i = static_cast<std::size_t>(cfg_.cues); i < s_.objects.size(); ++i) {
        object& o = s_.objects[i];
        if (o.contact_streak != 2) continue;
        const auto it = std::find(s_.targets.begin(), s_.targets.end(), static_cast<int>(i));
        if (it == s_.targets.end()) {
            s_.failed = true;
            return;
        }
        if (o.touched) continue;
        if (cfg_.fam == family::chain_of_colors && s_.targets[static_cast<std::size_t>(s_.touched_count)] != static_cast<int>(i)) {
            s_.failed = true;
            return;
        }
        o.touched = true;
        ++s_.touched_count;
    }
}

bool tabletop_task::succeeded() const noexcept {
    const auto& g = s_.gripper;
    const double gripper_speed = std::hypot(g.vx, g.vy);
    const int target = s_.targets.empty() ? -1 : s_.targets[0];
    switch (cfg_.fam) {
        case family::shell_game: {
            const object& m = s_.objects[static_cast<std::size_t>(target)];
            switch (cfg_.shell) {
                case shell_mode::touch: return touching(target);
                case shell_mode::push: {
                    const double fwd = m.y - m.y0;
                    return fwd >= 0.1 && fwd <= 0.2 && std::abs(m.x - m.x0) <= 0.05;
                }
                case shell_mode::pick: return g.held == target && dist(m.x, m.y, m.x0, m.y0) >= 0.1;
            }
            return false;
        }
        case family::intercept: {
            const object& b = s_.objects[0];
            const object& z = s_.objects[1];
            return g.held != 0 && intercept_success(b.x, b.y, std::hypot(b.vx, b.vy), z.x, z.y);
        }
        case family::intercept_grab: return g.held == 0 && gripper_speed < 0.005;
        case family::rotate_lenient:
        case family::rotate_strict: {
            const object& p = s_.objects[0];
            const bool settled = !s_.rotated_this_step && gripper_speed < 0.005;
            return rotate_success(s_.rotation, s_.target_angle, settled, dist(p.x, p.y, p.x0, p.y0),
                                  cfg_.fam == family::rotate_strict);
        }
        case family::take_it_back: {
            const object& c = s_.objects[0];
            return s_.latched && dist(c.x, c.y, c.x0, c.y0) <= region_radius;
        }
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color:
            return s_.objects[static_cast<std::size_t>(target)].contact_streak >= 2;
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors: return s_.touched_count == cfg_.cues;
    }
    return false;
}

int tabletop_task::current_target() const noexcept {
    if (!is_cue_family(cfg_.fam)) return s_.targets.empty() ? -1 : s_.targets[0];
    if (cfg_.fam == family::chain_of_colors)
        return s_.touched_count < cfg_.cues ? s_.targets[static_cast<std::size_t>(s_.touched_count)] : -1;
    int best = -1;
    double best_d = 1e9;
    for (int i : s_.targets) {
        const object& o = s_.objects[static_cast<std::size_t>(i)];
        if (o.touched) continue;
        const double d = dist(o.x, o.y, s_.gripper.x, s_.gripper.y);
        if (d < best_d) best_d = d, best = i;
    }
    return best;
}

void tabletop_task::compute_reward(bool success) {
    const auto& g = s_.gripper;
    const int target = current_target();
    terms_ = {};
    terms_.reach = 1.0;
    if (target >= 0) {
        const object& o = s_.objects[static_cast<std::size_t>(target)];
        terms_.reach = closeness(dist(g.x, g.y, o.x, o.y));
    }
    bool gate = false;
    switch (cfg_.fam) {
        case family::shell_game: {
            const object& m = s_.objects[static_cast<std::size_t>(target)];
            gate = touching(target);
            if (cfg_.shell == shell_mode::touch) terms_.progress = gate ? 1.0 : 0.0;
            else if (cfg_.shell == shell_mode::push) terms_.progress = std::clamp((m.y - m.y0) / 0.15, 0.0, 1.0);
            else if (g.held == target) terms_.progress = std::min(1.0, dist(m.x, m.y, m.x0, m.y0) / 0.1);
            break;
        }
        case family::intercept: {
            const object& b = s_.objects[0];
            const object& z = s_.objects[1];
            const double d = dist(b.x, b.y, z.x, z.y);
            terms_.progress = closeness(d);
            gate = d <= zone_radius;
            break;
        }
        case family::intercept_grab:
            gate = g.held == 0;
            terms_.progress = gate ? 1.0 : 0.0;
            break;
        case family::rotate_lenient:
        case family::rotate_strict: {
            const object& p = s_.objects[0];
            const double err = std::abs(s_.rotation - s_.target_angle);
            terms_.progress = closeness(err);
            if (cfg_.fam == family::rotate_strict) terms_.progress *= closeness(dist(p.x, p.y, p.x0, p.y0), 10.0);
            gate = err <= 0.1;
            break;
        }
        case family::take_it_back: {
            const object& c = s_.objects[0];
            const object& region = s_.objects[s_.latched ? 2 : 1];
            const double d = dist(c.x, c.y, region.x, region.y);
            terms_.progress = s_.latched ? 0.5 + 0.5 * closeness(d) : 0.5 * closeness(d);
            gate = d <= region_radius;
            break;
        }
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color:
            gate = touching(target);
            terms_.progress = gate ? 1.0 : 0.0;
            break;
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors:
            terms_.progress = static_cast<double>(s_.touched_count) / cfg_.cues;
            gate = target >= 0 && touching(target);
            break;
    }
    if (gate) terms_.stillness = closeness(std::hypot(g.vx, g.vy), 10.0);
    if (success) terms_.bonus = 5.0;
}

phase_id tabletop_task::phase() const { return phase_of(cfg_, std::min(s_.t, cfg_.timeout - 1)); }

std::vector<float> tabletop_task::oracle_info() const {
    std::vector<float> out(static_cast<std::size_t>(layout_size(oracle_layout(cfg_))), 0.0f);
    switch (cfg_.fam) {
        case family::shell_game:
        case family::remember_color:
        case family::remember_shape: out[static_cast<std::size_t>(s_.answer[0])] = 1.0f; break;
        case family::remember_shape_and_color:
            out[static_cast<std::size_t>(s_.answer[0])] = 1.0f;
            out[static_cast<std::size_t>(cfg_.shapes + s_.answer[1])] = 1.0f;
            break;
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors:
            for (std::size_t j = 0; j < s_.answer.size(); ++j) out[j * 9 + static_cast<std::size_t>(s_.answer[j])] = 1.0f;
            break;
        case family::intercept:
        case family::intercept_grab:
            out[0] = static_cast<float>(s_.ball_v0x);
            out[1] = static_cast<float>(s_.ball_v0y);
            break;
        case family::rotate_lenient:
        case family::rotate_strict: out[0] = static_cast<float>(s_.rotation); break;
        case family::take_it_back:
            out[0] = static_cast<float>(s_.objects[0].x0);
            out[1] = static_cast<float>(s_.objects[0].y0);
            break;
    }
    return out;
}

std::vector<float> tabletop_task::prompt() const {
    if (is_rotate(cfg_.fam)) return {static_cast<float>(s_.target_angle)};
    return {};
}

void tabletop_task::observe(observation_mode mode, std::vector<float>& out) const {
    out.clear();
    const auto& g = s_.gripper;
    for (double v : {g.x, g.y, g.theta, g.grip, g.vx, g.vy, g.omega, g.grip_rate}) out.push_back(static_cast<float>(v));
    if (mode != observation_mode::rgb) {
        const bool full = mode == observation_mode::state;
        for (const object& o : s_.objects) {
            const std::size_t base = out.size();
            out.resize(base + object_feature_size, 0.0f);
            if (!full && !o.visible) continue;
            float* f = out.data() + base;
            f[0] = o.visible ? 1.0f : 0.0f;
            f[1] = static_cast<float>(o.x);
            f[2] = static_cast<float>(o.y);
            f[3] = static_cast<float>(std::cos(o.angle));
            f[4] = static_cast<float>(std::sin(o.angle));
            if (full) {
                f[5] = static_cast<float>(o.vx);
                f[6] = static_cast<float>(o.vy);
            }
            f[7] = static_cast<float>(o.radius);
            f[8 + o.color] = 1.0f;
            f[8 + num_colors + o.shape] = 1.0f;
        }
        if (full) {
            const auto oracle = oracle_info();
            out.insert(out.end(), oracle.begin(), oracle.end());
        }
    }
    if (is_rotate(cfg_.fam)) out.push_back(static_cast<float>(s_.target_angle));
}

}  // namespace memsuite::tabletop
