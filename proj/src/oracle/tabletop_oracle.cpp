#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "memsuite/core/error.hpp"
#include "memsuite/oracle/oracle.hpp"

namespace memsuite::oracle {

namespace {

using namespace tabletop;

constexpr double gain = 0.8;
constexpr double lattice = 0.01;
constexpr int lattice_n = 97;  // covers [-0.48, 0.48]
constexpr double lattice_origin = -0.48;

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

/// Proportional step toward (tx, ty), scaled so both components fit the action box.
std::array<double, 2> steer(const gripper_state& g, double tx, double ty) {
    double dx = gain * (tx - g.x), dy = gain * (ty - g.y);
    const double m = std::max(std::abs(dx), std::abs(dy));
    if (m > max_step) {
        dx *= max_step / m;
        dy *= max_step / m;
    }
    if (std::hypot(dx, dy) < 1e-5) dx = dy = 0;
    return {dx, dy};
}

action4 move(const gripper_state& g, double tx, double ty, double grip) {
    const auto d = steer(g, tx, ty);
    return {d[0], d[1], 0.0, grip};
}

/// Point at distance `gap` from the object's centre on the side facing (fx, fy).
std::array<double, 2> standoff(const object& o, double fx, double fy, double gap) {
    const double d = dist(o.x, o.y, fx, fy);
    const double ux = d > 0 ? (fx - o.x) / d : 0.0, uy = d > 0 ? (fy - o.y) / d : -1.0;
    return {o.x + ux * gap, o.y + uy * gap};
}

bool is_cue_family(family f) {
    return f == family::bunch_of_colors || f == family::seq_of_colors || f == family::chain_of_colors;
}

}  // namespace

void tabletop_oracle::reset() {
    stage_ = 0;
    aim_x_ = aim_y_ = 0;
    plan_target_ = -1;
    path_.clear();
    path_pos_ = 0;
}

const tabletop_task& tabletop_view(const environment& env) {
    const auto* t = dynamic_cast<const tabletop_task*>(&env.impl());
    if (!t) throw error(errc::oracle_unavailable, "no scripted oracle for " + env.specs().meta.task_id);
    return *t;
}

std::vector<std::array<double, 2>> predict_ball(const object& ball, int steps) {
    std::vector<std::array<double, 2>> out;
    double x = ball.x, y = ball.y, v = std::hypot(ball.vx, ball.vy);
    const double ux = v > 0 ? ball.vx / v : 0.0, uy = v > 0 ? ball.vy / v : 0.0;
    const double lim = workspace_half - ball.radius;
    for (int k = 0; k < steps; ++k) {
        double travel = 0;
        if (v > ball_deceleration * dt) {
            travel = (v - 0.5 * ball_deceleration * dt) * dt;
            v -= ball_deceleration * dt;
        } else {
            travel = v * v / (2 * ball_deceleration);
            v = 0;
        }
        double nx = x + travel * ux, ny = y + travel * uy;
        if (std::abs(nx) > lim || std::abs(ny) > lim) {
            double s = travel;
            if (ux > 0) s = std::min(s, (lim - x) / ux);
            if (ux < 0) s = std::min(s, (-lim - x) / ux);
            if (uy > 0) s = std::min(s, (lim - y) / uy);
            if (uy < 0) s = std::min(s, (-lim - y) / uy);
            nx = x + s * ux;
            ny = y + s * uy;
            v = 0;
        }
        x = nx;
        y = ny;
        out.push_back({x, y});
    }
    return out;
}

std::vector<std::array<double, 2>> plan_path(double sx, double sy, double gx, double gy,
                                             const std::vector<std::array<double, 3>>& obstacles) {
    auto index_of = [](double v) {
        return std::clamp(static_cast<int>(std::lround((v - lattice_origin) / lattice)), 0, lattice_n - 1);
    };
    auto coord = [](int i) { return lattice_origin + i * lattice; };
    std::vector<char> blocked(lattice_n * lattice_n, 0);
    for (int i = 0; i < lattice_n; ++i)
        for (int j = 0; j < lattice_n; ++j)
            for (const auto& o : obstacles)
                if (dist(coord(i), coord(j), o[0], o[1]) < o[2]) {
                    blocked[static_cast<std::size_t>(i * lattice_n + j)] = 1;
                    break;
                }
    const int si = index_of(sx), sj = index_of(sy), gi = index_of(gx), gj = index_of(gy);
    const int start = si * lattice_n + sj, goal = gi * lattice_n + gj;
    blocked[static_cast<std::size_t>(start)] = 0;
    blocked[static_cast<std::size_t>(goal)] = 0;

    std::vector<double> cost(blocked.size(), std::numeric_limits<double>::infinity());
    std::vector<int> parent(blocked.size(), -1);
    using entry = std::pair<double, int>;
    std::priority_queue<entry, std::vector<entry>, std::greater<>> open;
    auto heuristic = [&](int n) {
        const int di = std::abs(n / lattice_n - gi), dj = std::abs(n % lattice_n - gj);
        return static_cast<double>(std::max(di, dj)) + (std::sqrt(2.0) - 1.0) * std::min(di, dj);
    };
    cost[static_cast<std::size_t>(start)] = 0;
    open.push({heuristic(start), start});
    while (!open.empty()) {
        const auto [f, n] = open.top();
        open.pop();
        if (n == goal) break;
        if (f - heuristic(n) > cost[static_cast<std::size_t>(n)] + 1e-9) continue;
        const int i = n / lattice_n, j = n % lattice_n;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if (!di && !dj) continue;
                const int ni = i + di, nj = j + dj;
                if (ni < 0 || nj < 0 || ni >= lattice_n || nj >= lattice_n) continue;
                const int m = ni * lattice_n + nj;
                if (blocked[static_cast<std::size_t>(m)]) continue;
                const double c = cost[static_cast<std::size_t>(n)] + ((di && dj) ? std::sqrt(2.0) : 1.0);
                if (c < cost[static_cast<std::size_t>(m)]) {
                    cost[static_cast<std::size_t>(m)] = c;
                    parent[static_cast<std::size_t>(m)] = n;
                    open.push({c + heuristic(m), m});
                }
            }
    }
    if (start != goal && parent[static_cast<std::size_t>(goal)] < 0) return {};
    std::vector<std::array<double, 2>> out;
    for (int n = goal; n != start; n = parent[static_cast<std::size_t>(n)])
        out.push_back({coord(n / lattice_n), coord(n % lattice_n)});
    std::reverse(out.begin(), out.end());
    if (!out.empty()) out.back() = {gx, gy};
    else out.push_back({gx, gy});
    return out;
}

action4 tabletop_oracle::act(const tabletop_task& task) {
    switch (task.config().fam) {
        case family::shell_game: return shell_game(task);
        case family::intercept:
        case family::intercept_grab: return intercept(task);
        case family::rotate_lenient:
        case family::rotate_strict: return rotate(task);
        case family::take_it_back: return take_it_back(task);
        default: return select(task);
    }
}

action4 tabletop_oracle::shell_game(const tabletop_task& task) {
    const scene& s = task.state();
    const auto& g = s.gripper;
    const object& m = s.objects[static_cast<std::size_t>(s.targets[0])];
    const double below = m.y0 - mug_radius - gripper_radius;
    switch (task.config().shell) {
        case shell_mode::touch:
            if (s.t < 6) return move(g, m.x0, below - 0.02, 0.0);
            return move(g, m.x, m.y, 0.0);
        case shell_mode::push:
            if (stage_ == 0) {
                if (s.t >= 6 && dist(g.x, g.y, m.x0, below - 0.005) < 0.002) stage_ = 1;
                return move(g, m.x0, below - 0.005, 0.0);
            }
            return move(g, m.x0, below + 0.15, 0.0);
        case shell_mode::pick:
            if (g.held != s.targets[0]) return move(g, m.x0, below - 0.001, 1.0);
            return move(g, m.x0, below - 0.15, 1.0);
    }
    return {0, 0, 0, 0};
}

action4 tabletop_oracle::intercept(const tabletop_task& task) {
    const scene& s = task.state();
    const auto& g = s.gripper;
    const object& b = s.objects[0];
    const bool grab = task.config().fam == family::intercept_grab;
    const double grip = grab ? 1.0 : 0.0;
    const double reach = gripper_radius + ball_radius;
    const double speed = std::hypot(b.vx, b.vy);

    if (grab && g.held == 0) return {0, 0, 0, 1.0};
    if (speed > 0) {
        if (stage_ == 0) {
            // Earliest predicted ball position the gripper reaches with a few steps to spare.
            const auto path = predict_ball(b, 200);
            for (std::size_t k = 0; k < path.size(); ++k) {
                const double cheb = std::max(std::abs(path[k][0] - g.x), std::abs(path[k][1] - g.y));
                if (std::ceil(cheb / max_step) + 4 <= static_cast<double>(k + 1)) {
                    aim_x_ = path[k][0];
                    aim_y_ = path[k][1];
                    stage_ = 1;
                    break;
                }
            }
            if (stage_ == 0) {
                aim_x_ = path.back()[0];
                aim_y_ = path.back()[1];
            }
        }
        const auto d = steer(g, aim_x_, aim_y_);
        const double m = std::max(std::abs(aim_x_ - g.x), std::abs(aim_y_ - g.y));
        // Full speed until close; the proportional tail is too slow to beat the ball.
        if (m > 1e-9 && m <= max_step) return {aim_x_ - g.x, aim_y_ - g.y, 0.0, grip};
        return {d[0], d[1], 0.0, grip};
    }
    if (grab) return move(g, b.x, b.y, 1.0);

    const object& zone = s.objects[1];
    const double zd = dist(b.x, b.y, zone.x, zone.y);
    const double ux = (zone.x - b.x) / zd, uy = (zone.y - b.y) / zd;
    const double bx = b.x - ux * (reach + 0.01), by = b.y - uy * (reach + 0.01);
    const double lateral = std::abs(-(g.x - b.x) * uy + (g.y - b.y) * ux);
    const double along = (g.x - b.x) * ux + (g.y - b.y) * uy;
    if (stage_ != 3) {
        if (dist(g.x, g.y, bx, by) < 0.003) {
            stage_ = 3;
        } else {
            const double gap = dist(g.x, g.y, b.x, b.y);
            if (gap < reach + 0.009) {
                // Back off first: the lattice start must lie outside the inflated ball.
                const double k = 0.02 / std::max(gap, 1e-9);
                plan_target_ = -1;
                return {(g.x - b.x) * k, (g.y - b.y) * k, 0.0, 0.0};
            }
            if (plan_target_ != 0 || path_.empty()) {
                path_ = plan_path(g.x, g.y, bx, by, {{b.x, b.y, reach + 0.008}});
                path_pos_ = 0;
                plan_target_ = 0;
            }
            while (path_pos_ + 1 < path_.size() &&
                   std::max(std::abs(path_[path_pos_ + 1][0] - g.x), std::abs(path_[path_pos_ + 1][1] - g.y)) <=
                       max_step)
                ++path_pos_;
            if (path_pos_ + 1 >= path_.size()) return move(g, bx, by, 0.0);
            return {path_[path_pos_][0] - g.x, path_[path_pos_][1] - g.y, 0.0, 0.0};
        }
    }
    if (lateral > 0.01 || along > 0) {
        stage_ = 2;
        plan_target_ = -1;
        return {0, 0, 0, 0};
    }
    const double step = std::min(0.03, zd + 0.01);
    return {ux * step, uy * step, 0.0, 0.0};
}

action4 tabletop_oracle::rotate(const tabletop_task& task) {
    const scene& s = task.state();
    const auto& g = s.gripper;
    const object& p = s.objects[0];
    if (g.held != 0) {
        if (stage_ == 0) {
            const auto a = standoff(p, g.x, g.y, gripper_radius + peg_radius + 0.001);
            aim_x_ = a[0];
            aim_y_ = a[1];
            stage_ = 1;
        }
        return move(g, aim_x_, aim_y_, 1.0);
    }
    const double err = s.target_angle - s.rotation;
    const double turn = std::abs(err) < 1e-6 ? 0.0 : std::clamp(err, -max_turn, max_turn);
    return {0.0, 0.0, turn, 1.0};
}

action4 tabletop_oracle::take_it_back(const tabletop_task& task) {
    const scene& s = task.state();
    const auto& g = s.gripper;
    const object& c = s.objects[0];
    if (g.held != 0) {
        if (stage_ == 0) {
            const auto a = standoff(c, g.x, g.y, gripper_radius + cube_radius + 0.001);
            aim_x_ = a[0];
            aim_y_ = a[1];
            stage_ = 1;
        }
        return move(g, aim_x_, aim_y_, 1.0);
    }
    const object& region = s.objects[s.latched ? 2 : 1];
    return move(g, g.x + (region.x - c.x), g.y + (region.y - c.y), 1.0);
}

action4 tabletop_oracle::select(const tabletop_task& task) {
    const scene& s = task.state();
    const auto& g = s.gripper;
    const auto& cfg = task.config();

    if (!is_cue_family(cfg.fam)) {
        const object& o = s.objects[static_cast<std::size_t>(s.targets[0])];
        return move(g, o.x, o.y, 0.0);
    }

    // Next cue: cue order for Chain, nearest untouched otherwise.
    int next = -1;
    if (cfg.fam == family::chain_of_colors) {
        next = s.targets[static_cast<std::size_t>(s.touched_count)];
    } else if (plan_target_ >= 0 && !s.objects[static_cast<std::size_t>(plan_target_)].touched) {
        next = plan_target_;
    } else {
        double best = 1e9;
        for (int i : s.targets) {
            const object& o = s.objects[static_cast<std::size_t>(i)];
            const double d = dist(o.x, o.y, g.x, g.y);
            if (!o.touched && d < best) best = d, next = i;
        }
    }
    const object& target = s.objects[static_cast<std::size_t>(next)];

    if (plan_target_ != next) {
        std::vector<std::array<double, 3>> obstacles;
        const double clearance = gripper_radius + cube_radius + touch_tolerance + 0.006;
        for (std::size_t i = static_cast<std::size_t>(cfg.cues); i < s.objects.size(); ++i) {
            const object& o = s.objects[i];
            if (static_cast<int>(i) == next || o.touched) continue;
            obstacles.push_back({o.x, o.y, clearance});
        }
        path_ = plan_path(g.x, g.y, target.x, target.y, obstacles);
        path_pos_ = 0;
        plan_target_ = next;
    }
    while (path_pos_ + 1 < path_.size() &&
           std::max(std::abs(path_[path_pos_ + 1][0] - g.x), std::abs(path_[path_pos_ + 1][1] - g.y)) <= max_step)
        ++path_pos_;
    if (path_.empty() || path_pos_ + 1 >= path_.size()) return move(g, target.x, target.y, 0.0);
    return {path_[path_pos_][0] - g.x, path_[path_pos_][1] - g.y, 0.0, 0.0};
}

}  // namespace memsuite::oracle
