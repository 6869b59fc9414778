#pragma once

#include <array>
#include <memory>
#include <vector>

#include "memsuite/core/environment.hpp"
#include "memsuite/tabletop/task.hpp"

namespace memsuite::oracle {

using action4 = std::array<double, 4>;

/// Scripted full-state controller for one tabletop task. Reads the hidden
/// scene directly; never consults observations.
class tabletop_oracle {
public:
    tabletop_oracle() = default;

    /// Call at every episode start.
    void reset();
    action4 act(const tabletop::tabletop_task& task);

private:
    action4 shell_game(const tabletop::tabletop_task& task);
    action4 intercept(const tabletop::tabletop_task& task);
    action4 rotate(const tabletop::tabletop_task& task);
    action4 take_it_back(const tabletop::tabletop_task& task);
    action4 select(const tabletop::tabletop_task& task);

    int stage_ = 0;
    double aim_x_ = 0, aim_y_ = 0;
    int plan_target_ = -1;
    std::vector<std::array<double, 2>> path_;
    std::size_t path_pos_ = 0;
};

/// The tabletop task behind an environment; throws oracle_unavailable otherwise.
const tabletop::tabletop_task& tabletop_view(const environment& env);

/// Free-flight ball positions after 1..steps steps (no gripper contact).
std::vector<std::array<double, 2>> predict_ball(const tabletop::object& ball, int steps);

/// 8-connected shortest path on a 0.01 m lattice avoiding discs (x, y, r).
/// Returns waypoints from start to goal, or an empty list when unreachable.
std::vector<std::array<double, 2>> plan_path(double sx, double sy, double gx, double gy,
                                             const std::vector<std::array<double, 3>>& obstacles);

}  // namespace memsuite::oracle
