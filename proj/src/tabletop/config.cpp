#include <cmath>

#include "memsuite/core/error.hpp"
#include "memsuite/tabletop/task.hpp"

namespace memsuite::tabletop {

namespace {

[[noreturn]] void bad_mode(const std::string& group, const std::string& mode) {
    throw error(errc::invalid_mode, "mode '" + mode + "' not valid for " + group);
}

int count_mode(const std::string& group, const std::string& mode, std::initializer_list<int> allowed) {
    for (int n : allowed)
        if (mode == std::to_string(n)) return n;
    bad_mode(group, mode);
}

bool cue_family(family f) {
    return f == family::bunch_of_colors || f == family::seq_of_colors || f == family::chain_of_colors;
}

bool remember_family(family f) {
    return f == family::remember_color || f == family::remember_shape || f == family::remember_shape_and_color;
}

}  // namespace

mode_config make_mode_config(const std::string& group, const std::string& mode) {
    mode_config c;
    c.group = group;
    c.mode = mode;
    if (group == "ShellGame") {
        c.fam = family::shell_game;
        c.timeout = 90;
        if (mode == "Touch") c.shell = shell_mode::touch;
        else if (mode == "Push") c.shell = shell_mode::push;
        else if (mode == "Pick") c.shell = shell_mode::pick;
        else bad_mode(group, mode);
    } else if (group == "Intercept" || group == "InterceptGrab") {
        c.fam = group == "Intercept" ? family::intercept : family::intercept_grab;
        c.timeout = 90;
        if (mode == "Slow") c.speed_lo = 0.25, c.speed_hi = 0.5;
        else if (mode == "Medium") c.speed_lo = 0.5, c.speed_hi = 0.75;
        else if (mode == "Fast") c.speed_lo = 0.75, c.speed_hi = 1.0;
        else bad_mode(group, mode);
    } else if (group == "RotateLenient" || group == "RotateStrict") {
        c.fam = group == "RotateLenient" ? family::rotate_lenient : family::rotate_strict;
        c.timeout = 90;
        if (mode == "Pos") c.pos_neg = false;
        else if (mode == "PosNeg") c.pos_neg = true;
        else bad_mode(group, mode);
    } else if (group == "TakeItBack") {
        c.fam = family::take_it_back;
        c.timeout = 180;
        if (mode != "default") bad_mode(group, mode);
    } else if (group == "RememberColor" || group == "RememberShape") {
        c.fam = group == "RememberColor" ? family::remember_color : family::remember_shape;
        c.timeout = 60;
        c.candidates = count_mode(group, mode, {3, 5, 9});
    } else if (group == "RememberShapeAndColor") {
        c.fam = family::remember_shape_and_color;
        c.timeout = 60;
        if (mode == "3x2") c.shapes = 3, c.colors = 2;
        else if (mode == "3x3") c.shapes = 3, c.colors = 3;
        else if (mode == "5x3") c.shapes = 5, c.colors = 3;
        else bad_mode(group, mode);
        c.candidates = c.shapes * c.colors;
    } else if (group == "BunchOfColors" || group == "SeqOfColors" || group == "ChainOfColors") {
        c.fam = group == "BunchOfColors" ? family::bunch_of_colors
                : group == "SeqOfColors" ? family::seq_of_colors
                                         : family::chain_of_colors;
        c.timeout = 120;
        c.cues = count_mode(group, mode, {3, 5, 7});
        c.candidates = 9;
    } else {
        throw error(errc::unknown_task, "unknown tabletop group " + group);
    }
    return c;
}

phase_id phase_of(const mode_config& cfg, int t) {
    if (t < 0 || t >= cfg.timeout)
        throw error(errc::out_of_episode,
                    "step " + std::to_string(t) + " outside [0, " + std::to_string(cfg.timeout) + ")");
    switch (cfg.fam) {
        case family::shell_game:
            if (t < 5) return phase_id::observation;
            if (t == 5) return phase_id::delay;
            return phase_id::action;
        case family::seq_of_colors:
        case family::chain_of_colors: {
            const int n = cfg.cues;
            if (t < 5 * n) return phase_id::observation;
            if (t < 5 * n + 5) return phase_id::delay;
            return phase_id::selection;
        }
        case family::bunch_of_colors:
        case family::remember_color:
        case family::remember_shape:
        case family::remember_shape_and_color:
            if (t < 5) return phase_id::observation;
            if (t < 10) return phase_id::delay;
            return phase_id::selection;
        default: return phase_id::action;
    }
}

vector_layout oracle_layout(const mode_config& cfg) {
    switch (cfg.fam) {
        case family::shell_game: return {{"cup_with_ball_number", 3}};
        case family::intercept:
        case family::intercept_grab: return {{"initial_velocity", 2}};
        case family::rotate_lenient:
        case family::rotate_strict: return {{"y_angle_diff", 1}};
        case family::take_it_back: return {{"xy_initial", 2}};
        case family::remember_color: return {{"true_color_indices", cfg.candidates}};
        case family::remember_shape: return {{"true_shape_indices", cfg.candidates}};
        case family::remember_shape_and_color: return {{"true_shapes_info", cfg.shapes}, {"true_colors_info", cfg.colors}};
        case family::bunch_of_colors:
        case family::seq_of_colors:
        case family::chain_of_colors: return {{"true_color_indices", cfg.cues * 9}};
    }
    return {};
}

vector_layout prompt_layout(const mode_config& cfg) {
    if (cfg.fam == family::rotate_lenient || cfg.fam == family::rotate_strict) return {{"target_angle", 1}};
    return {};
}

int slot_count(const mode_config& cfg) {
    switch (cfg.fam) {
        case family::shell_game: return 4;
        case family::intercept: return 2;
        case family::intercept_grab: return 1;
        case family::rotate_lenient:
        case family::rotate_strict: return 1;
        case family::take_it_back: return 3;
        default: break;
    }
    if (remember_family(cfg.fam)) return 1 + cfg.candidates;
    if (cue_family(cfg.fam)) return cfg.cues + cfg.candidates;
    return 0;
}

bool rotate_success(double rotation, double target, bool settled, double deviation, bool strict) noexcept {
    if (!settled || std::abs(rotation - target) > 0.1) return false;
    return !strict || deviation <= 0.05;
}

bool intercept_success(double ball_x, double ball_y, double speed, double zone_x, double zone_y) noexcept {
    return speed == 0.0 && std::hypot(ball_x - zone_x, ball_y - zone_y) <= zone_radius;
}

}  // namespace memsuite::tabletop
