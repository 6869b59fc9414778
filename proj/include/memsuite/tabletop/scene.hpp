#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace memsuite::tabletop {

// Geometry in metres, time in seconds.
inline constexpr double workspace_half = 0.5;
inline constexpr double dt = 0.05;
inline constexpr double gripper_radius = 0.02;
inline constexpr double cube_radius = 0.03;
inline constexpr double mug_radius = 0.05;
inline constexpr double ball_radius = 0.03;
inline constexpr double peg_radius = 0.04;
inline constexpr double zone_radius = 0.1;
inline constexpr double region_radius = 0.05;
inline constexpr double touch_tolerance = 0.002;
inline constexpr double ball_deceleration = 0.05;
inline constexpr double max_step = 0.05;
inline constexpr double max_turn = 0.1;
inline constexpr double start_x = 0.0;
inline constexpr double start_y = -0.35;

/// Palette order; index 9 is the neutral grey used for mugs and uncoloured shapes.
inline constexpr std::array<std::string_view, 10> color_names{"red",     "lime",    "blue",   "yellow", "magenta",
                                                              "cyan",    "maroon",  "olive",  "teal",   "grey"};
inline constexpr std::array<std::array<std::uint8_t, 3>, 10> color_rgb{{{255, 0, 0},
                                                                        {0, 255, 0},
                                                                        {0, 0, 255},
                                                                        {255, 255, 0},
                                                                        {255, 0, 255},
                                                                        {0, 255, 255},
                                                                        {128, 0, 0},
                                                                        {128, 128, 0},
                                                                        {0, 128, 128},
                                                                        {200, 200, 200}}};
inline constexpr int num_colors = 10;
inline constexpr int neutral = 9;

enum glyph : int {
    cube,
    sphere,
    cylinder,
    cross,
    torus,
    star,
    pyramid,
    t_shape,
    crescent,
    mug,
    peg,
    region,
};
inline constexpr int num_glyphs = 12;
inline constexpr std::array<std::string_view, num_glyphs> glyph_names{
    "cube", "sphere", "cylinder", "cross", "torus", "star", "pyramid", "t-shape", "crescent", "mug", "peg", "region"};

enum class family {
    shell_game,
    intercept,
    intercept_grab,
    rotate_lenient,
    rotate_strict,
    take_it_back,
    remember_color,
    remember_shape,
    remember_shape_and_color,
    bunch_of_colors,
    seq_of_colors,
    chain_of_colors,
};

enum class shell_mode { touch, push, pick };

/// Everything a (group, mode) pair fixes before seeding.
struct mode_config {
    family fam = family::shell_game;
    std::string group;
    std::string mode;
    shell_mode shell = shell_mode::touch;
    double speed_lo = 0, speed_hi = 0;  // Intercept*
    bool pos_neg = false;               // Rotate*
    int candidates = 0;                 // Remember*, Bunch/Seq/Chain
    int shapes = 0, colors = 0;         // RememberShapeAndColor
    int cues = 0;                       // Bunch/Seq/Chain
    int timeout = 0;
};

/// Resolves a mode of a tabletop group; throws invalid_mode.
mode_config make_mode_config(const std::string& group, const std::string& mode);

enum class role : std::uint8_t { cue, candidate, mug, ball, zone, peg, cube, goal_region, initial_region };

struct object {
    role kind = role::candidate;
    int shape = glyph::cube;
    int color = neutral;
    double x = 0, y = 0, angle = 0, radius = cube_radius;
    double vx = 0, vy = 0;
    double x0 = 0, y0 = 0;  // rest position at reset
    bool visible = false;
    bool solid = true;  // false for table regions
    bool pushable = false;
    bool grabbable = false;
    int contact_streak = 0;
    bool touched = false;
};

struct gripper_state {
    double x = start_x, y = start_y, theta = 0, grip = 0;
    double vx = 0, vy = 0, omega = 0, grip_rate = 0;
    int held = -1;
};

struct scene {
    gripper_state gripper;
    std::vector<object> objects;
    int t = 0;
    /// Object indices the agent must act on, in cue order.
    std::vector<int> targets;
    /// Hidden answer in oracle-info terms: cup number, palette-relative colour or
    /// shape indices in cue order, or (shape, colour) for RememberShapeAndColor.
    std::vector<int> answer;
    int touched_count = 0;
    bool failed = false;
    bool latched = false;  // TakeItBack goal reached
    double rotation = 0;   // accumulated rotation applied to the peg
    double target_angle = 0;
    double ball_v0x = 0, ball_v0y = 0;
    bool rotated_this_step = false;
};

}  // namespace memsuite::tabletop
