#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "memsuite/core/environment.hpp"
#include "memsuite/tabletop/scene.hpp"

namespace memsuite::tabletop {

inline constexpr int proprio_size = 8;
/// vis, x, y, cos, sin, vx, vy, radius, colour one-hot, glyph one-hot.
inline constexpr int object_feature_size = 8 + num_colors + num_glyphs;
inline constexpr int raster_side = 128;
inline constexpr int raster_channels = 6;
inline constexpr double gripper_view_half = 0.15;

phase_id phase_of(const mode_config& cfg, int t);
vector_layout oracle_layout(const mode_config& cfg);
vector_layout prompt_layout(const mode_config& cfg);
int slot_count(const mode_config& cfg);

/// Success predicates, exposed for boundary tests.
bool rotate_success(double rotation, double target, bool settled, double deviation, bool strict) noexcept;
bool intercept_success(double ball_x, double ball_y, double speed, double zone_x, double zone_y) noexcept;

struct reward_terms {
    double reach = 0, progress = 0, stillness = 0, bonus = 0;

    [[nodiscard]] double total() const noexcept { return reach + progress + stillness + bonus; }
};

class tabletop_task final : public task {
public:
    explicit tabletop_task(mode_config cfg) : cfg_(std::move(cfg)) {}

    [[nodiscard]] std::unique_ptr<task> clone() const override { return std::make_unique<tabletop_task>(*this); }
    [[nodiscard]] space_spec action_space() const override;
    [[nodiscard]] space_spec observation_space(observation_mode mode) const override;
    [[nodiscard]] bool supports_raster() const override { return true; }

    void reset(std::uint64_t seed) override;
    transition step(std::span<const double> action) override;
    void observe(observation_mode mode, std::vector<float>& out) const override;
    void render(std::span<std::uint8_t> out) const override;

    [[nodiscard]] phase_id phase() const override;
    [[nodiscard]] std::vector<float> oracle_info() const override;
    [[nodiscard]] std::vector<float> prompt() const override;

    [[nodiscard]] const mode_config& config() const noexcept { return cfg_; }
    [[nodiscard]] const scene& state() const noexcept { return s_; }
    /// Mutable access for tests; call `refresh` after editing.
    [[nodiscard]] scene& state() noexcept { return s_; }
    void refresh();

    /// Replaces the hidden answer while keeping the layout (answer as in `scene::answer`).
    void retarget(const std::vector<int>& answer);

    [[nodiscard]] bool touching(int index) const noexcept;
    [[nodiscard]] int current_target() const noexcept;
    [[nodiscard]] const reward_terms& last_reward() const noexcept { return terms_; }
    [[nodiscard]] bool succeeded() const noexcept;

private:
    void apply_answer();
    void update_visibility();
    void push_objects(double dx, double dy);
    void integrate_ball();
    void update_progress();
    void compute_reward(bool success);

    mode_config cfg_;
    scene s_;
    std::vector<int> layout_attrs_;  // candidate slot -> attribute item
    reward_terms terms_;
};

}  // namespace memsuite::tabletop
