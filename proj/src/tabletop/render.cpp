#include <cmath>

#include "memsuite/tabletop/task.hpp"

namespace memsuite::tabletop {

namespace {

constexpr std::array<std::uint8_t, 3> table_rgb{48, 48, 48};
constexpr std::array<std::uint8_t, 3> gripper_rgb{255, 255, 255};

/// Fill factor of a glyph at local coordinates scaled by the object radius; 0 = outside.
double glyph_shade(int shape, double u, double v) {
    const double r2 = u * u + v * v;
    switch (shape) {
        case glyph::cube: return (std::abs(u) <= 0.8 && std::abs(v) <= 0.8) ? 1.0 : 0.0;
        case glyph::sphere: return r2 <= 1.0 ? 1.0 - 0.35 * r2 : 0.0;
        case glyph::cylinder: return r2 <= 1.0 ? (r2 > 0.36 ? 1.0 : 0.6) : 0.0;
        case glyph::cross:
            return ((std::abs(u) <= 0.3 && std::abs(v) <= 0.9) || (std::abs(v) <= 0.3 && std::abs(u) <= 0.9)) ? 1.0
                                                                                                              : 0.0;
        case glyph::torus: return (r2 <= 1.0 && r2 >= 0.25) ? 1.0 : 0.0;
        case glyph::star: {
            if (r2 > 1.0) return 0.0;
            const double a = std::atan2(v, u);
            const double edge = 0.45 + 0.55 * 0.5 * (1.0 + std::cos(5.0 * a));
            return r2 <= edge * edge ? 1.0 : 0.0;
        }
        case glyph::pyramid: return (v >= -0.8 && v <= 0.9 && std::abs(u) <= 0.55 * (0.9 - v)) ? 1.0 : 0.0;
        case glyph::t_shape:
            return ((v >= 0.4 && v <= 0.9 && std::abs(u) <= 0.9) || (std::abs(u) <= 0.3 && std::abs(v) <= 0.9)) ? 1.0
                                                                                                              : 0.0;
        case glyph::crescent:
            return (r2 <= 1.0 && (u - 0.45) * (u - 0.45) + v * v > 0.5625) ? 1.0 : 0.0;
        case glyph::mug: return r2 <= 1.0 ? (r2 > 0.64 ? 1.0 : 0.75) : 0.0;
        case glyph::peg: return (std::abs(u) <= 1.0 && std::abs(v) <= 0.3) ? 1.0 : 0.0;
        case glyph::region: return r2 <= 1.0 ? 0.5 : 0.0;
        default: return 0.0;
    }
}

struct view {
    double left, top, scale;  // world x of column 0 edge, world y of row 0 edge, pixels per metre
    std::uint8_t* out;
    int channel;

    std::uint8_t* px(int r, int c) const { return out + (static_cast<std::ptrdiff_t>(r) * raster_side + c) * raster_channels + channel; }
    double wx(int c) const { return left + (c + 0.5) / scale; }
    double wy(int r) const { return top - (r + 0.5) / scale; }
};

void fill_table(const view& v) {
    for (int r = 0; r < raster_side; ++r) {
        const bool row_in = std::abs(v.wy(r)) <= workspace_half;
        for (int c = 0; c < raster_side; ++c) {
            std::uint8_t* p = v.px(r, c);
            if (row_in && std::abs(v.wx(c)) <= workspace_half) {
                p[0] = table_rgb[0];
                p[1] = table_rgb[1];
                p[2] = table_rgb[2];
            } else {
                p[0] = p[1] = p[2] = 0;
            }
        }
    }
}

template <class Shade>
void draw_disc_box(const view& v, double x, double y, double radius, Shade&& shade) {
    const int c0 = std::max(0, static_cast<int>(std::floor((x - radius - v.left) * v.scale)));
    const int c1 = std::min(raster_side - 1, static_cast<int>(std::ceil((x + radius - v.left) * v.scale)));
    const int r0 = std::max(0, static_cast<int>(std::floor((v.top - (y + radius)) * v.scale)));
    const int r1 = std::min(raster_side - 1, static_cast<int>(std::ceil((v.top - (y - radius)) * v.scale)));
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) shade(v.px(r, c), (v.wx(c) - x) / radius, (v.wy(r) - y) / radius);
}

void draw_object(const view& v, const object& o) {
    const auto& rgb = color_rgb[static_cast<std::size_t>(o.color)];
    const double ca = std::cos(o.angle), sa = std::sin(o.angle);
    const bool blend = o.shape == glyph::region;
    // The rotated glyph fits in the circumscribed box of radius * sqrt(2).
    draw_disc_box(v, o.x, o.y, o.radius * 1.4143, [&](std::uint8_t* p, double dx, double dy) {
        const double u = ca * dx + sa * dy;
        const double w = -sa * dx + ca * dy;
        const double k = glyph_shade(o.shape, u, w);
        if (k <= 0) return;
        for (int ch = 0; ch < 3; ++ch) {
            const double src = rgb[static_cast<std::size_t>(ch)];
            p[ch] = static_cast<std::uint8_t>(blend ? std::lround(0.5 * p[ch] + 0.5 * src) : std::lround(k * src));
        }
    });
}

void draw_gripper(const view& v, const gripper_state& g) {
    const double ct = std::cos(g.theta), st = std::sin(g.theta);
    const bool closed = g.grip > 0.5;
    draw_disc_box(v, g.x, g.y, gripper_radius, [&](std::uint8_t* p, double u, double w) {
        const double r2 = u * u + w * w;
        if (r2 > 1.0) return;
        const double along = ct * u + st * w;
        const double across = -st * u + ct * w;
        const bool ring = r2 >= 0.55;
        const bool jaw = along >= 0 && std::abs(across) <= 0.2;
        if (ring || jaw || closed) {
            const double k = (ring || jaw) ? 1.0 : 0.6;
            for (int ch = 0; ch < 3; ++ch) p[ch] = static_cast<std::uint8_t>(std::lround(k * gripper_rgb[static_cast<std::size_t>(ch)]));
        }
    });
}

void draw_scene(const view& v, const scene& s) {
    fill_table(v);
    for (const object& o : s.objects)
        if (o.visible && !o.solid) draw_object(v, o);
    for (const object& o : s.objects)
        if (o.visible && o.solid) draw_object(v, o);
    draw_gripper(v, s.gripper);
}

}  // namespace

void tabletop_task::render(std::span<std::uint8_t> out) const {
    const double top_scale = raster_side / (2 * workspace_half);
    draw_scene(view{-workspace_half, workspace_half, top_scale, out.data(), 0}, s_);
    const double crop_scale = raster_side / (2 * gripper_view_half);
    draw_scene(view{s_.gripper.x - gripper_view_half, s_.gripper.y + gripper_view_half, crop_scale, out.data(), 3}, s_);
}

}  // namespace memsuite::tabletop
