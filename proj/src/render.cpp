#include "genproj/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <variant>

#include "genproj/frustum.hpp"

namespace genproj {

namespace {

// Keeps w strictly positive after clipping so the divide is always defined.
constexpr double kMinClipW = 1e-12;
constexpr int kClipPlanes = 7;

double plane_distance(const Vec4d& v, int plane)
{
    switch (plane) {
    case 0: return v.w() + v.x();
    case 1: return v.w() - v.x();
    case 2: return v.w() + v.y();
    case 3: return v.w() - v.y();
    case 4: return v.w() + v.z();
    case 5: return v.w() - v.z();
    default: return v.w() - kMinClipW;
    }
}

} // namespace

std::optional<std::pair<Vec4d, Vec4d>> clip_segment(const Vec4d& a, const Vec4d& b)
{
    double t0 = 0.0;
    double t1 = 1.0;
    for (int plane = 0; plane < kClipPlanes; ++plane) {
        const double da = plane_distance(a, plane);
        const double db = plane_distance(b, plane);
        if (!(da >= 0.0) && !(db >= 0.0))
            return std::nullopt;
        if (da < 0.0)
            t0 = std::max(t0, da / (da - db));
        else if (db < 0.0)
            t1 = std::min(t1, da / (da - db));
        if (t0 > t1)
            return std::nullopt;
    }
    const Vec4d delta = b - a;
    return std::pair{t0 > 0.0 ? Vec4d(a + t0 * delta) : a, t1 < 1.0 ? Vec4d(a + t1 * delta) : b};
}

std::vector<Vec4d> clip_polygon(std::span<const Vec4d> polygon)
{
    std::vector<Vec4d> current(polygon.begin(), polygon.end());
    std::vector<Vec4d> next;
    for (int plane = 0; plane < kClipPlanes && !current.empty(); ++plane) {
        next.clear();
        for (std::size_t i = 0; i < current.size(); ++i) {
            const Vec4d& p = current[i];
            const Vec4d& q = current[(i + 1) % current.size()];
            const double dp = plane_distance(p, plane);
            const double dq = plane_distance(q, plane);
            if (dp >= 0.0)
                next.push_back(p);
            if ((dp >= 0.0) != (dq >= 0.0))
                next.push_back(p + (dp / (dp - dq)) * (q - p));
        }
        current.swap(next);
    }
    if (current.size() < 3)
        current.clear();
    return current;
}

Eigen::Vector2d viewport(const NdcPoint<double>& ndc, int width, int height)
{
    return {(ndc.x() + 1.0) / 2.0 * width, (1.0 - (ndc.y() + 1.0) / 2.0) * height};
}

namespace {

Eigen::Vector2d to_pixels(const Vec4d& clip, int width, int height)
{
    return viewport(NdcPoint<double>(clip.head<3>() / clip.w()), width, height);
}

// One painter's-order unit: a segment (2 vertices) or a convex polygon.
struct DrawItem
{
    std::vector<Vec3d> vertices; // eye space
    Color color;
    bool polygon = false;
    double depth = 0.0; // eye-space centroid z
};

Color tint(Color c, double k)
{
    auto ch = [k](std::uint8_t v) { return static_cast<std::uint8_t>(std::lround(v * k)); };
    return {ch(c.r), ch(c.g), ch(c.b)};
}

Vec3d to_eye(const Mat4d& view, const Vec3d& p)
{
    return (view * p.homogeneous()).head<3>();
}

void push(std::vector<DrawItem>& items, const Mat4d& view, std::initializer_list<Vec3d> world, Color color,
          bool polygon)
{
    DrawItem item;
    item.color = color;
    item.polygon = polygon;
    Vec3d sum = Vec3d::Zero();
    for (const auto& p : world) {
        item.vertices.push_back(to_eye(view, p));
        sum += item.vertices.back();
    }
    item.depth = sum.z() / static_cast<double>(item.vertices.size());
    items.push_back(std::move(item));
}

std::array<Vec3d, 8> box_corners(const Box& box)
{
    std::array<Vec3d, 8> c;
    for (int i = 0; i < 8; ++i) {
        const Vec3d sign((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0);
        c[i] = box.center + sign.cwiseProduct(box.half_extents);
    }
    return c;
}

void decompose(const Primitive& prim, const Mat4d& view, RenderMode mode, std::vector<DrawItem>& items)
{
    const bool filled = mode == RenderMode::Filled;
    if (const auto* box = std::get_if<Box>(&prim)) {
        const auto c = box_corners(*box);
        if (filled) {
            // Fixed per-axis tint so adjacent faces stay distinguishable.
            push(items, view, {c[0], c[2], c[6], c[4]}, tint(box->color, 0.75), true);
            push(items, view, {c[1], c[5], c[7], c[3]}, tint(box->color, 0.75), true);
            push(items, view, {c[0], c[4], c[5], c[1]}, tint(box->color, 0.6), true);
            push(items, view, {c[2], c[3], c[7], c[6]}, box->color, true);
            push(items, view, {c[0], c[1], c[3], c[2]}, tint(box->color, 0.9), true);
            push(items, view, {c[4], c[6], c[7], c[5]}, tint(box->color, 0.9), true);
        } else {
            for (int i = 0; i < 8; ++i)
                for (int bit : {1, 2, 4})
                    if (!(i & bit))
                        push(items, view, {c[i], c[i | bit]}, box->color, false);
        }
    } else if (const auto* plane = std::get_if<CheckerPlane>(&prim)) {
        const double step = 1.0 / plane->cells;
        auto at = [&](int i, int j) { return Vec3d(plane->origin + (i * step) * plane->u_axis + (j * step) * plane->v_axis); };
        if (filled) {
            for (int j = 0; j < plane->cells; ++j)
                for (int i = 0; i < plane->cells; ++i)
                    push(items, view, {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)},
                         ((i + j) % 2 == 0) ? plane->color_a : plane->color_b, true);
        } else {
            // Grid lines in the second color.
            for (int k = 0; k <= plane->cells; ++k) {
                push(items, view, {at(k, 0), at(k, plane->cells)}, plane->color_b, false);
                push(items, view, {at(0, k), at(plane->cells, k)}, plane->color_b, false);
            }
        }
    } else {
        const auto& seg = std::get<Segment>(prim);
        push(items, view, {seg.a, seg.b}, seg.color, false);
    }
}

std::vector<DrawItem> draw_items(const Scene& scene, RenderMode mode)
{
    if (!scene.camera.orthonormal())
        throw Error("camera basis must be orthonormal");
    const Mat4d view = scene.camera.view();
    std::vector<DrawItem> items;
    for (const auto& prim : scene.primitives)
        decompose(prim, view, mode, items);
    // Most negative z is farthest from the camera; draw it first.
    std::stable_sort(items.begin(), items.end(),
                     [](const DrawItem& a, const DrawItem& b) { return a.depth < b.depth; });
    return items;
}

std::optional<ScreenLine> project_segment(const Mat4d& proj, const DrawItem& item, int width, int height)
{
    const Vec4d a = proj * item.vertices[0].homogeneous();
    const Vec4d b = proj * item.vertices[1].homogeneous();
    const auto clipped = clip_segment(a, b);
    if (!clipped)
        return std::nullopt;
    return ScreenLine{to_pixels(clipped->first, width, height), to_pixels(clipped->second, width, height), item.color};
}

int pixel_index(double v, int size)
{
    return std::clamp(static_cast<int>(std::floor(v)), 0, size - 1);
}

void draw_line(Image& image, const ScreenLine& line)
{
    int x0 = pixel_index(line.a.x(), image.width());
    int y0 = pixel_index(line.a.y(), image.height());
    const int x1 = pixel_index(line.b.x(), image.width());
    const int y1 = pixel_index(line.b.y(), image.height());
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        image.set(x0, y0, line.color);
        if (x0 == x1 && y0 == y1)
            break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

// Convex polygon fill sampling pixel centers with a top-left tie rule, so
// shared edges are drawn once and zero-area polygons draw nothing.
void fill_polygon(Image& image, std::vector<Eigen::Vector2d> pts, Color color)
{
    double area2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        area2 += a.x() * b.y() - b.x() * a.y();
    }
    if (!(std::abs(area2) > 1e-12))
        return;
    if (area2 < 0)
        std::reverse(pts.begin(), pts.end());

    double xmin = pts[0].x(), xmax = xmin, ymin = pts[0].y(), ymax = ymin;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
    const int x_begin = std::max(0, static_cast<int>(std::floor(xmin)));
    const int x_end = std::min(image.width() - 1, static_cast<int>(std::ceil(xmax)));
    const int y_begin = std::max(0, static_cast<int>(std::floor(ymin)));
    const int y_end = std::min(image.height() - 1, static_cast<int>(std::ceil(ymax)));

    for (int y = y_begin; y <= y_end; ++y) {
        for (int x = x_begin; x <= x_end; ++x) {
            const Eigen::Vector2d c(x + 0.5, y + 0.5);
            bool inside = true;
            for (std::size_t i = 0; i < pts.size() && inside; ++i) {
                const auto& a = pts[i];
                const auto& b = pts[(i + 1) % pts.size()];
                const double dx = b.x() - a.x();
                const double dy = b.y() - a.y();
                const double e = dx * (c.y() - a.y()) - dy * (c.x() - a.x());
                const bool top_left = (dy == 0.0 && dx > 0.0) || dy < 0.0;
                inside = e > 0.0 || (e == 0.0 && top_left);
            }
            if (inside)
                image.set(x, y, color);
        }
    }
}

std::string fmt(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string rgb(Color c)
{
    return "rgb(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," + std::to_string(c.b) + ")";
}

void svg_lines(std::ostream& out, const std::vector<ScreenLine>& lines)
{
    for (const auto& l : lines)
        out << "<line x1=\"" << fmt(l.a.x()) << "\" y1=\"" << fmt(l.a.y()) << "\" x2=\"" << fmt(l.b.x())
            << "\" y2=\"" << fmt(l.b.y()) << "\" stroke=\"" << rgb(l.color) << "\" stroke-width=\"1\"/>\n";
}

void svg_open(std::ostream& out, int width, int height, Color background)
{
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"" << rgb(background)
        << "\"/>\n";
}

void require_wireframe(const RenderOptions& options)
{
    if (options.mode != RenderMode::Wireframe)
        throw Error("SVG output supports wireframe mode only");
}

} // namespace

std::vector<ScreenLine> wireframe_lines(const Scene& scene, const ProjectionParamsd& params, int width, int height)
{
    const Mat4d proj = generalized(params);
    std::vector<ScreenLine> lines;
    for (const auto& item : draw_items(scene, RenderMode::Wireframe))
        if (auto line = project_segment(proj, item, width, height))
            lines.push_back(*line);
    return lines;
}

Image render(const Scene& scene, const ProjectionParamsd& params, int width, int height, const RenderOptions& options)
{
    const Mat4d proj = generalized(params);
    Image image(width, height, options.background);
    for (const auto& item : draw_items(scene, options.mode)) {
        if (!item.polygon) {
            if (auto line = project_segment(proj, item, width, height))
                draw_line(image, *line);
            continue;
        }
        std::vector<Vec4d> clip;
        clip.reserve(item.vertices.size());
        for (const auto& v : item.vertices)
            clip.push_back(proj * v.homogeneous());
        const auto clipped = clip_polygon(clip);
        if (clipped.empty())
            continue;
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(clipped.size());
        for (const auto& v : clipped)
            pts.push_back(to_pixels(v, width, height));
        fill_polygon(image, std::move(pts), item.color);
    }
    return image;
}

std::string render_svg(const Scene& scene, const ProjectionParamsd& params, int width, int height,
                       const RenderOptions& options)
{
    require_wireframe(options);
    if (width < 1 || height < 1)
        throw Error("image dimensions must be at least 1x1");
    std::ostringstream out;
    svg_open(out, width, height, options.background);
    svg_lines(out, wireframe_lines(scene, params, width, height));
    out << "</svg>\n";
    return out.str();
}

SweepSpec default_sweep(const Scene& scene, const ProjectionParamsd& base)
{
    SweepSpec spec;
    for (double c : {1.0, 3.0, 5.0, 7.0, 9.0})
        spec.mappings.emplace_back(PowerMapping<double>{c});
    spec.p_values = {0.25, 0.5, 0.75};
    spec.base = base;
    spec.scene = scene;
    return spec;
}

namespace {

void check_sweep(const SweepSpec& spec)
{
    if (spec.mappings.empty() || spec.p_values.empty())
        throw Error("sweep needs at least one mapping and one p value");
    if (spec.panel_width < 1 || spec.panel_height < 1)
        throw Error("sweep panel dimensions must be at least 1x1");
}

ProjectionParamsd panel_params(const SweepSpec& spec, std::size_t row, std::size_t col)
{
    ProjectionParamsd params = spec.base;
    params.mapping = spec.mappings[row];
    params.p = spec.p_values[col];
    return params;
}

std::pair<int, int> sweep_size(const SweepSpec& spec)
{
    const int cols = static_cast<int>(spec.p_values.size());
    const int rows = static_cast<int>(spec.mappings.size());
    return {cols * spec.panel_width + (cols - 1) * kSweepGutter, rows * spec.panel_height + (rows - 1) * kSweepGutter};
}

} // namespace

std::pair<int, int> sweep_panel_origin(const SweepSpec& spec, int row, int col)
{
    return {col * (spec.panel_width + kSweepGutter), row * (spec.panel_height + kSweepGutter)};
}

Image render_sweep(const SweepSpec& spec)
{
    check_sweep(spec);
    const auto [w, h] = sweep_size(spec);
    Image grid(w, h, Color{0, 0, 0});
    for (std::size_t row = 0; row < spec.mappings.size(); ++row)
        for (std::size_t col = 0; col < spec.p_values.size(); ++col) {
            const Image panel =
                render(spec.scene, panel_params(spec, row, col), spec.panel_width, spec.panel_height, spec.options);
            const auto [x0, y0] = sweep_panel_origin(spec, static_cast<int>(row), static_cast<int>(col));
            grid.blit(panel, x0, y0);
        }
    return grid;
}

std::string render_sweep_svg(const SweepSpec& spec)
{
    check_sweep(spec);
    require_wireframe(spec.options);
    const auto [w, h] = sweep_size(spec);
    std::ostringstream out;
    svg_open(out, w, h, Color{0, 0, 0});
    for (std::size_t row = 0; row < spec.mappings.size(); ++row)
        for (std::size_t col = 0; col < spec.p_values.size(); ++col) {
            const auto [x0, y0] = sweep_panel_origin(spec, static_cast<int>(row), static_cast<int>(col));
            out << "<g transform=\"translate(" << x0 << ' ' << y0 << ")\">\n"
                << "<rect x=\"0\" y=\"0\" width=\"" << spec.panel_width << "\" height=\"" << spec.panel_height
                << "\" fill=\"" << rgb(spec.options.background) << "\"/>\n";
            svg_lines(out, wireframe_lines(spec.scene, panel_params(spec, row, col), spec.panel_width,
                                           spec.panel_height));
            out << "</g>\n";
        }
    out << "</svg>\n";
    return out.str();
}

} // namespace genproj
