#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genproj/image.hpp"
#include "genproj/linalg.hpp"
#include "genproj/projection.hpp"
#include "genproj/scene.hpp"

namespace genproj {

enum class RenderMode
{
    Wireframe,
    Filled,
};

struct RenderOptions
{
    RenderMode mode = RenderMode::Wireframe;
    Color background{255, 255, 255};
};

/// Clips a clip-space segment against |x|, |y|, |z| <= w, w > 0.
/// Endpoints already inside are returned untouched.
std::optional<std::pair<Vec4d, Vec4d>> clip_segment(const Vec4d& a, const Vec4d& b);

/// Sutherland-Hodgman against the same clip volume.
std::vector<Vec4d> clip_polygon(std::span<const Vec4d> polygon);

/// NDC to pixel coordinates; y grows downward.
Eigen::Vector2d viewport(const NdcPoint<double>& ndc, int width, int height);

/// A clipped segment in pixel coordinates, ready to rasterize or export.
struct ScreenLine
{
    Eigen::Vector2d a;
    Eigen::Vector2d b;
    Color color;
};

/// Wireframe draw list in painter's order (farthest eye-space centroid first).
std::vector<ScreenLine> wireframe_lines(const Scene& scene, const ProjectionParamsd& params, int width, int height);

Image render(const Scene& scene, const ProjectionParamsd& params, int width, int height,
             const RenderOptions& options = {});

/// SVG with one <line> per clipped segment, viewBox equal to pixel size.
std::string render_svg(const Scene& scene, const ProjectionParamsd& params, int width, int height,
                       const RenderOptions& options = {});

/// Grid of panels: one row per mapping, one column per p value.
struct SweepSpec
{
    std::vector<MappingFunction<double>> mappings;
    std::vector<double> p_values;
    ProjectionParamsd base;
    Scene scene;
    int panel_width = 240;
    int panel_height = 160;
    RenderOptions options;
};

inline constexpr int kSweepGutter = 2;

/// Mappings x^(1/c) for c = 1, 3, 5, 7, 9 against p = 0.25, 0.5, 0.75.
SweepSpec default_sweep(const Scene& scene, const ProjectionParamsd& base);

/// Top-left pixel of panel (row, col) inside the sweep image.
std::pair<int, int> sweep_panel_origin(const SweepSpec& spec, int row, int col);

Image render_sweep(const SweepSpec& spec);
std::string render_sweep_svg(const SweepSpec& spec);

} // namespace genproj
