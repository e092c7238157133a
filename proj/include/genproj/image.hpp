#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "genproj/scene.hpp"

namespace genproj {

/// Row-major RGB8 raster.
class Image
{
public:
    Image(int width, int height, Color fill = {});

    int width() const { return width_; }
    int height() const { return height_; }

    Color at(int x, int y) const;
    void set(int x, int y, Color c);
    void fill(Color c);

    /// Copies `src` with its top-left corner at (x0, y0); clipped to bounds.
    void blit(const Image& src, int x0, int y0);

    /// Number of pixels whose color differs from `background`.
    std::size_t count_not(Color background) const;

    const std::vector<std::uint8_t>& bytes() const { return pixels_; }

    bool operator==(const Image&) const = default;

private:
    std::size_t offset(int x, int y) const;

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Binary PPM (P6, maxval 255).
void write_ppm(std::ostream& out, const Image& image);
Image read_ppm(std::istream& in);

} // namespace genproj
