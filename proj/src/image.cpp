#include "genproj/image.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace genproj {

Image::Image(int width, int height, Color fill_color) : width_(width), height_(height)
{
    if (width < 1 || height < 1)
        throw Error("image dimensions must be at least 1x1");
    pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    fill(fill_color);
}

std::size_t Image::offset(int x, int y) const
{
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
}

Color Image::at(int x, int y) const
{
    const auto o = offset(x, y);
    return {pixels_[o], pixels_[o + 1], pixels_[o + 2]};
}

void Image::set(int x, int y, Color c)
{
    if (x < 0 || y < 0 || x >= width_ || y >= height_)
        return;
    const auto o = offset(x, y);
    pixels_[o] = c.r;
    pixels_[o + 1] = c.g;
    pixels_[o + 2] = c.b;
}

void Image::fill(Color c)
{
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = c.r;
        pixels_[i + 1] = c.g;
        pixels_[i + 2] = c.b;
    }
}

void Image::blit(const Image& src, int x0, int y0)
{
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x)
            set(x0 + x, y0 + y, src.at(x, y));
}

std::size_t Image::count_not(Color background) const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < pixels_.size(); i += 3)
        if (pixels_[i] != background.r || pixels_[i + 1] != background.g || pixels_[i + 2] != background.b)
            ++n;
    return n;
}

void write_ppm(std::ostream& out, const Image& image)
{
    out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.bytes().data()), static_cast<std::streamsize>(image.bytes().size()));
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string ppm_token(std::istream& in)
{
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty())
                break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

} // namespace

Image read_ppm(std::istream& in)
{
    if (ppm_token(in) != "P6")
        throw Error("not a binary PPM (P6)");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(ppm_token(in));
        h = std::stoi(ppm_token(in));
        maxval = std::stoi(ppm_token(in));
    } catch (const std::exception&) {
        throw Error("malformed PPM header");
    }
    if (maxval != 255)
        throw Error("only maxval 255 is supported");
    Image image(w, h);
    std::vector<char> buf(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size())))
        throw Error("truncated PPM pixel data");
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto o = (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)) * 3;
            image.set(x, y, {static_cast<std::uint8_t>(buf[o]), static_cast<std::uint8_t>(buf[o + 1]),
                             static_cast<std::uint8_t>(buf[o + 2])});
        }
    return image;
}

} // namespace genproj
