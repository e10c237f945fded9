#include "farsight/core/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace farsight {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

int quantize(double v, int max_val) {
    const double scaled = v * max_val;
    int q = static_cast<int>(std::lround(scaled));
    if (q < 0) q = 0;
    if (q > max_val) q = max_val;
    return q;
}

// ---- PNM (PGM / PPM, binary variants) ----

void skip_pnm_space(std::FILE* f) {
    int c;
    while ((c = std::fgetc(f)) != EOF) {
        if (c == '#') {
            while ((c = std::fgetc(f)) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            std::ungetc(c, f);
            return;
        }
    }
}

long read_pnm_int(std::FILE* f, const std::filesystem::path& path) {
    skip_pnm_space(f);
    long value = 0;
    int c = std::fgetc(f);
    if (c == EOF || !std::isdigit(c))
        fail_io("malformed PNM header: " + path.string());
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = std::fgetc(f);
    }
    if (c != EOF) std::ungetc(c, f);  // keep the delimiter for the caller
    return value;
}

ImageFrame read_pnm(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) fail_io("cannot open " + path.string());
    char magic[3] = {};
    if (std::fread(magic, 1, 2, f.get()) != 2)
        fail_io("truncated PNM header: " + path.string());
    std::uint32_t channels;
    if (std::strncmp(magic, "P5", 2) == 0)
        channels = 1;
    else if (std::strncmp(magic, "P6", 2) == 0)
        channels = 3;
    else
        fail_io("unsupported PNM magic in " + path.string());

    const long w = read_pnm_int(f.get(), path);
    const long h = read_pnm_int(f.get(), path);
    const long max_val = read_pnm_int(f.get(), path);
    if (w <= 0 || h <= 0 || (max_val != 255 && max_val != 65535))
        fail_io("unsupported PNM geometry/depth in " + path.string());
    std::fgetc(f.get());  // single whitespace after maxval

    ImageFrame frame;
    frame.width = static_cast<std::uint32_t>(w);
    frame.height = static_cast<std::uint32_t>(h);
    frame.channels = channels;
    const std::size_t n = static_cast<std::size_t>(w) * h * channels;
    frame.data.resize(n);

    const int bytes = max_val == 255 ? 1 : 2;
    std::vector<unsigned char> raw(n * bytes);
    if (std::fread(raw.data(), 1, raw.size(), f.get()) != raw.size())
        fail_io("truncated PNM payload: " + path.string());
    for (std::size_t i = 0; i < n; ++i) {
        long v = bytes == 1 ? raw[i]
                            : (static_cast<long>(raw[2 * i]) << 8) | raw[2 * i + 1];
        frame.data[i] = static_cast<double>(v) / max_val;
    }
    return frame;
}

void write_pnm(const ImageFrame& frame, const std::filesystem::path& path,
               int bit_depth) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) fail_io("cannot write " + path.string());
    const int max_val = bit_depth == 16 ? 65535 : 255;
    std::fprintf(f.get(), "%s\n%u %u\n%d\n", frame.channels == 1 ? "P5" : "P6",
                 frame.width, frame.height, max_val);
    const std::size_t n = frame.data.size();
    std::vector<unsigned char> raw;
    raw.reserve(n * (bit_depth == 16 ? 2 : 1));
    for (std::size_t i = 0; i < n; ++i) {
        const int q = quantize(frame.data[i], max_val);
        if (bit_depth == 16) {
            raw.push_back(static_cast<unsigned char>(q >> 8));
            raw.push_back(static_cast<unsigned char>(q & 0xff));
        } else {
            raw.push_back(static_cast<unsigned char>(q));
        }
    }
    if (std::fwrite(raw.data(), 1, raw.size(), f.get()) != raw.size())
        fail_io("short write: " + path.string());
}

// ---- PNG via libpng ----

ImageFrame read_png_file(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) fail_io("cannot open " + path.string());

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail_io("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail_io("libpng read error: " + path.string());
    }
    png_init_io(png, f.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    // Normalize to 8- or 16-bit gray or RGB.
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // little-endian rows below
    png_read_update_info(png, info);
    depth = png_get_bit_depth(png, info);
    const int out_channels = png_get_channels(png, info);
    if (out_channels != 1 && out_channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail_io("unsupported PNG channel count in " + path.string());
    }

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<unsigned char> raw(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = raw.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageFrame frame;
    frame.width = w;
    frame.height = h;
    frame.channels = static_cast<std::uint32_t>(out_channels);
    const std::size_t n = static_cast<std::size_t>(w) * h * out_channels;
    frame.data.resize(n);
    const int max_val = depth == 16 ? 65535 : 255;
    if (depth == 16) {
        const auto* p = reinterpret_cast<const std::uint16_t*>(raw.data());
        for (std::size_t i = 0; i < n; ++i)
            frame.data[i] = static_cast<double>(p[i]) / max_val;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            frame.data[i] = static_cast<double>(raw[i]) / max_val;
    }
    return frame;
}

void write_png_file(const ImageFrame& frame, const std::filesystem::path& path,
                    int bit_depth) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) fail_io("cannot write " + path.string());

    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail_io("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail_io("libpng write error: " + path.string());
    }
    png_init_io(png, f.get());
    const int color = frame.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, frame.width, frame.height, bit_depth, color,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int max_val = bit_depth == 16 ? 65535 : 255;
    const std::size_t row_samples =
        static_cast<std::size_t>(frame.width) * frame.channels;
    std::vector<unsigned char> row(row_samples * (bit_depth == 16 ? 2 : 1));
    for (std::uint32_t y = 0; y < frame.height; ++y) {
        const double* src = frame.data.data() + static_cast<std::size_t>(y) * row_samples;
        for (std::size_t i = 0; i < row_samples; ++i) {
            const int q = quantize(src[i], max_val);
            if (bit_depth == 16) {
                row[2 * i] = static_cast<unsigned char>(q >> 8);
                row[2 * i + 1] = static_cast<unsigned char>(q & 0xff);
            } else {
                row[i] = static_cast<unsigned char>(q);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageFrame read_image(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    ImageFrame frame;
    if (ext == ".png")
        frame = read_png_file(path);
    else if (ext == ".pgm" || ext == ".ppm")
        frame = read_pnm(path);
    else
        fail_io("unsupported image extension: " + path.string());
    require_valid(frame);
    return frame;
}

void write_image(const ImageFrame& frame, const std::filesystem::path& path,
                 int bit_depth) {
    require_valid(frame);
    if (bit_depth != 8 && bit_depth != 16)
        fail_invalid("bit depth must be 8 or 16");
    const auto ext = path.extension().string();
    if (ext == ".png")
        write_png_file(frame, path, bit_depth);
    else if (ext == ".pgm" || ext == ".ppm")
        write_pnm(frame, path, bit_depth);
    else
        fail_io("unsupported image extension: " + path.string());
}

}  // namespace farsight
