#include "farsight/pipeline/toy_encoder.hpp"

#include <algorithm>
#include <cmath>

#include "farsight/core/rng.hpp"

namespace farsight::pipeline {
namespace {

std::uint64_t projection_seed(Modality modality, std::size_t output_dim) {
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    seed ^= static_cast<std::uint64_t>(modality) * 0x100000001b3ULL;
    seed ^= static_cast<std::uint64_t>(output_dim) << 17;
    return seed;
}

// Column-major generation order: all output_dim entries of bin 0 first. This
// fixes the matrix independent of how many bins a caller asks for.
std::vector<double> projection_matrix(Modality modality,
                                      std::size_t output_dim) {
    NormalSource normals(projection_seed(modality, output_dim));
    std::vector<double> m(output_dim * kHistogramBins);
    for (int bin = 0; bin < kHistogramBins; ++bin)
        for (std::size_t r = 0; r < output_dim; ++r)
            m[r * kHistogramBins + bin] = normals.next();
    return m;
}

double sample_clamped(const ImageFrame& img, double x, double y) {
    x = std::min(static_cast<double>(img.width - 1), std::max(0.0, x));
    y = std::min(static_cast<double>(img.height - 1), std::max(0.0, y));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min<int>(x0 + 1, img.width - 1);
    const int y1 = std::min<int>(y0 + 1, img.height - 1);
    const double fx = x - x0, fy = y - y0;
    auto gray = [&](int px, int py) {
        if (img.channels == 1)
            return img.at(static_cast<std::uint32_t>(px),
                          static_cast<std::uint32_t>(py));
        double sum = 0.0;
        for (std::uint32_t c = 0; c < img.channels; ++c)
            sum += img.at(static_cast<std::uint32_t>(px),
                          static_cast<std::uint32_t>(py), c);
        return sum / img.channels;
    };
    const double a = gray(x0, y0) * (1 - fx) + gray(x1, y0) * fx;
    const double b = gray(x0, y1) * (1 - fx) + gray(x1, y1) * fx;
    return a * (1 - fy) + b * fy;
}

}  // namespace

std::vector<double> crop_resize_gray(const ImageFrame& frame, const BBox& box) {
    std::vector<double> out(static_cast<std::size_t>(kCropSize) * kCropSize);
    for (int y = 0; y < kCropSize; ++y) {
        for (int x = 0; x < kCropSize; ++x) {
            const double sx =
                box.x_min + (x + 0.5) / kCropSize * box.width() - 0.5;
            const double sy =
                box.y_min + (y + 0.5) / kCropSize * box.height() - 0.5;
            out[static_cast<std::size_t>(y) * kCropSize + x] =
                sample_clamped(frame, sx, sy);
        }
    }
    return out;
}

std::vector<double> projection_column(Modality modality, std::size_t output_dim,
                                      int bin) {
    const auto m = projection_matrix(modality, output_dim);
    std::vector<double> col(output_dim);
    for (std::size_t r = 0; r < output_dim; ++r)
        col[r] = m[r * kHistogramBins + bin];
    return col;
}

std::vector<double> toy_encode(const std::vector<ImageFrame>& frames,
                               const std::vector<BBox>& bbox_track,
                               Modality modality, std::size_t output_dim) {
    if (frames.empty()) fail_invalid("toy_encode: no frames");
    if (frames.size() != bbox_track.size())
        fail_invalid("toy_encode: one bbox per frame required");
    if (output_dim == 0) fail_invalid("toy_encode: zero output dim");

    std::vector<double> histogram(kHistogramBins, 0.0);
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const auto crop = crop_resize_gray(frames[f], bbox_track[f]);
        for (double v : crop) {
            int bin = static_cast<int>(v * kHistogramBins);
            bin = std::clamp(bin, 0, kHistogramBins - 1);
            histogram[bin] += 1.0 / crop.size();
        }
    }
    for (double& b : histogram) b /= static_cast<double>(frames.size());

    const auto m = projection_matrix(modality, output_dim);
    std::vector<double> out(output_dim, 0.0);
    for (std::size_t r = 0; r < output_dim; ++r) {
        double acc = 0.0;
        for (int bin = 0; bin < kHistogramBins; ++bin)
            acc += m[r * kHistogramBins + bin] * histogram[bin];
        out[r] = acc;
    }
    return out;
}

}  // namespace farsight::pipeline
