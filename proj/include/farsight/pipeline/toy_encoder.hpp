#pragma once

#include <vector>

#include "farsight/core/types.hpp"

namespace farsight::pipeline {

// Stand-in for the neural feature encoders: crop, resize to 16x16 grayscale,
// take a 64-bin intensity histogram per frame, average over frames, project
// to output_dim with a fixed seeded Gaussian random projection. Deterministic
// and locality-preserving enough for end-to-end tests.
inline constexpr int kHistogramBins = 64;
inline constexpr int kCropSize = 16;

struct EncoderSpec {
    std::string name;
    Modality modality = Modality::Face;
    std::size_t output_dim = 512;
};

// bbox_track supplies one box per frame (same length as frames).
std::vector<double> toy_encode(const std::vector<ImageFrame>& frames,
                               const std::vector<BBox>& bbox_track,
                               Modality modality, std::size_t output_dim);

// The projection matrix row used for histogram bin `bin`; exposed so tests
// can reproduce expected outputs independently of toy_encode's pipeline.
std::vector<double> projection_column(Modality modality, std::size_t output_dim,
                                      int bin);

// Crop + bilinear resize to kCropSize x kCropSize grayscale; intermediate
// step of toy_encode, reused by tests.
std::vector<double> crop_resize_gray(const ImageFrame& frame, const BBox& box);

}  // namespace farsight::pipeline
