#pragma once

#include <string>
#include <vector>

#include "farsight/assoc/detections_io.hpp"
#include "farsight/core/types.hpp"

namespace farsight::pipeline {

// Synthetic walking-subject corpus: each subject is a textured rectangle
// translating across the frame, with a brighter "head" band on top. Distinct
// base intensities and stripe frequencies make subjects separable by the toy
// encoders.
struct SceneConfig {
    int num_subjects = 8;
    int frame_width = 160;
    int frame_height = 120;
    int num_frames = 12;
    std::uint64_t seed = 0;
};

struct SyntheticSequence {
    std::string subject_id;
    std::vector<ImageFrame> frames;
    std::vector<assoc::FrameDetections> detections;
};

// Renders one subject's sequence. The variant index perturbs the walk (start
// position and phase) without changing the subject's appearance, so several
// independent sequences per subject are available for gallery enrollment.
SyntheticSequence render_sequence(int subject, const SceneConfig& config,
                                  int variant = 0);

}  // namespace farsight::pipeline
