#pragma once

#include <string>
#include <vector>

#include "farsight/assoc/detections_io.hpp"
#include "farsight/core/types.hpp"
#include "farsight/pipeline/toy_encoder.hpp"
#include "farsight/turbsim/field.hpp"

namespace farsight::pipeline {

enum class EnrollMode { Probe, Gallery };

struct PipelineConfig {
    EnrollMode mode = EnrollMode::Probe;
    TemplateDims dims;
    bool simulate_turbulence = false;
    turbsim::TurbulenceConfig turbulence;
    double iou_gate = 0.3;
    double visibility_threshold = 0.98;
    std::uint64_t seed = 0;
};

struct SequenceInput {
    std::string subject_id;
    std::vector<ImageFrame> frames;
    std::vector<assoc::FrameDetections> detections;  // one entry per frame
};

// Per-frame face-to-body track assignment, kNotVisible when below threshold.
struct AssociationRecord {
    std::uint32_t frame_index = 0;
    std::vector<int> face_to_body;  // body index within the frame, or -1
    std::vector<int> body_track_ids;
};

struct PipelineResult {
    std::vector<Template> templates;  // per sequence (probe) or subject (gallery)
    std::vector<AssociationRecord> associations;
};

// Detection ingest -> IoU tracking -> optional turbulence degradation ->
// toy encoders -> mean-pooled per-sequence templates; gallery mode then
// consolidates per subject by mean fusion.
PipelineResult run_pipeline(const std::vector<SequenceInput>& sequences,
                            const PipelineConfig& config);

}  // namespace farsight::pipeline
