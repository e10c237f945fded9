#pragma once

#include <filesystem>
#include <vector>

#include "farsight/assoc/assoc.hpp"

namespace farsight::assoc {

// One frame of detections from the JSON exchange format.
struct FrameDetections {
    std::uint32_t frame_index = 0;
    std::vector<Proposal> proposals;
};

// JSON layout: {"frames": [{"frame_index": n, "detections": [{"kind":
// "body"|"face", "bbox": [x0,y0,x1,y1], "confidence": c, "embedding": [...],
// "head_hook": [x,y]?}, ...]}, ...]}
std::vector<FrameDetections> read_detections(const std::filesystem::path& path);
void write_detections(const std::vector<FrameDetections>& frames,
                      const std::filesystem::path& path);

}  // namespace farsight::assoc
