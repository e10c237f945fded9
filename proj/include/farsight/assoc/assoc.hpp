#pragma once

#include <optional>
#include <vector>

#include "farsight/core/types.hpp"

namespace farsight::assoc {

struct Proposal {
    BBox bbox;
    Embedding embedding;
    // Only body proposals carry a head hook.
    std::optional<std::pair<double, double>> head_hook;

    Proposal(BBox box, Embedding emb,
             std::optional<std::pair<double, double>> hook = std::nullopt);
};

struct SubjectTruth {
    BBox body_box;
    std::optional<BBox> face_box;
    double head_x = 0.0, head_y = 0.0;  // ground-truth head center
};

struct GroundTruth {
    std::vector<SubjectTruth> subjects;
};

struct AssocConfig {
    double eta = 0.5;               // IoU assignment threshold
    double delta = 1.0;             // pushing margin
    double mu = 1.0, beta = 1.0;    // body-face vs same-kind combination
    double sigma = 1.0, tau = 1.0;  // pull vs push in the embedding loss
    double alpha = 1.0, gamma = 1.0;  // smooth-L1 vs angular in the hook loss
    double rbf_bandwidth_embed = 0.5;
    // <= 0 selects the scale-adaptive default 0.2 * face-box diagonal.
    double rbf_bandwidth_hook = 0.0;
    double visibility_threshold = 0.98;
    // Image size, used to normalize center distances in the pulling loss.
    double image_width = 1920.0, image_height = 1080.0;

    void validate() const;
};

// Per-subject proposal index sets (indices into the input proposal list).
struct AssignedSets {
    std::vector<std::vector<int>> bodies;  // B_k
    std::vector<std::vector<int>> faces;   // F_k
};

struct LossBreakdown {
    double body_body = 0.0;
    double face_face = 0.0;
    double body_face = 0.0;
    double total = 0.0;
};

double iou(const BBox& a, const BBox& b);

// Proposals with IoU strictly above eta join the max-IoU subject's set.
AssignedSets assign(const std::vector<Proposal>& proposals,
                    const GroundTruth& gt, double eta);

LossBreakdown pull_loss(const std::vector<Proposal>& proposals,
                        const AssignedSets& sets, const AssocConfig& cfg);

LossBreakdown push_loss(const std::vector<Proposal>& proposals,
                        const AssignedSets& sets, const AssocConfig& cfg);

double embedding_loss(const std::vector<Proposal>& proposals,
                      const AssignedSets& sets, const AssocConfig& cfg);

double smooth_l1(double x, double y);

// Predicted head hooks grouped by subject.
struct HookSet {
    std::vector<std::vector<std::pair<double, double>>> per_subject;
};

double hook_loss(const HookSet& hooks, const GroundTruth& gt,
                 const AssocConfig& cfg);

// |B| x |F| similarity matrix S = P .* M_h + (J - P) .* M_e.
std::vector<std::vector<double>> association_metric(
    const std::vector<Proposal>& bodies, const std::vector<Proposal>& faces,
    const AssocConfig& cfg);

constexpr int kNotVisible = -1;

// Per-face body index by column argmax, or kNotVisible below the threshold.
// Ties go to the lowest body index.
std::vector<int> associate(const std::vector<std::vector<double>>& similarity,
                           const AssocConfig& cfg);

// Greedy frame-to-frame IoU tracker. Returns one track id per detection, in
// input order per frame. Tracks unseen for more than max_age frames close.
std::vector<std::vector<int>> track_iou(
    const std::vector<std::vector<BBox>>& frames, double iou_gate,
    int max_age = 30);

}  // namespace farsight::assoc
