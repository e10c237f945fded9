#include "farsight/pipeline/synthetic.hpp"

#include <cmath>

#include "farsight/core/rng.hpp"

namespace farsight::pipeline {
namespace {

// Deterministic unit embedding per subject; nearby variants share it.
Embedding subject_embedding(int subject, std::uint64_t seed) {
    NormalSource normals(seed * 1000003ULL + static_cast<std::uint64_t>(subject));
    std::vector<double> v(Embedding::kDefaultDim);
    for (double& x : v) x = normals.next();
    return Embedding(std::move(v));
}

}  // namespace

SyntheticSequence render_sequence(int subject, const SceneConfig& config,
                                  int variant) {
    if (subject < 0 || subject >= config.num_subjects)
        fail_invalid("render_sequence: subject index out of range");
    const int w = config.frame_width;
    const int h = config.frame_height;
    if (w < 48 || h < 48) fail_invalid("render_sequence: frame too small");

    // Appearance, keyed to the subject only.
    const int n = config.num_subjects;
    const double base = 0.15 + 0.7 * subject / std::max(1, n - 1);
    const double stripe_period = 3.0 + subject;  // px
    // Head tone follows a shuffled ramp (5s+2 mod n) so no two subjects are
    // intensity swaps of each other; that would collide their histograms.
    const double head_tone =
        0.2 + 0.6 * ((subject * 5 + 2) % n) / std::max(1, n - 1);

    // Walk, keyed to subject and variant.
    const int body_w = w / 6;
    const int body_h = (2 * h) / 3;
    const double speed = 1.0 + 0.25 * (subject % 4) + 0.5 * (variant % 3);
    const double x_start = 4.0 + 3.0 * variant;
    const int y_top = h / 6 + (variant % 2);

    SyntheticSequence seq;
    seq.subject_id = "subject_" + std::to_string(subject);
    const Embedding emb = subject_embedding(subject, config.seed);

    for (int f = 0; f < config.num_frames; ++f) {
        ImageFrame frame;
        frame.width = static_cast<std::uint32_t>(w);
        frame.height = static_cast<std::uint32_t>(h);
        frame.channels = 1;
        frame.frame_index = static_cast<std::uint32_t>(f);
        frame.data.assign(static_cast<std::size_t>(w) * h, 0.5);

        double x_left = x_start + speed * f;
        if (x_left + body_w > w - 2) x_left = w - 2 - body_w;  // stay in frame
        const int x0 = static_cast<int>(x_left);
        const int head_h = body_h / 4;

        for (int y = y_top; y < y_top + body_h && y < h; ++y) {
            for (int x = x0; x < x0 + body_w && x < w; ++x) {
                const bool head = y < y_top + head_h;
                const double stripes =
                    0.08 * std::sin(2.0 * 3.14159265358979 * (y - y_top) /
                                    stripe_period);
                // Shallow ramps spread each region's intensities over a
                // subject-specific interval; the resulting histograms stay
                // broad (and keep overlapping themselves) under blur, where
                // a flat tone would be a single brittle bin.
                const double head_ramp =
                    0.1 * ((x - x0) / std::max(1.0, body_w - 1.0) - 0.5);
                const double body_ramp =
                    0.1 * ((y - y_top) / std::max(1.0, body_h - 1.0) - 0.5);
                double v = head ? head_tone + head_ramp
                                : base + body_ramp + stripes;
                frame.at(static_cast<std::uint32_t>(x),
                         static_cast<std::uint32_t>(y)) =
                    std::min(1.0, std::max(0.0, v));
            }
        }
        seq.frames.push_back(std::move(frame));

        assoc::FrameDetections det;
        det.frame_index = static_cast<std::uint32_t>(f);
        BBox body(x0, y_top, x0 + body_w, y_top + body_h, BoxKind::Body, 0.9);
        BBox face(x0 + body_w / 4.0, y_top, x0 + 3.0 * body_w / 4.0,
                  y_top + head_h, BoxKind::Face, 0.9);
        det.proposals.emplace_back(
            body, emb, std::make_pair(face.center_x(), face.center_y()));
        det.proposals.emplace_back(face, emb, std::nullopt);
        seq.detections.push_back(std::move(det));
    }
    return seq;
}

}  // namespace farsight::pipeline
