#include "farsight/pipeline/pipeline.hpp"

#include <algorithm>
#include <map>

#include "farsight/assoc/assoc.hpp"
#include "farsight/fusion/fusion.hpp"
#include "farsight/turbsim/degrade.hpp"

namespace farsight::pipeline {
namespace {

struct TrackedSequence {
    std::vector<ImageFrame> frames;     // frames where the primary track exists
    std::vector<BBox> body_boxes;       // per kept frame
    std::vector<ImageFrame> face_frames;
    std::vector<BBox> face_boxes;
    std::vector<AssociationRecord> records;
};

TrackedSequence ingest_and_track(const SequenceInput& seq,
                                 const PipelineConfig& cfg,
                                 std::uint64_t seq_seed) {
    if (seq.frames.empty()) fail_invalid("run_pipeline: empty sequence");
    if (seq.detections.size() != seq.frames.size())
        fail_invalid("run_pipeline: detections required for every frame");

    // Optional turbulence degradation ahead of everything else.
    std::vector<ImageFrame> frames = seq.frames;
    if (cfg.simulate_turbulence) {
        for (std::size_t f = 0; f < frames.size(); ++f) {
            turbsim::TurbulenceConfig tc = cfg.turbulence;
            tc.rng_seed = seq_seed * 0x9e3779b9ULL + f;
            const auto field = turbsim::sample_field(
                tc, static_cast<int>(frames[f].width),
                static_cast<int>(frames[f].height));
            frames[f] = turbsim::degrade(frames[f], field, tc.psf_size);
        }
    }

    // Split proposals per frame and track bodies.
    std::vector<std::vector<BBox>> body_boxes_per_frame(frames.size());
    std::vector<std::vector<const assoc::Proposal*>> bodies_per_frame(
        frames.size());
    std::vector<std::vector<const assoc::Proposal*>> faces_per_frame(
        frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        for (const auto& p : seq.detections[f].proposals) {
            if (p.bbox.kind == BoxKind::Body) {
                body_boxes_per_frame[f].push_back(p.bbox);
                bodies_per_frame[f].push_back(&p);
            } else {
                faces_per_frame[f].push_back(&p);
            }
        }
    }
    const auto track_ids = assoc::track_iou(body_boxes_per_frame, cfg.iou_gate);

    // Primary track: the id covering the most frames, lowest id on ties.
    std::map<int, int> frames_per_track;
    for (const auto& ids : track_ids)
        for (int id : ids) ++frames_per_track[id];
    if (frames_per_track.empty())
        fail_invalid("run_pipeline: no body detections in sequence");
    int primary = frames_per_track.begin()->first;
    for (const auto& [id, count] : frames_per_track)
        if (count > frames_per_track[primary]) primary = id;

    assoc::AssocConfig acfg;
    acfg.visibility_threshold = cfg.visibility_threshold;
    acfg.image_width = frames[0].width;
    acfg.image_height = frames[0].height;

    TrackedSequence out;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        AssociationRecord rec;
        rec.frame_index = seq.detections[f].frame_index;
        rec.body_track_ids = track_ids[f];

        std::vector<assoc::Proposal> bodies, faces;
        for (const auto* p : bodies_per_frame[f]) bodies.push_back(*p);
        for (const auto* p : faces_per_frame[f]) faces.push_back(*p);
        if (!bodies.empty() && !faces.empty()) {
            const auto sim = assoc::association_metric(bodies, faces, acfg);
            rec.face_to_body = assoc::associate(sim, acfg);
        } else {
            rec.face_to_body.assign(faces.size(), assoc::kNotVisible);
        }

        // Collect the primary track's crops.
        for (std::size_t b = 0; b < bodies.size(); ++b) {
            if (track_ids[f][b] != primary) continue;
            out.frames.push_back(frames[f]);
            out.body_boxes.push_back(bodies[b].bbox);
            for (std::size_t j = 0; j < faces.size(); ++j) {
                if (rec.face_to_body[j] == static_cast<int>(b)) {
                    out.face_frames.push_back(frames[f]);
                    out.face_boxes.push_back(faces[j].bbox);
                    break;
                }
            }
            break;  // one primary body per frame
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

PipelineResult run_pipeline(const std::vector<SequenceInput>& sequences,
                            const PipelineConfig& config) {
    if (sequences.empty()) fail_invalid("run_pipeline: no sequences");

    PipelineResult result;
    std::vector<Template> per_sequence;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
        const auto tracked =
            ingest_and_track(sequences[s], config, config.seed + s);
        for (const auto& rec : tracked.records)
            result.associations.push_back(rec);
        if (tracked.body_boxes.empty())
            fail_invalid("run_pipeline: primary track has no frames");

        const std::string& id = sequences[s].subject_id;
        if (!tracked.face_boxes.empty()) {
            per_sequence.emplace_back(
                id, Modality::Face,
                toy_encode(tracked.face_frames, tracked.face_boxes,
                           Modality::Face, config.dims.face));
        }
        per_sequence.emplace_back(
            id, Modality::Gait,
            toy_encode(tracked.frames, tracked.body_boxes, Modality::Gait,
                       config.dims.gait));
        per_sequence.emplace_back(
            id, Modality::Body,
            toy_encode(tracked.frames, tracked.body_boxes, Modality::Body,
                       config.dims.body));
    }

    if (config.mode == EnrollMode::Probe) {
        result.templates = std::move(per_sequence);
        return result;
    }

    // Gallery: consolidate per (subject, modality) by mean fusion.
    std::map<std::pair<std::string, Modality>, std::vector<std::vector<double>>>
        grouped;
    std::vector<std::pair<std::string, Modality>> order;
    for (auto& t : per_sequence) {
        const auto key = std::make_pair(t.subject_id, t.modality);
        if (grouped.find(key) == grouped.end()) order.push_back(key);
        grouped[key].push_back(std::move(t.vector));
    }
    for (const auto& key : order)
        result.templates.emplace_back(key.first, key.second,
                                      fusion::aggregate_gallery(grouped[key]));
    return result;
}

}  // namespace farsight::pipeline
