#include "farsight/pipeline/bench.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "farsight/assoc/assoc.hpp"
#include "farsight/pipeline/synthetic.hpp"
#include "farsight/pipeline/toy_encoder.hpp"
#include "farsight/turbsim/degrade.hpp"

namespace farsight::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Corpus {
    std::vector<SyntheticSequence> sequences;
    int total_frames = 0;
};

Corpus make_corpus(int frames, int width, int height, std::uint64_t seed) {
    SceneConfig scene;
    scene.num_subjects = 4;
    scene.frame_width = width;
    scene.frame_height = height;
    scene.num_frames = std::max(1, frames / scene.num_subjects);
    scene.seed = seed;
    Corpus corpus;
    for (int s = 0; s < scene.num_subjects; ++s) {
        corpus.sequences.push_back(render_sequence(s, scene));
        corpus.total_frames += scene.num_frames;
    }
    return corpus;
}

// Face-region crop used by the restoration slot; restoration targets
// detected faces, so timing covers face crops rather than full frames.
ImageFrame face_crop(const ImageFrame& frame, const BBox& face, int pad) {
    const int x0 = std::max(0, static_cast<int>(face.x_min) - pad);
    const int y0 = std::max(0, static_cast<int>(face.y_min) - pad);
    const int x1 =
        std::min<int>(frame.width, static_cast<int>(face.x_max) + pad);
    const int y1 =
        std::min<int>(frame.height, static_cast<int>(face.y_max) + pad);
    ImageFrame crop;
    crop.width = static_cast<std::uint32_t>(x1 - x0);
    crop.height = static_cast<std::uint32_t>(y1 - y0);
    crop.channels = frame.channels;
    crop.data.resize(static_cast<std::size_t>(crop.width) * crop.height *
                     crop.channels);
    for (std::uint32_t y = 0; y < crop.height; ++y)
        for (std::uint32_t x = 0; x < crop.width; ++x)
            for (std::uint32_t c = 0; c < crop.channels; ++c)
                crop.at(x, y, c) = frame.at(x0 + x, y0 + y, c);
    return crop;
}

struct StageTimes {
    double detect_track = 0.0;
    double restoration = 0.0;
    double face = 0.0;
    double gait = 0.0;
    double body = 0.0;
    double degrade_serial = 0.0;
    double degrade_parallel = 0.0;
};

StageTimes run_serialized(const Corpus& corpus, const BenchConfig& cfg,
                          const TemplateDims& dims) {
    StageTimes times;
    turbsim::TurbulenceConfig tc;
    tc.d_over_r0 = 1.5;
    tc.num_zernike = 10;
    tc.rng_seed = cfg.seed;
    // Keep the stand-in workload representative but desk-scale: coarser
    // anchor grid and a smaller pupil than the simulation defaults.
    tc.grid_spacing = 64;
    tc.pupil_grid = 64;

    for (const auto& seq : corpus.sequences) {
        // Detection ingest + tracking.
        auto t0 = Clock::now();
        std::vector<std::vector<BBox>> bodies(seq.frames.size());
        std::vector<BBox> body_track, face_track;
        for (std::size_t f = 0; f < seq.frames.size(); ++f)
            for (const auto& p : seq.detections[f].proposals)
                if (p.bbox.kind == BoxKind::Body) bodies[f].push_back(p.bbox);
        const auto ids = assoc::track_iou(bodies, 0.3);
        for (std::size_t f = 0; f < seq.frames.size(); ++f) {
            for (const auto& p : seq.detections[f].proposals) {
                if (p.bbox.kind == BoxKind::Body)
                    body_track.push_back(p.bbox);
                else
                    face_track.push_back(p.bbox);
            }
        }
        times.detect_track += seconds_since(t0);

        // Restoration slot: turbulence degradation of face crops.
        t0 = Clock::now();
        std::vector<ImageFrame> restored;
        for (std::size_t f = 0; f < seq.frames.size(); ++f) {
            const ImageFrame crop = face_crop(seq.frames[f], face_track[f], 8);
            const auto field =
                turbsim::sample_field(tc, static_cast<int>(crop.width),
                                      static_cast<int>(crop.height));
            restored.push_back(turbsim::degrade(crop, field, 17));
        }
        times.restoration += seconds_since(t0);

        if (cfg.kernel_compare && !restored.empty()) {
            const ImageFrame crop = face_crop(seq.frames[0], face_track[0], 8);
            const auto field =
                turbsim::sample_field(tc, static_cast<int>(crop.width),
                                      static_cast<int>(crop.height));
            t0 = Clock::now();
            const auto serial = turbsim::degrade_serial(crop, field, 17);
            times.degrade_serial += seconds_since(t0);
            t0 = Clock::now();
            const auto parallel = turbsim::degrade(crop, field, 17);
            times.degrade_parallel += seconds_since(t0);
            if (serial.data != parallel.data)
                throw Error(ErrorKind::Internal,
                            "bench: serial and parallel degrade disagree");
        }

        // Modality encoders over the tracked crops.
        auto time_encoder = [&](Modality m, std::size_t dim, double& slot,
                                const std::vector<BBox>& track) {
            const auto t = Clock::now();
            (void)toy_encode(seq.frames, track, m, dim);
            slot += seconds_since(t);
        };
        time_encoder(Modality::Face, dims.face, times.face, face_track);
        time_encoder(Modality::Gait, dims.gait, times.gait, body_track);
        time_encoder(Modality::Body, dims.body, times.body, body_track);
    }
    return times;
}

}  // namespace

BenchReport bench(const BenchConfig& config) {
    if (config.frames_1080p < 1 || config.frames_4k < 1)
        fail_invalid("bench: frame counts must be positive");
    const TemplateDims dims;

    const Corpus hd = make_corpus(config.frames_1080p, 1920, 1080, config.seed);
    const Corpus uhd = make_corpus(config.frames_4k, 3840, 2160, config.seed + 1);

    const StageTimes t_hd = run_serialized(hd, config, dims);
    const StageTimes t_uhd = run_serialized(uhd, config, dims);

    auto total = [](const StageTimes& t) {
        return t.detect_track + t.restoration + t.face + t.gait + t.body;
    };

    BenchReport report;
    report.frames_1080p = hd.total_frames;
    report.frames_4k = uhd.total_frames;
    report.detect_track_s = t_hd.detect_track + t_uhd.detect_track;
    report.restoration_s = t_hd.restoration + t_uhd.restoration;
    report.face_s = t_hd.face + t_uhd.face;
    report.gait_s = t_hd.gait + t_uhd.gait;
    report.body_s = t_hd.body + t_uhd.body;
    report.total_s = total(t_hd) + total(t_uhd);
    report.fps_1080p = hd.total_frames / total(t_hd);
    report.fps_4k = uhd.total_frames / total(t_uhd);
    report.fps_overall = (hd.total_frames + uhd.total_frames) / report.total_s;
    report.degrade_serial_s = t_hd.degrade_serial + t_uhd.degrade_serial;
    report.degrade_parallel_s = t_hd.degrade_parallel + t_uhd.degrade_parallel;
    return report;
}

std::string BenchReport::to_json() const {
    nlohmann::json doc;
    doc["frames"] = {{"1080p", frames_1080p}, {"4k", frames_4k}};
    doc["module_seconds"] = {{"detection_tracking", detect_track_s},
                             {"restoration", restoration_s},
                             {"face", face_s},
                             {"gait", gait_s},
                             {"body", body_s},
                             {"total", total_s}};
    doc["fps"] = {{"1080p", fps_1080p}, {"4k", fps_4k}, {"overall", fps_overall}};
    doc["kernel_compare"] = {{"degrade_serial_s", degrade_serial_s},
                             {"degrade_parallel_s", degrade_parallel_s}};
    return doc.dump(2);
}

std::string BenchReport::to_table() const {
    std::ostringstream out;
    out.precision(4);
    out << "Module                Seconds\n"
        << "Detection & Tracking  " << detect_track_s << '\n'
        << "Restoration           " << restoration_s << '\n'
        << "Face                  " << face_s << '\n'
        << "Gait                  " << gait_s << '\n'
        << "Body                  " << body_s << '\n'
        << "Total                 " << total_s << '\n'
        << "FPS 1080p             " << fps_1080p << '\n'
        << "FPS 4K                " << fps_4k << '\n'
        << "FPS overall           " << fps_overall << '\n';
    return out.str();
}

void write_bench_report(const BenchReport& report,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail_io("cannot write bench report: " + path.string());
    out << report.to_json() << '\n';
    if (!out) fail_io("short write: " + path.string());
}

}  // namespace farsight::pipeline
