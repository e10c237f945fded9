#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "farsight/fusion/fusion.hpp"
#include "farsight/pipeline/bench.hpp"
#include "farsight/pipeline/pipeline.hpp"
#include "farsight/pipeline/synthetic.hpp"
#include "farsight/pipeline/toy_encoder.hpp"
#include "farsight/store/template_store.hpp"

using namespace farsight;
using namespace farsight::pipeline;

TEST_SUITE("pipeline") {

TEST_CASE("toy encoder is deterministic and separates subjects") {
    SceneConfig scene;
    scene.num_subjects = 3;
    const auto s0 = render_sequence(0, scene);
    const auto s0b = render_sequence(0, scene);
    const auto s1 = render_sequence(1, scene);

    auto body_track = [](const SyntheticSequence& seq) {
        std::vector<BBox> track;
        for (const auto& frame : seq.detections)
            for (const auto& p : frame.proposals)
                if (p.bbox.kind == BoxKind::Body) {
                    track.push_back(p.bbox);
                    break;
                }
        return track;
    };

    const auto v0 = toy_encode(s0.frames, body_track(s0), Modality::Body, 64);
    const auto v0b = toy_encode(s0b.frames, body_track(s0b), Modality::Body, 64);
    const auto v1 = toy_encode(s1.frames, body_track(s1), Modality::Body, 64);
    CHECK(v0 == v0b);

    const double same = fusion::cosine(v0, v0b);
    const double cross = fusion::cosine(v0, v1);
    CHECK(same > cross);

    CHECK_THROWS_AS(toy_encode({}, {}, Modality::Body, 64), Error);
}

TEST_CASE("uniform frame encodes as the projection of a one-hot histogram") {
    ImageFrame gray;
    gray.width = 32;
    gray.height = 32;
    gray.channels = 1;
    gray.data.assign(32 * 32, 0.5);

    const BBox box(4, 4, 28, 28);
    const auto vec = toy_encode({gray}, {box}, Modality::Face, 48);

    // All 256 resized samples land in bin floor(0.5 * 64) = 32 with weight
    // 1/256 each -> histogram is one-hot at bin 32.
    const auto col = projection_column(Modality::Face, 48, 32);
    REQUIRE(vec.size() == col.size());
    for (std::size_t i = 0; i < vec.size(); ++i)
        CHECK(vec[i] == doctest::Approx(col[i]).epsilon(1e-12));
}

TEST_CASE("probe mode yields one template per modality per sequence") {
    SceneConfig scene;
    scene.num_subjects = 2;
    PipelineConfig cfg;
    std::vector<SequenceInput> seqs;
    for (int s = 0; s < 2; ++s) {
        const auto synth = render_sequence(s, scene);
        seqs.push_back({synth.subject_id, synth.frames, synth.detections});
    }
    const PipelineResult result = run_pipeline(seqs, cfg);
    CHECK(result.templates.size() == 6);  // 2 sequences x 3 modalities
    std::set<std::pair<std::string, int>> keys;
    for (const auto& t : result.templates) {
        CHECK(t.dim() == cfg.dims.of(t.modality));
        keys.insert({t.subject_id, static_cast<int>(t.modality)});
    }
    CHECK(keys.size() == 6);
    CHECK_FALSE(result.associations.empty());
}

TEST_CASE("gallery mode merges sequences per subject") {
    SceneConfig scene;
    scene.num_subjects = 1;
    PipelineConfig cfg;
    cfg.mode = EnrollMode::Gallery;
    std::vector<SequenceInput> seqs;
    for (int variant = 0; variant < 3; ++variant) {
        const auto synth = render_sequence(0, scene, variant);
        seqs.push_back({synth.subject_id, synth.frames, synth.detections});
    }
    const PipelineResult result = run_pipeline(seqs, cfg);
    CHECK(result.templates.size() == 3);  // one per modality

    // Gallery vector equals the mean of the per-sequence probe vectors.
    PipelineConfig probe_cfg;
    std::vector<std::vector<double>> per_seq;
    for (const auto& seq : seqs) {
        const auto r = run_pipeline({seq}, probe_cfg);
        for (const auto& t : r.templates)
            if (t.modality == Modality::Body) per_seq.push_back(t.vector);
    }
    const auto mean = fusion::aggregate_gallery(per_seq);
    for (const auto& t : result.templates)
        if (t.modality == Modality::Body)
            for (std::size_t i = 0; i < mean.size(); ++i)
                CHECK(t.vector[i] == doctest::Approx(mean[i]).epsilon(1e-12));
}

TEST_CASE("pipeline is deterministic end to end") {
    SceneConfig scene;
    scene.num_subjects = 2;
    PipelineConfig cfg;
    cfg.simulate_turbulence = true;
    cfg.turbulence.d_over_r0 = 1.5;
    cfg.turbulence.pupil_grid = 64;
    cfg.seed = 9;
    std::vector<SequenceInput> seqs;
    for (int s = 0; s < 2; ++s) {
        const auto synth = render_sequence(s, scene);
        seqs.push_back({synth.subject_id, synth.frames, synth.detections});
    }
    const auto a = run_pipeline(seqs, cfg);
    const auto b = run_pipeline(seqs, cfg);
    REQUIRE(a.templates.size() == b.templates.size());
    for (std::size_t i = 0; i < a.templates.size(); ++i)
        CHECK(a.templates[i].vector == b.templates[i].vector);

    // Byte-identical store files.
    const auto dir = std::filesystem::temp_directory_path();
    store::store_write(a.templates, dir / "fs_a.fstb");
    store::store_write(b.templates, dir / "fs_b.fstb");
    std::ifstream fa(dir / "fs_a.fstb", std::ios::binary);
    std::ifstream fb(dir / "fs_b.fstb", std::ios::binary);
    const std::vector<char> ba{std::istreambuf_iterator<char>(fa), {}};
    const std::vector<char> bb{std::istreambuf_iterator<char>(fb), {}};
    CHECK(ba == bb);
    std::filesystem::remove(dir / "fs_a.fstb");
    std::filesystem::remove(dir / "fs_b.fstb");
}

TEST_CASE("bench report arithmetic and schema") {
    BenchConfig cfg;
    cfg.frames_1080p = 2;
    cfg.frames_4k = 1;
    cfg.seed = 4;
    const BenchReport report = pipeline::bench(cfg);
    // The corpus rounds frame counts up to whole per-subject sequences.
    CHECK(report.frames_1080p >= 2);
    CHECK(report.frames_4k >= 1);
    const double sum = report.detect_track_s + report.restoration_s +
                       report.face_s + report.gait_s + report.body_s;
    CHECK(report.total_s == doctest::Approx(sum).epsilon(1e-9));
    const double frames = report.frames_1080p + report.frames_4k;
    CHECK(report.fps_overall ==
          doctest::Approx(frames / report.total_s).epsilon(1e-9));
    // Schema: the JSON form carries every documented key.
    const std::string json = report.to_json();
    for (const char* key :
         {"frames", "1080p", "4k", "module_seconds", "detection_tracking",
          "restoration", "face", "gait", "body", "total", "fps", "overall",
          "kernel_compare", "degrade_serial_s", "degrade_parallel_s"})
        CHECK(json.find(key) != std::string::npos);
}

}  // TEST_SUITE
