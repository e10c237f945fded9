#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "farsight/assoc/assoc.hpp"
#include "farsight/assoc/detections_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace farsight;
using namespace farsight::assoc;

namespace {

Proposal body_at(double x, double y, const Embedding& e, double conf = 1.0,
                 std::pair<double, double> hook = {0, 0}) {
    return Proposal(BBox(x, y, x + 60, y + 120, BoxKind::Body, conf), e, hook);
}

Proposal face_at(double x, double y, const Embedding& e, double conf = 1.0) {
    return Proposal(BBox(x, y, x + 30, y + 30, BoxKind::Face, conf), e,
                    std::nullopt);
}

}  // namespace

TEST_SUITE("assoc") {

TEST_CASE("iou basics") {
    const BBox a(0, 0, 2, 2), b(1, 1, 3, 3);
    CHECK(iou(a, a) == 1.0);
    CHECK(iou(a, BBox(5, 5, 6, 6)) == 0.0);
    CHECK(iou(a, b) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("assignment: strict threshold and max-IoU rule") {
    GroundTruth gt;
    SubjectTruth s1, s2;
    s1.body_box = BBox(0, 0, 100, 200);
    s2.body_box = BBox(300, 0, 400, 200);
    gt.subjects = {s1, s2};

    const Embedding e({1.0, 0.0});
    // Exactly on subject 1.
    std::vector<Proposal> props{
        Proposal(BBox(0, 0, 100, 200), e, std::pair{50.0, 20.0})};
    AssignedSets sets = assign(props, gt, 0.5);
    REQUIRE(sets.bodies.size() == 2);
    CHECK(sets.bodies[0] == std::vector<int>{0});
    CHECK(sets.bodies[1].empty());

    // IoU exactly eta is excluded (box with half the area, nested).
    props = {Proposal(BBox(0, 0, 100, 100), e, std::pair{50.0, 20.0})};
    sets = assign(props, gt, 0.5);
    CHECK(sets.bodies[0].empty());

    // Overlapping both subjects: max IoU wins.
    GroundTruth two;
    SubjectTruth t1, t2;
    t1.body_box = BBox(0, 0, 100, 100);
    t2.body_box = BBox(40, 0, 140, 100);
    two.subjects = {t1, t2};
    props = {Proposal(BBox(30, 0, 130, 100), e, std::pair{80.0, 20.0})};
    sets = assign(props, two, 0.3);
    CHECK(sets.bodies[0].empty());
    CHECK(sets.bodies[1] == std::vector<int>{0});
}

TEST_CASE("pull loss pinned fixtures") {
    AssocConfig cfg;
    const Embedding e({1.0, 0.0});
    const Embedding anti({-1.0, 0.0});

    // Identical embeddings within the subject -> zero everywhere.
    std::vector<Proposal> props{body_at(0, 0, e), body_at(5, 5, e),
                                face_at(10, 10, e)};
    AssignedSets sets;
    sets.bodies = {{0, 1}};
    sets.faces = {{2}};
    LossBreakdown pull = pull_loss(props, sets, cfg);
    CHECK(pull.body_body == 0.0);
    CHECK(pull.face_face == 0.0);
    CHECK(pull.body_face == 0.0);
    CHECK(pull.total == 0.0);

    // e vs -e at the same center: l_bb = (1/1)(1/4) * 2 * e^0 * 4 = 2.
    props = {body_at(0, 0, e), body_at(0, 0, anti)};
    sets.bodies = {{0, 1}};
    sets.faces = {{}};
    pull = pull_loss(props, sets, cfg);
    CHECK(pull.body_body == doctest::Approx(2.0).epsilon(1e-12));

    // Zero weights kill the total.
    AssocConfig zero = cfg;
    zero.mu = 0.0;
    zero.beta = 0.0;
    CHECK(pull_loss(props, sets, zero).total == 0.0);
}

TEST_CASE("push loss pinned fixtures") {
    AssocConfig cfg;
    cfg.delta = 0.5;
    const Embedding e({0.0, 1.0});

    // Two subjects, one body each, identical embeddings: hinge = delta on
    // both ordered pairs, normalized by S^2 = 4.
    std::vector<Proposal> props{body_at(0, 0, e), body_at(200, 0, e)};
    AssignedSets sets;
    sets.bodies = {{0}, {1}};
    sets.faces = {{}, {}};
    const LossBreakdown push = push_loss(props, sets, cfg);
    CHECK(push.body_body == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(push.face_face == 0.0);
    CHECK(push.body_face == 0.0);

    // Distances >= delta saturate the hinge.
    AssocConfig tight = cfg;
    tight.delta = 0.5;
    std::vector<Proposal> far{body_at(0, 0, Embedding({1.0, 0.0})),
                              body_at(200, 0, Embedding({-1.0, 0.0}))};
    CHECK(push_loss(far, sets, tight).total == 0.0);

    // Single subject: no pairs.
    sets.bodies = {{0}};
    sets.faces = {{}};
    CHECK(push_loss(props, sets, cfg).total == 0.0);
}

TEST_CASE("embedding loss combines pull and push") {
    AssocConfig cfg;
    cfg.delta = 0.5;
    const Embedding e({0.0, 1.0});
    std::vector<Proposal> props{body_at(0, 0, e), body_at(200, 0, e)};
    AssignedSets sets;
    sets.bodies = {{0}, {1}};
    sets.faces = {{}, {}};

    cfg.sigma = 1.0;
    cfg.tau = 0.0;
    CHECK(embedding_loss(props, sets, cfg) ==
          doctest::Approx(pull_loss(props, sets, cfg).total).epsilon(1e-12));
    cfg.sigma = 0.0;
    cfg.tau = 1.0;
    CHECK(embedding_loss(props, sets, cfg) ==
          doctest::Approx(push_loss(props, sets, cfg).total).epsilon(1e-12));
    cfg.sigma = 1.0;
    CHECK(embedding_loss(props, sets, cfg) ==
          doctest::Approx(pull_loss(props, sets, cfg).total + 0.25)
              .epsilon(1e-12));
}

TEST_CASE("smooth l1") {
    CHECK(smooth_l1(3.7, 3.7) == 0.0);
    CHECK(smooth_l1(0.3, 0.0) == doctest::Approx(0.045).epsilon(1e-12));
    CHECK(smooth_l1(2.0, 0.0) == doctest::Approx(1.5).epsilon(1e-12));
    // Continuity at |x-y| = 1.
    CHECK(smooth_l1(1.0 - 1e-9, 0.0) ==
          doctest::Approx(smooth_l1(1.0 + 1e-9, 0.0)).epsilon(1e-6));
}

TEST_CASE("hook loss pinned fixtures") {
    AssocConfig cfg;
    GroundTruth gt;
    SubjectTruth subj;
    subj.body_box = BBox(-10, -10, 10, 10);  // center (0,0)
    subj.head_x = 0.5;
    subj.head_y = 0.0;
    gt.subjects = {subj};

    // Exact prediction -> 0.
    HookSet exact;
    exact.per_subject = {{{0.5, 0.0}}};
    CHECK(hook_loss(exact, gt, cfg) == doctest::Approx(0.0).epsilon(1e-12));

    // h = (1,0), h* = (0.5,0): smooth-l1 part 0.125, parallel -> angular 0.
    HookSet parallel;
    parallel.per_subject = {{{1.0, 0.0}}};
    CHECK(hook_loss(parallel, gt, cfg) ==
          doctest::Approx(0.125).epsilon(1e-12));

    // Perpendicular vectors -> angular term exactly 1.
    HookSet perp;
    perp.per_subject = {{{0.0, 0.5}}};
    AssocConfig ang = cfg;
    ang.alpha = 0.0;
    CHECK(hook_loss(perp, gt, ang) == doctest::Approx(1.0).epsilon(1e-12));

    // Degenerate vector errors.
    HookSet degen;
    degen.per_subject = {{{0.0, 0.0}}};  // hook at the body center
    CHECK_THROWS_AS(hook_loss(degen, gt, cfg), Error);
}

TEST_CASE("association metric pinned fixtures") {
    AssocConfig cfg;
    const Embedding e({0.6, 0.8});

    // Identical embeddings, hook at face center, confidences 0.5: S = 1.
    std::vector<Proposal> faces{face_at(100, 100, e, 0.5)};
    std::vector<Proposal> bodies{
        body_at(90, 90, e, 0.5, {115.0, 115.0})};  // face center (115,115)
    auto s = association_metric(bodies, faces, cfg);
    REQUIRE(s.size() == 1);
    CHECK(s[0][0] == doctest::Approx(1.0).epsilon(1e-12));

    // Zero confidence: S = M_e exactly.
    std::vector<Proposal> faces0{face_at(100, 100, e, 0.0)};
    std::vector<Proposal> bodies0{body_at(90, 90, Embedding({1.0, 0.0}), 0.0,
                                          {0.0, 0.0})};
    const double sq =
        Embedding::sq_distance(bodies0[0].embedding, faces0[0].embedding);
    const double me = std::exp(-sq / (2.0 * cfg.rbf_bandwidth_embed *
                                      cfg.rbf_bandwidth_embed));
    s = association_metric(bodies0, faces0, cfg);
    CHECK(s[0][0] == doctest::Approx(me).epsilon(1e-12));

    // Empty face list: |B| x 0.
    s = association_metric(bodies, {}, cfg);
    REQUIRE(s.size() == 1);
    CHECK(s[0].empty());

    // Kernel range (0, 1].
    for (int trial = 0; trial < 50; ++trial) {
        std::mt19937_64 rng(300 + trial);
        const auto inst = fixtures::random_assoc_instance(rng);
        std::vector<Proposal> bs, fs;
        for (const auto& p : inst.proposals)
            (p.bbox.kind == BoxKind::Body ? bs : fs).push_back(p);
        if (bs.empty() || fs.empty()) continue;
        AssocConfig flat = inst.cfg;
        const auto mat = association_metric(bs, fs, flat);
        const auto ref = oracle::association_metric(bs, fs, flat);
        for (std::size_t i = 0; i < mat.size(); ++i)
            for (std::size_t j = 0; j < mat[i].size(); ++j)
                CHECK(mat[i][j] == doctest::Approx(ref[i][j]).epsilon(1e-12));
    }
}

TEST_CASE("associate: threshold, argmax, tie-break") {
    AssocConfig cfg;
    CHECK(associate({{0.99}, {0.50}}, cfg) == std::vector<int>{0});
    CHECK(associate({{0.97}, {0.50}}, cfg) == std::vector<int>{kNotVisible});
    CHECK(associate({{0.99}, {0.99}}, cfg) == std::vector<int>{0});
    // Exactly at the threshold counts as visible (>= rule).
    CHECK(associate({{0.98}}, cfg) == std::vector<int>{0});

    // Argmax invariance under positive scaling (threshold aside).
    std::vector<std::vector<double>> s{{0.4, 0.1}, {0.2, 0.9}};
    AssocConfig loose = cfg;
    loose.visibility_threshold = 1e-6;
    const auto base = associate(s, loose);
    for (auto& row : s)
        for (double& v : row) v *= 7.3;
    CHECK(associate(s, loose) == base);
}

TEST_CASE("losses are permutation invariant") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = fixtures::random_assoc_instance(rng);
        const LossBreakdown pull = pull_loss(inst.proposals, inst.sets, inst.cfg);
        const LossBreakdown push = push_loss(inst.proposals, inst.sets, inst.cfg);

        // Reverse the proposal order and remap the assigned sets.
        const int n = static_cast<int>(inst.proposals.size());
        std::vector<Proposal> rev(inst.proposals.rbegin(),
                                  inst.proposals.rend());
        AssignedSets remapped = inst.sets;
        for (auto& set : remapped.bodies)
            for (int& i : set) i = n - 1 - i;
        for (auto& set : remapped.faces)
            for (int& i : set) i = n - 1 - i;

        CHECK(pull_loss(rev, remapped, inst.cfg).total ==
              doctest::Approx(pull.total).epsilon(1e-12));
        CHECK(push_loss(rev, remapped, inst.cfg).total ==
              doctest::Approx(push.total).epsilon(1e-12));
    }
}

TEST_CASE("random instances match the naive oracles") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = fixtures::random_assoc_instance(rng);
        const auto pull = pull_loss(inst.proposals, inst.sets, inst.cfg);
        const auto pull_ref = oracle::pull_loss(inst.proposals, inst.sets, inst.cfg);
        CHECK(std::abs(pull.total - pull_ref.total) < 1e-9);
        const auto push = push_loss(inst.proposals, inst.sets, inst.cfg);
        const auto push_ref = oracle::push_loss(inst.proposals, inst.sets, inst.cfg);
        CHECK(std::abs(push.total - push_ref.total) < 1e-9);
        CHECK(std::abs(hook_loss(inst.hooks, inst.gt, inst.cfg) -
                       oracle::hook_loss(inst.hooks, inst.gt, inst.cfg)) < 1e-9);
    }
}

TEST_CASE("tracker basics") {
    // A box translating 1 px/frame keeps one id.
    std::vector<std::vector<BBox>> frames;
    for (int f = 0; f < 10; ++f)
        frames.push_back({BBox(f, 0, f + 50, 100)});
    auto ids = track_iou(frames, 0.3);
    for (const auto& frame : ids) CHECK(frame == ids[0]);

    // Two disjoint boxes get distinct ids.
    frames.clear();
    for (int f = 0; f < 5; ++f)
        frames.push_back({BBox(0, 0, 10, 10), BBox(500, 500, 510, 510)});
    ids = track_iou(frames, 0.3);
    CHECK(ids[0][0] != ids[0][1]);
    CHECK(ids[4][0] == ids[0][0]);
    CHECK(ids[4][1] == ids[0][1]);

    // Disappear past max_age: new id on return.
    frames.clear();
    frames.push_back({BBox(0, 0, 10, 10)});
    for (int f = 0; f < 4; ++f) frames.push_back({});
    frames.push_back({BBox(0, 0, 10, 10)});
    ids = track_iou(frames, 0.3, /*max_age=*/2);
    CHECK(ids[0][0] != ids[5][0]);
    // Within max_age the track survives the gap.
    ids = track_iou(frames, 0.3, /*max_age=*/10);
    CHECK(ids[0][0] == ids[5][0]);
}

TEST_CASE("proposal invariants and detections JSON round trip") {
    const Embedding e({1.0, 0.0});
    CHECK_THROWS_AS(
        Proposal(BBox(0, 0, 10, 10, BoxKind::Face), e, std::pair{1.0, 1.0}),
        Error);
    CHECK_THROWS_AS(Proposal(BBox(0, 0, 10, 10, BoxKind::Body), e), Error);

    std::vector<FrameDetections> frames(2);
    frames[0].frame_index = 0;
    frames[0].proposals.push_back(body_at(10, 20, e, 0.9, {40.0, 35.0}));
    frames[1].frame_index = 1;
    frames[1].proposals.push_back(face_at(12, 22, e, 0.8));

    const auto path =
        std::filesystem::temp_directory_path() / "fs_detections.json";
    write_detections(frames, path);
    const auto back = read_detections(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].proposals[0].bbox.x_min == 10.0);
    CHECK(back[0].proposals[0].head_hook == std::pair{40.0, 35.0});
    CHECK(back[1].proposals[0].bbox.kind == BoxKind::Face);
    CHECK(back[1].proposals[0].embedding.values() == e.values());
    std::filesystem::remove(path);
}

}  // TEST_SUITE
