// Seeded random fixture generators shared by the unit and acceptance suites.
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "farsight/assoc/assoc.hpp"
#include "farsight/eval/metrics.hpp"

namespace fixtures {

struct AssocInstance {
    std::vector<farsight::assoc::Proposal> proposals;
    farsight::assoc::GroundTruth gt;
    farsight::assoc::AssignedSets sets;
    farsight::assoc::HookSet hooks;
    farsight::assoc::AssocConfig cfg;
};

// Random association instance: <= max_subjects subjects, <= max_proposals
// proposals scattered around the subjects' ground-truth boxes.
inline AssocInstance random_assoc_instance(std::mt19937_64& rng,
                                           int max_subjects = 4,
                                           int max_proposals = 6) {
    using namespace farsight;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> nsub(1, max_subjects);
    AssocInstance inst;
    inst.cfg.image_width = 640;
    inst.cfg.image_height = 480;
    inst.cfg.delta = 0.5 + unit(rng);
    inst.cfg.mu = unit(rng);
    inst.cfg.beta = unit(rng);
    inst.cfg.sigma = unit(rng);
    inst.cfg.tau = unit(rng);
    inst.cfg.alpha = unit(rng);
    inst.cfg.gamma = unit(rng);

    const int s = nsub(rng);
    for (int k = 0; k < s; ++k) {
        assoc::SubjectTruth subj;
        const double x = 40.0 + 500.0 * unit(rng);
        const double y = 40.0 + 300.0 * unit(rng);
        subj.body_box = BBox(x, y, x + 60, y + 120, BoxKind::Body);
        subj.face_box = BBox(x + 15, y + 5, x + 45, y + 35, BoxKind::Face);
        subj.head_x = x + 30 + 4.0 * (unit(rng) - 0.5);
        subj.head_y = y + 15 + 4.0 * (unit(rng) - 0.5);
        inst.gt.subjects.push_back(subj);
        // 1..3 predicted hooks per subject, near the head.
        std::vector<std::pair<double, double>> hooks;
        const int nh = 1 + static_cast<int>(unit(rng) * 3);
        for (int h = 0; h < nh; ++h)
            hooks.emplace_back(subj.head_x + 6.0 * (unit(rng) - 0.5),
                               subj.head_y + 6.0 * (unit(rng) - 0.5));
        inst.hooks.per_subject.push_back(std::move(hooks));
    }

    std::uniform_int_distribution<int> nprop(1, max_proposals);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int np = nprop(rng);
    for (int p = 0; p < np; ++p) {
        const int k = static_cast<int>(unit(rng) * s);
        const auto& subj = inst.gt.subjects[k];
        const bool is_body = unit(rng) < 0.6;
        const BBox& ref = is_body ? subj.body_box : *subj.face_box;
        const double jx = 10.0 * (unit(rng) - 0.5);
        const double jy = 10.0 * (unit(rng) - 0.5);
        BBox box(ref.x_min + jx, ref.y_min + jy, ref.x_max + jx, ref.y_max + jy,
                 is_body ? BoxKind::Body : BoxKind::Face, unit(rng));
        std::vector<double> emb(8);
        for (double& v : emb) v = gauss(rng);
        std::optional<std::pair<double, double>> hook;
        if (is_body) hook = {subj.head_x + jx, subj.head_y + jy};
        inst.proposals.emplace_back(box, Embedding(std::move(emb)), hook);
    }
    inst.sets = assoc::assign(inst.proposals, inst.gt, inst.cfg.eta);
    return inst;
}

// Random 1:N search instance with >= 1 mated probe, and non-mated probes
// when allow_nonmated is set. Scores drawn uniformly with deliberate ties
// (quantized to a small grid) to exercise tie-handling.
inline farsight::eval::SearchInstance random_search_instance(
    std::mt19937_64& rng, int max_probes = 10, int max_gallery = 10,
    bool allow_nonmated = true) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    farsight::eval::SearchInstance inst;
    const int gallery = 2 + static_cast<int>(unit(rng) * (max_gallery - 1));
    const int probes = 1 + static_cast<int>(unit(rng) * max_probes);
    bool has_mated = false;
    for (int p = 0; p < probes; ++p) {
        std::vector<double> row(gallery);
        for (double& x : row)
            x = std::floor(unit(rng) * 8.0) / 8.0;  // ties on purpose
        inst.scores.push_back(std::move(row));
        const bool mated = !allow_nonmated || unit(rng) < 0.7 ||
                           (p == probes - 1 && !has_mated);
        if (mated) {
            inst.mates.push_back(static_cast<int>(unit(rng) * gallery));
            has_mated = true;
        } else {
            inst.mates.push_back(std::nullopt);
        }
    }
    return inst;
}

}  // namespace fixtures
