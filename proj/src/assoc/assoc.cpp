#include "farsight/assoc/assoc.hpp"

#include <algorithm>
#include <cmath>

namespace farsight::assoc {
namespace {

double center_distance_normalized(const BBox& a, const BBox& b,
                                  const AssocConfig& cfg) {
    const double d = std::hypot(a.center_x() - b.center_x(),
                                a.center_y() - b.center_y());
    return d / std::hypot(cfg.image_width, cfg.image_height);
}

double pair_sum_weighted(const std::vector<Proposal>& proposals,
                         const std::vector<int>& set, const AssocConfig& cfg) {
    // Ordered pairs x != y with exp(dist) weighting; dist is the center
    // distance normalized by the image diagonal, so the weight is in [1, e].
    double sum = 0.0;
    for (int x : set)
        for (int y : set) {
            if (x == y) continue;
            const double w = std::exp(center_distance_normalized(
                proposals[x].bbox, proposals[y].bbox, cfg));
            sum += w * Embedding::sq_distance(proposals[x].embedding,
                                              proposals[y].embedding);
        }
    return sum;
}

}  // namespace

Proposal::Proposal(BBox box, Embedding emb,
                   std::optional<std::pair<double, double>> hook)
    : bbox(box), embedding(std::move(emb)), head_hook(hook) {
    if (bbox.kind == BoxKind::Face && head_hook.has_value())
        fail_invalid("Proposal: face proposals carry no head hook");
    if (bbox.kind == BoxKind::Body && !head_hook.has_value())
        fail_invalid("Proposal: body proposals require a head hook");
}

void AssocConfig::validate() const {
    if (!(eta > 0.0 && eta < 1.0)) fail_invalid("AssocConfig: eta outside (0,1)");
    if (delta <= 0.0) fail_invalid("AssocConfig: delta must be positive");
    if (mu < 0 || beta < 0 || sigma < 0 || tau < 0 || alpha < 0 || gamma < 0)
        fail_invalid("AssocConfig: loss weights must be nonnegative");
    if (rbf_bandwidth_embed <= 0.0)
        fail_invalid("AssocConfig: embedding bandwidth must be positive");
    if (!(visibility_threshold > 0.0 && visibility_threshold <= 1.0))
        fail_invalid("AssocConfig: visibility threshold outside (0,1]");
    if (image_width <= 0 || image_height <= 0)
        fail_invalid("AssocConfig: image size must be positive");
}

double iou(const BBox& a, const BBox& b) {
    const double ix = std::max(
        0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
    const double iy = std::max(
        0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

AssignedSets assign(const std::vector<Proposal>& proposals,
                    const GroundTruth& gt, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) fail_invalid("assign: eta outside (0,1)");
    const std::size_t s = gt.subjects.size();
    AssignedSets sets;
    sets.bodies.resize(s);
    sets.faces.resize(s);
    for (std::size_t p = 0; p < proposals.size(); ++p) {
        const Proposal& prop = proposals[p];
        const bool is_body = prop.bbox.kind == BoxKind::Body;
        int best = -1;
        double best_iou = eta;  // strict inequality against eta
        for (std::size_t k = 0; k < s; ++k) {
            double overlap;
            if (is_body) {
                overlap = iou(prop.bbox, gt.subjects[k].body_box);
            } else {
                if (!gt.subjects[k].face_box) continue;
                overlap = iou(prop.bbox, *gt.subjects[k].face_box);
            }
            if (overlap > best_iou) {
                best_iou = overlap;
                best = static_cast<int>(k);
            }
        }
        if (best >= 0) {
            (is_body ? sets.bodies : sets.faces)[best].push_back(
                static_cast<int>(p));
        }
    }
    return sets;
}

LossBreakdown pull_loss(const std::vector<Proposal>& proposals,
                        const AssignedSets& sets, const AssocConfig& cfg) {
    cfg.validate();
    const std::size_t s = sets.bodies.size();
    LossBreakdown out;
    if (s == 0) return out;
    for (std::size_t k = 0; k < s; ++k) {
        const auto& bk = sets.bodies[k];
        const auto& fk = sets.faces[k];
        if (bk.size() > 1)
            out.body_body += pair_sum_weighted(proposals, bk, cfg) /
                             (static_cast<double>(bk.size()) * bk.size());
        if (fk.size() > 1)
            out.face_face += pair_sum_weighted(proposals, fk, cfg) /
                             (static_cast<double>(fk.size()) * fk.size());
        if (!bk.empty() && !fk.empty()) {
            double sum = 0.0;
            for (int x : bk)
                for (int y : fk)
                    sum += Embedding::sq_distance(proposals[x].embedding,
                                                  proposals[y].embedding);
            out.body_face += sum / (static_cast<double>(bk.size()) * fk.size());
        }
    }
    out.body_body /= static_cast<double>(s);
    out.face_face /= static_cast<double>(s);
    out.body_face /= static_cast<double>(s);
    out.total = cfg.mu * out.body_face + cfg.beta * (out.body_body + out.face_face);
    return out;
}

LossBreakdown push_loss(const std::vector<Proposal>& proposals,
                        const AssignedSets& sets, const AssocConfig& cfg) {
    cfg.validate();
    const std::size_t s = sets.bodies.size();
    LossBreakdown out;
    if (s < 2) return out;

    auto hinge_sum = [&](const std::vector<int>& a, const std::vector<int>& b) {
        double sum = 0.0;
        for (int x : a)
            for (int y : b)
                sum += std::max(0.0, cfg.delta -
                                         Embedding::sq_distance(
                                             proposals[x].embedding,
                                             proposals[y].embedding));
        return sum;
    };

    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t l = 0; l < s; ++l) {
            if (l == k) continue;
            const auto& bk = sets.bodies[k];
            const auto& bl = sets.bodies[l];
            const auto& fk = sets.faces[k];
            const auto& fl = sets.faces[l];
            if (!bk.empty() && !bl.empty())
                out.body_body += hinge_sum(bk, bl) /
                                 (static_cast<double>(bk.size()) * bl.size());
            if (!fk.empty() && !fl.empty())
                out.face_face += hinge_sum(fk, fl) /
                                 (static_cast<double>(fk.size()) * fl.size());
            if (!bk.empty() && !fl.empty())
                out.body_face += hinge_sum(bk, fl) /
                                 (static_cast<double>(bk.size()) * fl.size());
        }
    }
    const double s2 = static_cast<double>(s) * s;  // printed 1/S^2 normalizer
    out.body_body /= s2;
    out.face_face /= s2;
    out.body_face /= s2;
    out.total = cfg.mu * out.body_face + cfg.beta * (out.body_body + out.face_face);
    return out;
}

double embedding_loss(const std::vector<Proposal>& proposals,
                      const AssignedSets& sets, const AssocConfig& cfg) {
    return cfg.sigma * pull_loss(proposals, sets, cfg).total +
           cfg.tau * push_loss(proposals, sets, cfg).total;
}

double smooth_l1(double x, double y) {
    const double d = std::abs(x - y);
    return d < 1.0 ? 0.5 * d * d : d - 0.5;
}

double hook_loss(const HookSet& hooks, const GroundTruth& gt,
                 const AssocConfig& cfg) {
    cfg.validate();
    const std::size_t s = gt.subjects.size();
    if (hooks.per_subject.size() != s)
        fail_invalid("hook_loss: subject count mismatch");
    if (s == 0) return 0.0;

    double l1 = 0.0, angular = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
        const SubjectTruth& subj = gt.subjects[k];
        const double ox = subj.body_box.center_x();
        const double oy = subj.body_box.center_y();
        const double gx = subj.head_x - ox;
        const double gy = subj.head_y - oy;
        const double gnorm = std::hypot(gx, gy);
        for (const auto& [hx, hy] : hooks.per_subject[k]) {
            l1 += smooth_l1(hx, subj.head_x) + smooth_l1(hy, subj.head_y);
            const double vx = hx - ox;
            const double vy = hy - oy;
            const double vnorm = std::hypot(vx, vy);
            if (vnorm < 1e-9 || gnorm < 1e-9)
                fail_invalid("hook_loss: degenerate body-center-to-hook vector");
            // |v x v*| / (|v| |v*|) = |sin(theta)|
            angular += std::abs(vx * gy - vy * gx) / (vnorm * gnorm);
        }
    }
    l1 /= static_cast<double>(s);
    angular /= static_cast<double>(s);
    return cfg.alpha * l1 + cfg.gamma * angular;
}

std::vector<std::vector<double>> association_metric(
    const std::vector<Proposal>& bodies, const std::vector<Proposal>& faces,
    const AssocConfig& cfg) {
    cfg.validate();
    std::vector<std::vector<double>> s(bodies.size(),
                                       std::vector<double>(faces.size(), 0.0));
    const double se2 = 2.0 * cfg.rbf_bandwidth_embed * cfg.rbf_bandwidth_embed;
    const int nb = static_cast<int>(bodies.size());
    const int nf = static_cast<int>(faces.size());
#pragma omp parallel for if (nb * nf > 4096)
    for (int i = 0; i < nb; ++i) {
        const Proposal& body = bodies[i];
        if (!body.head_hook)
            fail_invalid("association_metric: body proposal missing head hook");
        for (int j = 0; j < nf; ++j) {
            const Proposal& face = faces[j];
            const double me = std::exp(
                -Embedding::sq_distance(body.embedding, face.embedding) / se2);
            const double bw = cfg.rbf_bandwidth_hook > 0.0
                                  ? cfg.rbf_bandwidth_hook
                                  : 0.2 * face.bbox.diagonal();
            const double hx = body.head_hook->first - face.bbox.center_x();
            const double hy = body.head_hook->second - face.bbox.center_y();
            const double mh = std::exp(-(hx * hx + hy * hy) / (2.0 * bw * bw));
            const double p =
                (body.bbox.confidence + face.bbox.confidence) *
                (body.bbox.confidence + face.bbox.confidence) / 2.0;
            s[i][j] = p * mh + (1.0 - p) * me;
        }
    }
    return s;
}

std::vector<int> associate(const std::vector<std::vector<double>>& similarity,
                           const AssocConfig& cfg) {
    cfg.validate();
    const std::size_t nb = similarity.size();
    const std::size_t nf = nb == 0 ? 0 : similarity[0].size();
    std::vector<int> out(nf, kNotVisible);
    for (std::size_t j = 0; j < nf; ++j) {
        int best = kNotVisible;
        double best_s = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < nb; ++i) {
            if (similarity[i][j] > best_s) {  // strict: lowest index wins ties
                best_s = similarity[i][j];
                best = static_cast<int>(i);
            }
        }
        out[j] = (best >= 0 && best_s >= cfg.visibility_threshold)
                     ? best
                     : kNotVisible;
    }
    return out;
}

std::vector<std::vector<int>> track_iou(
    const std::vector<std::vector<BBox>>& frames, double iou_gate,
    int max_age) {
    if (!(iou_gate > 0.0 && iou_gate < 1.0))
        fail_invalid("track_iou: gate outside (0,1)");

    struct Track {
        int id;
        BBox last_box;
        int last_seen;
    };
    std::vector<Track> active;
    int next_id = 0;

    std::vector<std::vector<int>> ids(frames.size());
    for (std::size_t f = 0; f < frames.size(); ++f) {
        const auto& dets = frames[f];
        ids[f].assign(dets.size(), -1);

        // Drop stale tracks.
        std::erase_if(active, [&](const Track& t) {
            return static_cast<int>(f) - t.last_seen > max_age;
        });

        // Greedy matching by descending IoU above the gate.
        struct Cand {
            double overlap;
            int det;
            int track_slot;
        };
        std::vector<Cand> cands;
        for (std::size_t d = 0; d < dets.size(); ++d)
            for (std::size_t t = 0; t < active.size(); ++t) {
                const double o = iou(dets[d], active[t].last_box);
                if (o > iou_gate)
                    cands.push_back({o, static_cast<int>(d), static_cast<int>(t)});
            }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.overlap != b.overlap) return a.overlap > b.overlap;
            if (a.det != b.det) return a.det < b.det;
            return a.track_slot < b.track_slot;
        });
        std::vector<bool> det_used(dets.size(), false);
        std::vector<bool> track_used(active.size(), false);
        for (const Cand& c : cands) {
            if (det_used[c.det] || track_used[c.track_slot]) continue;
            det_used[c.det] = true;
            track_used[c.track_slot] = true;
            active[c.track_slot].last_box = dets[c.det];
            active[c.track_slot].last_seen = static_cast<int>(f);
            ids[f][c.det] = active[c.track_slot].id;
        }
        for (std::size_t d = 0; d < dets.size(); ++d) {
            if (det_used[d]) continue;
            active.push_back({next_id, dets[d], static_cast<int>(f)});
            ids[f][d] = next_id;
            ++next_id;
        }
    }
    return ids;
}

}  // namespace farsight::assoc
