#include "farsight/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace farsight::eval {
namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) fail_invalid(std::string(what) + ": non-finite score");
}

}  // namespace

std::pair<double, double> tar_at_far(const LabeledScores& scores,
                                     double far_target) {
    if (scores.impostor.empty())
        fail_invalid("tar_at_far: impostor population is empty");
    if (scores.genuine.empty())
        fail_invalid("tar_at_far: genuine population is empty");
    if (!(far_target > 0.0 && far_target < 1.0))
        fail_invalid("tar_at_far: far_target outside (0,1)");
    require_finite(scores.genuine, "tar_at_far");
    require_finite(scores.impostor, "tar_at_far");

    std::vector<double> imp = scores.impostor;
    std::sort(imp.begin(), imp.end());
    const double n = static_cast<double>(imp.size());

    // frac(impostor > imp[i]) = (size - upper_bound_index) / size; the sorted
    // order makes the count a suffix length, so scan ascending for the
    // smallest admissible threshold.
    double threshold = imp.back();
    for (std::size_t i = 0; i < imp.size(); ++i) {
        const double t = imp[i];
        const auto above = imp.end() - std::upper_bound(imp.begin(), imp.end(), t);
        if (static_cast<double>(above) / n <= far_target) {
            threshold = t;
            break;
        }
    }
    std::size_t accepted = 0;
    for (double g : scores.genuine)
        if (g > threshold) ++accepted;
    return {static_cast<double>(accepted) / scores.genuine.size(), threshold};
}

double rank_n(const SearchInstance& instance, int n) {
    const std::size_t probes = instance.scores.size();
    if (probes == 0) fail_invalid("rank_n: no probes");
    if (instance.mates.size() != probes)
        fail_invalid("rank_n: mates/scores shape mismatch");
    const std::size_t gallery = instance.scores[0].size();
    if (n < 1 || static_cast<std::size_t>(n) > gallery)
        fail_invalid("rank_n: n outside [1, gallery size]");

    std::size_t hits = 0;
    for (std::size_t p = 0; p < probes; ++p) {
        if (!instance.mates[p])
            fail_invalid("rank_n: unmated probe in closed-set evaluation");
        const auto& row = instance.scores[p];
        if (row.size() != gallery) fail_invalid("rank_n: ragged score matrix");
        require_finite(row, "rank_n");
        const int mate = *instance.mates[p];
        const double mate_score = row[static_cast<std::size_t>(mate)];
        // Pessimistic ties: every tied non-mate is ranked ahead of the mate.
        std::size_t ahead = 0;
        for (std::size_t g = 0; g < gallery; ++g) {
            if (static_cast<int>(g) == mate) continue;
            if (row[g] >= mate_score) ++ahead;
        }
        if (ahead < static_cast<std::size_t>(n)) ++hits;
    }
    return static_cast<double>(hits) / probes;
}

std::pair<double, double> fnir_at_fpir(const SearchInstance& instance,
                                       double fpir_target) {
    if (!(fpir_target > 0.0 && fpir_target < 1.0))
        fail_invalid("fnir_at_fpir: fpir_target outside (0,1)");
    const std::size_t probes = instance.scores.size();
    if (instance.mates.size() != probes)
        fail_invalid("fnir_at_fpir: mates/scores shape mismatch");

    std::vector<double> nonmated_top;
    std::vector<std::size_t> mated;
    for (std::size_t p = 0; p < probes; ++p) {
        const auto& row = instance.scores[p];
        if (row.empty()) fail_invalid("fnir_at_fpir: empty gallery row");
        require_finite(row, "fnir_at_fpir");
        if (instance.mates[p]) {
            mated.push_back(p);
        } else {
            nonmated_top.push_back(*std::max_element(row.begin(), row.end()));
        }
    }
    if (mated.empty() || nonmated_top.empty())
        fail_invalid("fnir_at_fpir: needs both mated and non-mated probes");

    std::sort(nonmated_top.begin(), nonmated_top.end());
    const double n = static_cast<double>(nonmated_top.size());
    double threshold = nonmated_top.back();
    for (std::size_t i = 0; i < nonmated_top.size(); ++i) {
        const double t = nonmated_top[i];
        const auto above = nonmated_top.end() -
                           std::upper_bound(nonmated_top.begin(),
                                            nonmated_top.end(), t);
        if (static_cast<double>(above) / n <= fpir_target) {
            threshold = t;
            break;
        }
    }

    std::size_t misses = 0;
    for (std::size_t p : mated) {
        const auto& row = instance.scores[p];
        const int mate = *instance.mates[p];
        const double mate_score = row[static_cast<std::size_t>(mate)];
        bool top1 = true;  // mate must strictly beat every non-mate
        for (std::size_t g = 0; g < row.size(); ++g) {
            if (static_cast<int>(g) == mate) continue;
            if (row[g] >= mate_score) {
                top1 = false;
                break;
            }
        }
        if (!(top1 && mate_score > threshold)) ++misses;
    }
    return {static_cast<double>(misses) / mated.size(), threshold};
}

}  // namespace farsight::eval
