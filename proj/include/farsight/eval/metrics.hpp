#pragma once

#include <map>
#include <optional>
#include <vector>

#include "farsight/core/error.hpp"

namespace farsight::eval {

struct LabeledScores {
    std::vector<double> genuine;   // mated comparison scores
    std::vector<double> impostor;  // non-mated comparison scores
};

// 1:N search scores: per probe a gallery score row and the mate's gallery
// index, or nullopt for a non-mated (distractor) probe.
struct SearchInstance {
    std::vector<std::vector<double>> scores;  // probes x gallery
    std::vector<std::optional<int>> mates;
};

struct EvalReport {
    double tar_at_far = 0.0;
    double far_target = 0.0;
    double threshold_used = 0.0;
    std::map<int, double> rank_n_accuracy;
    double fnir_at_fpir = 0.0;
    double fpir_target = 0.0;
    double open_set_threshold = 0.0;
    std::size_t num_genuine = 0, num_impostor = 0;
    std::size_t num_mated = 0, num_nonmated = 0;
};

// Threshold = smallest observed impostor score t with
// frac(impostor > t) <= far_target; returns (tar, t). Acceptance is strictly
// greater than the threshold.
std::pair<double, double> tar_at_far(const LabeledScores& scores,
                                     double far_target);

// Fraction of (all mated) probes whose mate survives the top-n cut under
// worst-case tie ordering.
double rank_n(const SearchInstance& instance, int n);

// Open-set identification. Threshold = smallest observed non-mated top-1
// score t with FPIR(t) <= fpir_target; a mated probe succeeds iff its mate
// strictly tops the gallery row and scores above t. Returns (fnir, t).
std::pair<double, double> fnir_at_fpir(const SearchInstance& instance,
                                       double fpir_target);

}  // namespace farsight::eval
