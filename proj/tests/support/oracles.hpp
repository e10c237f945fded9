// Independent reference implementations used to cross-check the library.
// Everything here is written from the defining formulas with naive
// algorithms (quadrature, double loops, explicit enumeration) and shares no
// code with src/.
#pragma once

#include <optional>
#include <vector>

#include "farsight/assoc/assoc.hpp"
#include "farsight/eval/metrics.hpp"

namespace oracle {

// Noll index -> (n, m, is_sin) via explicit enumeration of the Noll ordering.
struct Mode {
    int n;
    int m;
    bool is_sin;
};
Mode noll_mode(int j);

// Kolmogorov inter-modal covariance E[a_j a_j2] by composite-Simpson
// quadrature of the Bessel covariance integral (substitution x = t^3 tames
// the x^(-14/3) endpoint).
double noll_covariance(int j, int j2, double d_over_r0);

// ---- association losses: naive double-loop restatements of the equations.

farsight::assoc::LossBreakdown pull_loss(
    const std::vector<farsight::assoc::Proposal>& proposals,
    const farsight::assoc::AssignedSets& sets,
    const farsight::assoc::AssocConfig& cfg);

farsight::assoc::LossBreakdown push_loss(
    const std::vector<farsight::assoc::Proposal>& proposals,
    const farsight::assoc::AssignedSets& sets,
    const farsight::assoc::AssocConfig& cfg);

double hook_loss(const farsight::assoc::HookSet& hooks,
                 const farsight::assoc::GroundTruth& gt,
                 const farsight::assoc::AssocConfig& cfg);

std::vector<std::vector<double>> association_metric(
    const std::vector<farsight::assoc::Proposal>& bodies,
    const std::vector<farsight::assoc::Proposal>& faces,
    const farsight::assoc::AssocConfig& cfg);

// ---- evaluation metrics: brute-force enumeration over candidate thresholds.

std::pair<double, double> tar_at_far(const farsight::eval::LabeledScores& s,
                                     double far_target);
double rank_n(const farsight::eval::SearchInstance& instance, int n);
std::pair<double, double> fnir_at_fpir(
    const farsight::eval::SearchInstance& instance, double fpir_target);

}  // namespace oracle
