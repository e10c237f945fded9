#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "farsight/core/types.hpp"

namespace farsight::fusion {

struct GalleryEntry {
    std::string subject_id;
    // Indexed by Modality; a modality may be absent for a subject.
    std::array<std::optional<std::vector<double>>, kNumModalities> features;

    bool has(Modality m) const {
        return features[static_cast<int>(m)].has_value();
    }
};

struct FusionConfig {
    std::array<double, kNumModalities> modality_weights = {1.0 / 3, 1.0 / 3,
                                                           1.0 / 3};
    double imputed_value = 0.0;
    double padding_threshold = 0.25;  // face-only exclusion fraction

    void validate() const;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Element-wise mean of equally sized vectors.
std::vector<double> aggregate_gallery(
    const std::vector<std::vector<double>>& vectors);

// True when the fraction of the body box's vertical extent falling outside
// [0, image_h] exceeds the threshold; such media is face-only imagery.
bool is_face_only(const BBox& body_bbox, double image_w, double image_h,
                  double padding_threshold);

// Weighted sum over all three modality slots, absent scores imputed first.
std::vector<double> fuse(const ModalityScores& scores, const FusionConfig& cfg);

// Score matrix CSV: header row = gallery subject ids, first column = probe
// ids, empty cell = missing score.
struct ScoreTable {
    std::vector<std::string> probe_ids;
    std::vector<std::string> gallery_ids;
    std::vector<std::optional<double>> cells;  // row-major probes x gallery

    std::optional<double>& at(std::size_t p, std::size_t g) {
        return cells[p * gallery_ids.size() + g];
    }
    const std::optional<double>& at(std::size_t p, std::size_t g) const {
        return cells[p * gallery_ids.size() + g];
    }
};

ScoreTable read_score_csv(const std::filesystem::path& path);
void write_score_csv(const ScoreTable& table, const std::filesystem::path& path);
ScoreTable read_score_json(const std::filesystem::path& path);
void write_score_json(const ScoreTable& table,
                      const std::filesystem::path& path);

}  // namespace farsight::fusion
