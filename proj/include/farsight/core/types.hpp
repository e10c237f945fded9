#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "farsight/core/error.hpp"

namespace farsight {

enum class Modality : std::uint8_t { Face = 0, Gait = 1, Body = 2 };

inline const char* modality_name(Modality m) {
    switch (m) {
        case Modality::Face: return "face";
        case Modality::Gait: return "gait";
        case Modality::Body: return "body";
    }
    return "?";
}

Modality modality_from_name(const std::string& name);

// Row-major real-valued image, samples in [0,1]. Conversion from integer
// sample formats happens only at file I/O boundaries.
struct ImageFrame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 1;  // 1 or 3
    std::vector<double> data;    // width*height*channels, row-major
    std::uint32_t frame_index = 0;

    double at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double& at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

enum class FrameError { Ok, DimensionMismatch, SampleOutOfRange };

FrameError validate_frame(const ImageFrame& frame);

// Throwing variant used at construction boundaries.
void require_valid(const ImageFrame& frame);

enum class BoxKind { Body, Face };

struct BBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    BoxKind kind = BoxKind::Body;
    double confidence = 1.0;

    BBox() = default;
    BBox(double x0, double y0, double x1, double y1, BoxKind k = BoxKind::Body,
         double conf = 1.0);

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    double center_x() const { return 0.5 * (x_min + x_max); }
    double center_y() const { return 0.5 * (y_min + y_max); }
    double diagonal() const;
};

// L2-normalized at construction; zero vectors are rejected.
class Embedding {
public:
    static constexpr std::size_t kDefaultDim = 32;

    explicit Embedding(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t dim() const { return values_.size(); }

    // Squared Euclidean distance ||a - b||^2.
    static double sq_distance(const Embedding& a, const Embedding& b);

private:
    std::vector<double> values_;
};

struct Template {
    std::string subject_id;
    Modality modality = Modality::Face;
    std::vector<double> vector;

    Template() = default;
    Template(std::string subject, Modality mod, std::vector<double> vec);

    std::size_t dim() const { return vector.size(); }
};

// Default per-modality template dimensions (face / gait / body).
struct TemplateDims {
    std::uint32_t face = 512;
    std::uint32_t gait = 8704;
    std::uint32_t body = 6144;

    std::uint32_t of(Modality m) const {
        switch (m) {
            case Modality::Face: return face;
            case Modality::Gait: return gait;
            case Modality::Body: return body;
        }
        return 0;
    }
};

constexpr std::size_t kNumModalities = 3;

// Probe x gallery cosine score matrices per modality with a presence mask.
// Scores are in [-1,1]; absent entries are ignored by consumers.
struct ModalityScores {
    std::size_t num_probes = 0;
    std::size_t num_gallery = 0;
    // [modality][probe * num_gallery + gallery]
    std::vector<double> scores[kNumModalities];
    std::vector<std::uint8_t> present[kNumModalities];

    ModalityScores() = default;
    ModalityScores(std::size_t probes, std::size_t gallery);

    double score(Modality m, std::size_t p, std::size_t g) const {
        return scores[static_cast<int>(m)][p * num_gallery + g];
    }
    bool is_present(Modality m, std::size_t p, std::size_t g) const {
        return present[static_cast<int>(m)][p * num_gallery + g] != 0;
    }
    void set(Modality m, std::size_t p, std::size_t g, double value);
    void clear(Modality m, std::size_t p, std::size_t g);

    void validate() const;
};

}  // namespace farsight
