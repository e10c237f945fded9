#include "farsight/core/types.hpp"

#include <cmath>

namespace farsight {

Modality modality_from_name(const std::string& name) {
    if (name == "face") return Modality::Face;
    if (name == "gait") return Modality::Gait;
    if (name == "body") return Modality::Body;
    fail_invalid("unknown modality: " + name);
}

FrameError validate_frame(const ImageFrame& frame) {
    if (frame.channels != 1 && frame.channels != 3)
        return FrameError::DimensionMismatch;
    const std::size_t expected = static_cast<std::size_t>(frame.width) *
                                 frame.height * frame.channels;
    if (frame.data.size() != expected) return FrameError::DimensionMismatch;
    for (double v : frame.data) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            return FrameError::SampleOutOfRange;
    }
    return FrameError::Ok;
}

void require_valid(const ImageFrame& frame) {
    switch (validate_frame(frame)) {
        case FrameError::Ok:
            return;
        case FrameError::DimensionMismatch:
            fail_invalid("ImageFrame: data length does not match w*h*c");
        case FrameError::SampleOutOfRange:
            fail_invalid("ImageFrame: sample outside [0,1] or non-finite");
    }
}

BBox::BBox(double x0, double y0, double x1, double y1, BoxKind k, double conf)
    : x_min(x0), y_min(y0), x_max(x1), y_max(y1), kind(k), confidence(conf) {
    if (!(x_min < x_max) || !(y_min < y_max))
        fail_invalid("BBox: min must be strictly less than max");
    if (!std::isfinite(conf) || conf < 0.0 || conf > 1.0)
        fail_invalid("BBox: confidence outside [0,1]");
}

double BBox::diagonal() const {
    return std::hypot(width(), height());
}

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) fail_invalid("Embedding: empty vector");
    double sq = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) fail_invalid("Embedding: non-finite component");
        sq += v * v;
    }
    const double norm = std::sqrt(sq);
    if (norm < 1e-12) fail_invalid("Embedding: zero vector cannot be normalized");
    for (double& v : values_) v /= norm;
}

double Embedding::sq_distance(const Embedding& a, const Embedding& b) {
    if (a.dim() != b.dim()) fail_invalid("Embedding: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a.values_[i] - b.values_[i];
        sq += d * d;
    }
    return sq;
}

Template::Template(std::string subject, Modality mod, std::vector<double> vec)
    : subject_id(std::move(subject)), modality(mod), vector(std::move(vec)) {
    if (subject_id.empty()) fail_invalid("Template: empty subject id");
    if (vector.empty()) fail_invalid("Template: empty feature vector");
    for (double v : vector)
        if (!std::isfinite(v)) fail_invalid("Template: non-finite element");
}

ModalityScores::ModalityScores(std::size_t probes, std::size_t gallery)
    : num_probes(probes), num_gallery(gallery) {
    for (std::size_t m = 0; m < kNumModalities; ++m) {
        scores[m].assign(probes * gallery, 0.0);
        present[m].assign(probes * gallery, 0);
    }
}

void ModalityScores::set(Modality m, std::size_t p, std::size_t g, double value) {
    if (!std::isfinite(value) || value < -1.0 || value > 1.0)
        fail_invalid("ModalityScores: score outside [-1,1]");
    scores[static_cast<int>(m)][p * num_gallery + g] = value;
    present[static_cast<int>(m)][p * num_gallery + g] = 1;
}

void ModalityScores::clear(Modality m, std::size_t p, std::size_t g) {
    scores[static_cast<int>(m)][p * num_gallery + g] = 0.0;
    present[static_cast<int>(m)][p * num_gallery + g] = 0;
}

void ModalityScores::validate() const {
    const std::size_t n = num_probes * num_gallery;
    for (std::size_t m = 0; m < kNumModalities; ++m) {
        if (scores[m].size() != n || present[m].size() != n)
            fail_invalid("ModalityScores: mask and matrix shapes disagree");
        for (std::size_t i = 0; i < n; ++i) {
            if (!present[m][i]) continue;
            const double v = scores[m][i];
            if (!std::isfinite(v) || v < -1.0 || v > 1.0)
                fail_invalid("ModalityScores: present score outside [-1,1]");
        }
    }
}

}  // namespace farsight
