#include "farsight/fusion/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace farsight::fusion {

void FusionConfig::validate() const {
    double sum = 0.0;
    for (double w : modality_weights) {
        if (w < 0.0) fail_invalid("FusionConfig: negative modality weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        fail_invalid("FusionConfig: weights must sum to 1");
    if (padding_threshold < 0.0 || padding_threshold > 1.0)
        fail_invalid("FusionConfig: padding threshold outside [0,1]");
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) fail_invalid("cosine: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) fail_invalid("cosine: zero vector");
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<double> aggregate_gallery(
    const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) fail_invalid("aggregate_gallery: empty input");
    const std::size_t dim = vectors[0].size();
    std::vector<double> mean(dim, 0.0);
    for (const auto& v : vectors) {
        if (v.size() != dim) fail_invalid("aggregate_gallery: length mismatch");
        for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
    }
    for (double& m : mean) m /= static_cast<double>(vectors.size());
    return mean;
}

bool is_face_only(const BBox& body_bbox, double /*image_w*/, double image_h,
                  double padding_threshold) {
    const double extent = body_bbox.height();
    const double above = std::max(0.0, -body_bbox.y_min);
    const double below = std::max(0.0, body_bbox.y_max - image_h);
    return (above + below) / extent > padding_threshold;
}

std::vector<double> fuse(const ModalityScores& scores, const FusionConfig& cfg) {
    cfg.validate();
    scores.validate();
    const std::size_t n = scores.num_probes * scores.num_gallery;
    std::vector<double> fused(n, 0.0);
    const std::size_t rows = scores.num_probes;
    const std::size_t cols = scores.num_gallery;
#pragma omp parallel for if (rows * cols > 65536)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(rows); ++p) {
        for (std::size_t g = 0; g < cols; ++g) {
            const std::size_t i = static_cast<std::size_t>(p) * cols + g;
            double acc = 0.0;
            for (std::size_t m = 0; m < kNumModalities; ++m) {
                const double v =
                    scores.present[m][i] ? scores.scores[m][i] : cfg.imputed_value;
                acc += cfg.modality_weights[m] * v;
            }
            fused[i] = acc;
        }
    }
    return fused;
}

// ---- Score table I/O ----

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

ScoreTable read_score_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open score CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line))
        fail_invalid("score CSV: empty file " + path.string());
    auto header = split_csv_line(line);
    if (header.size() < 2)
        fail_invalid("score CSV: header needs at least one gallery column");

    ScoreTable table;
    table.gallery_ids.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            fail_invalid("score CSV: ragged row in " + path.string());
        table.probe_ids.push_back(fields[0]);
        for (std::size_t g = 1; g < fields.size(); ++g) {
            if (fields[g].empty()) {
                table.cells.emplace_back(std::nullopt);
            } else {
                try {
                    table.cells.emplace_back(std::stod(fields[g]));
                } catch (const std::exception&) {
                    fail_invalid("score CSV: bad number \"" + fields[g] + "\"");
                }
            }
        }
    }
    return table;
}

void write_score_csv(const ScoreTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail_io("cannot write score CSV: " + path.string());
    out << "probe_id";
    for (const auto& g : table.gallery_ids) out << ',' << csv_escape(g);
    out << '\n';
    out.precision(17);
    for (std::size_t p = 0; p < table.probe_ids.size(); ++p) {
        out << csv_escape(table.probe_ids[p]);
        for (std::size_t g = 0; g < table.gallery_ids.size(); ++g) {
            out << ',';
            if (table.at(p, g)) out << *table.at(p, g);
        }
        out << '\n';
    }
    if (!out) fail_io("short write: " + path.string());
}

ScoreTable read_score_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open score JSON: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail_invalid("malformed score JSON: " + std::string(e.what()));
    }
    ScoreTable table;
    try {
        table.probe_ids = doc.at("probe_ids").get<std::vector<std::string>>();
        table.gallery_ids = doc.at("gallery_ids").get<std::vector<std::string>>();
        for (const auto& row : doc.at("scores")) {
            for (const auto& cell : row) {
                if (cell.is_null())
                    table.cells.emplace_back(std::nullopt);
                else
                    table.cells.emplace_back(cell.get<double>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail_invalid("score JSON: " + std::string(e.what()));
    }
    if (table.cells.size() != table.probe_ids.size() * table.gallery_ids.size())
        fail_invalid("score JSON: shape mismatch");
    return table;
}

void write_score_json(const ScoreTable& table,
                      const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["probe_ids"] = table.probe_ids;
    doc["gallery_ids"] = table.gallery_ids;
    doc["scores"] = nlohmann::json::array();
    for (std::size_t p = 0; p < table.probe_ids.size(); ++p) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t g = 0; g < table.gallery_ids.size(); ++g) {
            if (table.at(p, g))
                row.push_back(*table.at(p, g));
            else
                row.push_back(nullptr);
        }
        doc["scores"].push_back(std::move(row));
    }
    std::ofstream out(path);
    if (!out) fail_io("cannot write score JSON: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) fail_io("short write: " + path.string());
}

}  // namespace farsight::fusion
