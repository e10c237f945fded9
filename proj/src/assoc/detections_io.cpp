#include "farsight/assoc/detections_io.hpp"

#include <fstream>

#include <json.hpp>

namespace farsight::assoc {

using nlohmann::json;

std::vector<FrameDetections> read_detections(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open detections file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail_invalid("malformed detections JSON: " + std::string(e.what()));
    }
    if (!doc.contains("frames") || !doc["frames"].is_array())
        fail_invalid("detections JSON: missing \"frames\" array");

    std::vector<FrameDetections> out;
    try {
        for (const auto& jf : doc["frames"]) {
            FrameDetections frame;
            frame.frame_index = jf.at("frame_index").get<std::uint32_t>();
            for (const auto& jd : jf.at("detections")) {
                const std::string kind = jd.at("kind").get<std::string>();
                const auto& jb = jd.at("bbox");
                const BoxKind bk =
                    kind == "body" ? BoxKind::Body
                    : kind == "face"
                        ? BoxKind::Face
                        : throw Error(ErrorKind::InvalidInput,
                                      "detections JSON: bad kind " + kind);
                BBox box(jb.at(0).get<double>(), jb.at(1).get<double>(),
                         jb.at(2).get<double>(), jb.at(3).get<double>(), bk,
                         jd.at("confidence").get<double>());
                Embedding emb(jd.at("embedding").get<std::vector<double>>());
                std::optional<std::pair<double, double>> hook;
                if (jd.contains("head_hook") && !jd["head_hook"].is_null())
                    hook = {jd["head_hook"].at(0).get<double>(),
                            jd["head_hook"].at(1).get<double>()};
                frame.proposals.emplace_back(box, std::move(emb), hook);
            }
            out.push_back(std::move(frame));
        }
    } catch (const json::exception& e) {
        fail_invalid("detections JSON: " + std::string(e.what()));
    }
    return out;
}

void write_detections(const std::vector<FrameDetections>& frames,
                      const std::filesystem::path& path) {
    json doc;
    doc["frames"] = json::array();
    for (const auto& frame : frames) {
        json jf;
        jf["frame_index"] = frame.frame_index;
        jf["detections"] = json::array();
        for (const auto& p : frame.proposals) {
            json jd;
            jd["kind"] = p.bbox.kind == BoxKind::Body ? "body" : "face";
            jd["bbox"] = {p.bbox.x_min, p.bbox.y_min, p.bbox.x_max, p.bbox.y_max};
            jd["confidence"] = p.bbox.confidence;
            jd["embedding"] = p.embedding.values();
            if (p.head_hook)
                jd["head_hook"] = {p.head_hook->first, p.head_hook->second};
            jf["detections"].push_back(std::move(jd));
        }
        doc["frames"].push_back(std::move(jf));
    }
    std::ofstream out(path);
    if (!out) fail_io("cannot write detections file: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) fail_io("short write: " + path.string());
}

}  // namespace farsight::assoc
