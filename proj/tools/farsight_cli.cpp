// farsight: command-line front end for simulation, association, enrollment,
// scoring, fusion, evaluation, and benchmarking.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "farsight/assoc/assoc.hpp"
#include "farsight/assoc/detections_io.hpp"
#include "farsight/core/image_io.hpp"
#include "farsight/eval/metrics.hpp"
#include "farsight/fusion/fusion.hpp"
#include "farsight/pipeline/bench.hpp"
#include "farsight/pipeline/pipeline.hpp"
#include "farsight/pipeline/synthetic.hpp"
#include "farsight/store/template_store.hpp"
#include "farsight/turbsim/degrade.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace farsight;

namespace {

std::vector<fs::path> list_images(const fs::path& dir) {
    if (!fs::is_directory(dir)) fail_io("not a directory: " + dir.string());
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension().string();
        if (ext == ".png" || ext == ".pgm" || ext == ".ppm")
            paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) fail_io("no images found in " + dir.string());
    return paths;
}

json load_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail_invalid("malformed JSON in " + path.string() + ": " + e.what());
    }
    return doc;
}

void save_json(const json& doc, const fs::path& path) {
    std::ofstream out(path);
    if (!out) fail_io("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) fail_io("short write: " + path.string());
}

// Optional JSON config file overriding defaults; keys are documented in the
// README (turbulence.*, assoc.*, fusion.*, dims.*, pipeline.*).
struct GlobalConfig {
    turbsim::TurbulenceConfig turbulence;
    assoc::AssocConfig assoc_cfg;
    fusion::FusionConfig fusion_cfg;
    TemplateDims dims;
    double iou_gate = 0.3;
};

GlobalConfig load_config(const std::string& path, std::uint64_t seed) {
    GlobalConfig cfg;
    cfg.turbulence.rng_seed = seed;
    if (path.empty()) return cfg;
    const json doc = load_json(path);
    try {
        if (doc.contains("turbulence")) {
            const auto& t = doc["turbulence"];
            auto get = [&](const char* key, double& field) {
                if (t.contains(key)) field = t[key].get<double>();
            };
            get("cn2", cfg.turbulence.cn2);
            get("path_length", cfg.turbulence.path_length);
            get("wavelength", cfg.turbulence.wavelength);
            get("aperture_diameter", cfg.turbulence.aperture_diameter);
            get("d_over_r0", cfg.turbulence.d_over_r0);
            get("correlation_length", cfg.turbulence.correlation_length);
            get("pixels_per_lod", cfg.turbulence.pixels_per_lod);
            if (t.contains("num_zernike"))
                cfg.turbulence.num_zernike = t["num_zernike"].get<int>();
            if (t.contains("grid_spacing"))
                cfg.turbulence.grid_spacing = t["grid_spacing"].get<int>();
            if (t.contains("psf_size"))
                cfg.turbulence.psf_size = t["psf_size"].get<int>();
        }
        if (doc.contains("assoc")) {
            const auto& a = doc["assoc"];
            auto get = [&](const char* key, double& field) {
                if (a.contains(key)) field = a[key].get<double>();
            };
            get("eta", cfg.assoc_cfg.eta);
            get("delta", cfg.assoc_cfg.delta);
            get("mu", cfg.assoc_cfg.mu);
            get("beta", cfg.assoc_cfg.beta);
            get("sigma", cfg.assoc_cfg.sigma);
            get("tau", cfg.assoc_cfg.tau);
            get("alpha", cfg.assoc_cfg.alpha);
            get("gamma", cfg.assoc_cfg.gamma);
            get("rbf_bandwidth_embed", cfg.assoc_cfg.rbf_bandwidth_embed);
            get("rbf_bandwidth_hook", cfg.assoc_cfg.rbf_bandwidth_hook);
            get("visibility_threshold", cfg.assoc_cfg.visibility_threshold);
            get("image_width", cfg.assoc_cfg.image_width);
            get("image_height", cfg.assoc_cfg.image_height);
        }
        if (doc.contains("fusion")) {
            const auto& f = doc["fusion"];
            if (f.contains("modality_weights")) {
                const auto w = f["modality_weights"].get<std::vector<double>>();
                if (w.size() != kNumModalities)
                    fail_invalid("config: modality_weights needs 3 entries");
                std::copy(w.begin(), w.end(),
                          cfg.fusion_cfg.modality_weights.begin());
            }
            if (f.contains("imputed_value"))
                cfg.fusion_cfg.imputed_value = f["imputed_value"].get<double>();
            if (f.contains("padding_threshold"))
                cfg.fusion_cfg.padding_threshold =
                    f["padding_threshold"].get<double>();
        }
        if (doc.contains("dims")) {
            const auto& d = doc["dims"];
            if (d.contains("face")) cfg.dims.face = d["face"].get<std::uint32_t>();
            if (d.contains("gait")) cfg.dims.gait = d["gait"].get<std::uint32_t>();
            if (d.contains("body")) cfg.dims.body = d["body"].get<std::uint32_t>();
        }
        if (doc.contains("pipeline") && doc["pipeline"].contains("iou_gate"))
            cfg.iou_gate = doc["pipeline"]["iou_gate"].get<double>();
    } catch (const json::exception& e) {
        fail_invalid("config: " + std::string(e.what()));
    }
    return cfg;
}

json turbulence_sidecar(const turbsim::TurbulenceConfig& tc) {
    return json{{"cn2", tc.cn2},
                {"path_length", tc.path_length},
                {"wavelength", tc.wavelength},
                {"aperture_diameter", tc.aperture_diameter},
                {"d_over_r0", tc.d_over_r0},
                {"effective_d_over_r0", tc.effective_d_over_r0()},
                {"num_zernike", tc.num_zernike},
                {"grid_spacing", tc.grid_spacing},
                {"rng_seed", tc.rng_seed},
                {"correlation_length", tc.correlation_length},
                {"pixels_per_lod", tc.pixels_per_lod},
                {"pupil_grid", tc.pupil_grid},
                {"pad_factor", tc.pad_factor},
                {"psf_size", tc.psf_size}};
}

int cmd_simulate(const std::string& in_dir, const std::string& out_dir,
                 GlobalConfig& cfg, double cn2, double d_over_r0,
                 std::uint64_t seed, int grid_spacing, int psf_size) {
    turbsim::TurbulenceConfig& tc = cfg.turbulence;
    if (cn2 > 0) tc.cn2 = cn2;
    if (d_over_r0 > 0) tc.d_over_r0 = d_over_r0;
    if (grid_spacing > 0) tc.grid_spacing = grid_spacing;
    if (psf_size > 0) tc.psf_size = psf_size;
    tc.rng_seed = seed;
    tc.validate();

    fs::create_directories(out_dir);
    const auto paths = list_images(in_dir);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        ImageFrame frame = read_image(paths[i]);
        turbsim::TurbulenceConfig frame_cfg = tc;
        frame_cfg.rng_seed = tc.rng_seed * 0x9e3779b9ULL + i;
        const auto field =
            turbsim::sample_field(frame_cfg, static_cast<int>(frame.width),
                                  static_cast<int>(frame.height));
        const ImageFrame degraded =
            turbsim::degrade(frame, field, frame_cfg.psf_size);
        write_image(degraded, fs::path(out_dir) / paths[i].filename());
    }
    save_json(turbulence_sidecar(tc), fs::path(out_dir) / "turbulence.json");
    std::cout << "degraded " << paths.size() << " frames into " << out_dir
              << '\n';
    return 0;
}

int cmd_assoc(const std::string& detections_path, const std::string& out_dir,
              const std::string& gt_path, const GlobalConfig& cfg) {
    const auto frames = assoc::read_detections(detections_path);
    fs::create_directories(out_dir);

    json out;
    out["frames"] = json::array();
    for (const auto& frame : frames) {
        std::vector<assoc::Proposal> bodies, faces;
        for (const auto& p : frame.proposals)
            (p.bbox.kind == BoxKind::Body ? bodies : faces).push_back(p);
        json jf;
        jf["frame_index"] = frame.frame_index;
        if (!bodies.empty() && !faces.empty()) {
            const auto sim =
                assoc::association_metric(bodies, faces, cfg.assoc_cfg);
            jf["face_to_body"] = assoc::associate(sim, cfg.assoc_cfg);
        } else {
            jf["face_to_body"] =
                std::vector<int>(faces.size(), assoc::kNotVisible);
        }
        out["frames"].push_back(std::move(jf));
    }

    // Loss diagnostics when ground truth is supplied:
    // {"subjects": [{"body_box": [..], "face_box": [..]?, "head_center": [x,y]}]}
    if (!gt_path.empty()) {
        const json jgt = load_json(gt_path);
        assoc::GroundTruth gt;
        try {
            for (const auto& js : jgt.at("subjects")) {
                assoc::SubjectTruth subj;
                const auto& b = js.at("body_box");
                subj.body_box = BBox(b.at(0), b.at(1), b.at(2), b.at(3));
                if (js.contains("face_box") && !js["face_box"].is_null()) {
                    const auto& f = js["face_box"];
                    subj.face_box =
                        BBox(f.at(0), f.at(1), f.at(2), f.at(3), BoxKind::Face);
                }
                subj.head_x = js.at("head_center").at(0).get<double>();
                subj.head_y = js.at("head_center").at(1).get<double>();
                gt.subjects.push_back(std::move(subj));
            }
        } catch (const json::exception& e) {
            fail_invalid("ground truth JSON: " + std::string(e.what()));
        }
        json diag = json::array();
        for (const auto& frame : frames) {
            const auto sets =
                assoc::assign(frame.proposals, gt, cfg.assoc_cfg.eta);
            const auto pull =
                assoc::pull_loss(frame.proposals, sets, cfg.assoc_cfg);
            const auto push =
                assoc::push_loss(frame.proposals, sets, cfg.assoc_cfg);
            diag.push_back(
                {{"frame_index", frame.frame_index},
                 {"pull", {{"body_body", pull.body_body},
                           {"face_face", pull.face_face},
                           {"body_face", pull.body_face},
                           {"total", pull.total}}},
                 {"push", {{"body_body", push.body_body},
                           {"face_face", push.face_face},
                           {"body_face", push.body_face},
                           {"total", push.total}}},
                 {"embedding_loss",
                  assoc::embedding_loss(frame.proposals, sets, cfg.assoc_cfg)}});
        }
        out["loss_diagnostics"] = std::move(diag);
    }
    save_json(out, fs::path(out_dir) / "associations.json");
    std::cout << "wrote " << (fs::path(out_dir) / "associations.json").string()
              << '\n';
    return 0;
}

pipeline::SequenceInput load_sequence(const fs::path& frames_dir,
                                      const fs::path& detections,
                                      const std::string& subject_id) {
    pipeline::SequenceInput seq;
    seq.subject_id = subject_id;
    for (const auto& p : list_images(frames_dir))
        seq.frames.push_back(read_image(p));
    seq.detections = assoc::read_detections(detections);
    if (seq.detections.size() != seq.frames.size())
        fail_invalid("sequence " + subject_id + ": detections cover " +
                     std::to_string(seq.detections.size()) + " frames, images " +
                     std::to_string(seq.frames.size()));
    return seq;
}

int cmd_enroll(const std::string& in_dir, const std::string& out_path,
               const std::string& mode, bool synthetic, int synth_subjects,
               bool simulate, GlobalConfig& cfg, std::uint64_t seed) {
    pipeline::PipelineConfig pcfg;
    pcfg.mode = mode == "gallery" ? pipeline::EnrollMode::Gallery
                                  : pipeline::EnrollMode::Probe;
    pcfg.dims = cfg.dims;
    pcfg.simulate_turbulence = simulate;
    pcfg.turbulence = cfg.turbulence;
    pcfg.iou_gate = cfg.iou_gate;
    pcfg.seed = seed;

    std::vector<pipeline::SequenceInput> sequences;
    if (synthetic) {
        pipeline::SceneConfig scene;
        scene.num_subjects = synth_subjects;
        scene.seed = seed;
        for (int s = 0; s < scene.num_subjects; ++s) {
            const auto synth = pipeline::render_sequence(s, scene);
            sequences.push_back({synth.subject_id, synth.frames, synth.detections});
        }
    } else {
        // Layout: <in_dir>/<subject_or_sequence>/frames.{png,pgm} plus
        // detections.json in each sequence directory.
        if (!fs::is_directory(in_dir)) fail_io("not a directory: " + in_dir);
        std::vector<fs::path> dirs;
        for (const auto& entry : fs::directory_iterator(in_dir))
            if (entry.is_directory()) dirs.push_back(entry.path());
        std::sort(dirs.begin(), dirs.end());
        if (dirs.empty()) fail_invalid("no sequence directories in " + in_dir);
        for (const auto& dir : dirs) {
            const fs::path det = dir / "detections.json";
            if (!fs::exists(det))
                fail_invalid("missing detections: " + det.string());
            sequences.push_back(
                load_sequence(dir, det, dir.filename().string()));
        }
    }

    const auto result = pipeline::run_pipeline(sequences, pcfg);
    const auto bytes = store::store_write(result.templates, out_path, cfg.dims);
    std::cout << "enrolled " << result.templates.size() << " templates ("
              << bytes << " bytes) into " << out_path << '\n';
    return 0;
}

int cmd_score(const std::string& probe_path, const std::string& gallery_path,
              const std::string& out_dir) {
    const auto probes = store::store_read(probe_path);
    const auto gallery = store::store_read(gallery_path);
    fs::create_directories(out_dir);

    for (int m = 0; m < static_cast<int>(kNumModalities); ++m) {
        const Modality mod = static_cast<Modality>(m);
        std::vector<const Template*> probe_list, gallery_list;
        std::set<std::string> probe_seen;
        for (const auto& t : probes)
            if (t.modality == mod) probe_list.push_back(&t);
        for (const auto& t : gallery)
            if (t.modality == mod) gallery_list.push_back(&t);

        // Probe rows are the union of probe subject ids over all modalities,
        // so missing-modality probes appear as empty CSV cells.
        std::vector<std::string> probe_ids, gallery_ids;
        std::set<std::string> seen;
        for (const auto& t : probes)
            if (seen.insert(t.subject_id).second) probe_ids.push_back(t.subject_id);
        seen.clear();
        for (const auto& t : gallery)
            if (seen.insert(t.subject_id).second)
                gallery_ids.push_back(t.subject_id);

        fusion::ScoreTable table;
        table.probe_ids = probe_ids;
        table.gallery_ids = gallery_ids;
        table.cells.assign(probe_ids.size() * gallery_ids.size(), std::nullopt);
        for (std::size_t p = 0; p < probe_ids.size(); ++p) {
            const Template* probe = nullptr;
            for (const auto* t : probe_list)
                if (t->subject_id == probe_ids[p]) probe = t;
            if (!probe) continue;
            for (std::size_t g = 0; g < gallery_ids.size(); ++g) {
                const Template* gal = nullptr;
                for (const auto* t : gallery_list)
                    if (t->subject_id == gallery_ids[g]) gal = t;
                if (!gal) continue;
                table.at(p, g) = fusion::cosine(probe->vector, gal->vector);
            }
        }
        fusion::write_score_csv(
            table, fs::path(out_dir) / (std::string(modality_name(mod)) + ".csv"));
    }
    std::cout << "wrote per-modality score matrices into " << out_dir << '\n';
    return 0;
}

int cmd_fuse(const std::string& scores_dir, const std::string& out_path,
             const GlobalConfig& cfg) {
    const fs::path dir(scores_dir);
    fusion::ScoreTable tables[kNumModalities];
    for (int m = 0; m < static_cast<int>(kNumModalities); ++m) {
        const fs::path p =
            dir / (std::string(modality_name(static_cast<Modality>(m))) + ".csv");
        if (!fs::exists(p)) fail_io("missing score matrix: " + p.string());
        tables[m] = fusion::read_score_csv(p);
    }
    const auto& ref = tables[0];
    for (int m = 1; m < static_cast<int>(kNumModalities); ++m)
        if (tables[m].probe_ids != ref.probe_ids ||
            tables[m].gallery_ids != ref.gallery_ids)
            fail_invalid("fuse: score matrices disagree on probe/gallery ids");

    ModalityScores scores(ref.probe_ids.size(), ref.gallery_ids.size());
    for (int m = 0; m < static_cast<int>(kNumModalities); ++m)
        for (std::size_t p = 0; p < ref.probe_ids.size(); ++p)
            for (std::size_t g = 0; g < ref.gallery_ids.size(); ++g)
                if (tables[m].at(p, g))
                    scores.set(static_cast<Modality>(m), p, g,
                               *tables[m].at(p, g));

    const auto fused = fusion::fuse(scores, cfg.fusion_cfg);
    fusion::ScoreTable out;
    out.probe_ids = ref.probe_ids;
    out.gallery_ids = ref.gallery_ids;
    out.cells.reserve(fused.size());
    for (double v : fused) out.cells.emplace_back(v);
    fusion::write_score_csv(out, out_path);
    std::cout << "wrote fused scores to " << out_path << '\n';
    return 0;
}

int cmd_eval(const std::string& scores_path, const std::string& mates_path,
             const std::string& out_path, double far_target,
             double fpir_target, int rank) {
    const auto table = fusion::read_score_csv(scores_path);
    const json jm = load_json(mates_path);

    eval::SearchInstance open_set;
    eval::SearchInstance closed_set;
    eval::LabeledScores verif;
    for (std::size_t p = 0; p < table.probe_ids.size(); ++p) {
        std::vector<double> row;
        for (std::size_t g = 0; g < table.gallery_ids.size(); ++g) {
            if (!table.at(p, g))
                fail_invalid("eval: fused score matrix has missing cells");
            row.push_back(*table.at(p, g));
        }
        std::optional<int> mate;
        if (!jm.contains(table.probe_ids[p]))
            fail_invalid("eval: no mate entry for probe " + table.probe_ids[p]);
        const auto& jmate = jm[table.probe_ids[p]];
        if (!jmate.is_null()) {
            const std::string gid = jmate.get<std::string>();
            const auto it = std::find(table.gallery_ids.begin(),
                                      table.gallery_ids.end(), gid);
            if (it == table.gallery_ids.end())
                fail_invalid("eval: mate " + gid + " not in gallery");
            mate = static_cast<int>(it - table.gallery_ids.begin());
        }
        for (std::size_t g = 0; g < row.size(); ++g) {
            if (mate && static_cast<int>(g) == *mate)
                verif.genuine.push_back(row[g]);
            else
                verif.impostor.push_back(row[g]);
        }
        open_set.scores.push_back(row);
        open_set.mates.push_back(mate);
        if (mate) {
            closed_set.scores.push_back(std::move(row));
            closed_set.mates.push_back(mate);
        }
    }

    eval::EvalReport report;
    report.far_target = far_target;
    report.fpir_target = fpir_target;
    std::tie(report.tar_at_far, report.threshold_used) =
        eval::tar_at_far(verif, far_target);
    if (!closed_set.scores.empty()) {
        const int n = std::min<int>(rank, table.gallery_ids.size());
        report.rank_n_accuracy[n] = eval::rank_n(closed_set, n);
    }
    const bool has_nonmated =
        std::any_of(open_set.mates.begin(), open_set.mates.end(),
                    [](const auto& m) { return !m.has_value(); });
    if (has_nonmated)
        std::tie(report.fnir_at_fpir, report.open_set_threshold) =
            eval::fnir_at_fpir(open_set, fpir_target);
    report.num_genuine = verif.genuine.size();
    report.num_impostor = verif.impostor.size();
    report.num_mated = closed_set.scores.size();
    report.num_nonmated = open_set.scores.size() - closed_set.scores.size();

    json jr;
    jr["tar_at_far"] = report.tar_at_far;
    jr["far_target"] = report.far_target;
    jr["threshold_used"] = report.threshold_used;
    for (const auto& [n, acc] : report.rank_n_accuracy)
        jr["rank_n_accuracy"][std::to_string(n)] = acc;
    if (has_nonmated) {
        jr["fnir_at_fpir"] = report.fnir_at_fpir;
        jr["fpir_target"] = report.fpir_target;
        jr["open_set_threshold"] = report.open_set_threshold;
    }
    jr["counts"] = {{"genuine", report.num_genuine},
                    {"impostor", report.num_impostor},
                    {"mated_probes", report.num_mated},
                    {"nonmated_probes", report.num_nonmated}};
    save_json(jr, out_path);

    std::cout << "TAR@" << far_target * 100 << "%FAR  Rank-" << rank
              << "  FNIR@" << fpir_target * 100 << "%FPIR\n";
    std::cout << report.tar_at_far << "  ";
    if (!report.rank_n_accuracy.empty())
        std::cout << report.rank_n_accuracy.begin()->second;
    else
        std::cout << "n/a";
    std::cout << "  " << (has_nonmated ? std::to_string(report.fnir_at_fpir)
                                       : std::string("n/a"))
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FarSight whole-body biometric toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string config_path;
    std::string out;
    app.add_option("--seed", seed, "global RNG seed");
    app.add_option("--config", config_path, "JSON config file");

    // simulate
    auto* sim = app.add_subcommand("simulate", "apply turbulence degradation");
    std::string sim_in, sim_out;
    double sim_cn2 = 0, sim_dr0 = 0;
    int sim_grid = 0, sim_psf = 0;
    sim->add_option("--in", sim_in, "input image directory")->required();
    sim->add_option("--out", sim_out, "output directory")->required();
    sim->add_option("--cn2", sim_cn2, "Cn^2 structure parameter");
    sim->add_option("--d-over-r0", sim_dr0, "turbulence strength D/r0");
    sim->add_option("--grid-spacing", sim_grid, "anchor spacing in px");
    sim->add_option("--psf-size", sim_psf, "odd PSF size in px");

    // assoc
    auto* asc = app.add_subcommand("assoc", "face/body association");
    std::string asc_det, asc_out = ".", asc_gt;
    asc->add_option("--detections", asc_det, "detections JSON")->required();
    asc->add_option("--out", asc_out, "output directory");
    asc->add_option("--ground-truth", asc_gt, "ground truth JSON for losses");

    // enroll
    auto* enr = app.add_subcommand("enroll", "run the pipeline to templates");
    std::string enr_in, enr_out = "templates.fstb", enr_mode = "probe";
    bool enr_synth = false, enr_sim = false;
    int enr_subjects = 8;
    enr->add_option("--in", enr_in, "directory of sequence directories");
    enr->add_option("--out", enr_out, "output template store");
    enr->add_option("--mode", enr_mode, "probe|gallery")
        ->check(CLI::IsMember({"probe", "gallery"}));
    enr->add_flag("--synthetic", enr_synth, "use the synthetic scene generator");
    enr->add_option("--synthetic-subjects", enr_subjects, "subject count");
    enr->add_flag("--simulate", enr_sim, "degrade frames before encoding");

    // score
    auto* sco = app.add_subcommand("score", "probe vs gallery cosine scores");
    std::string sco_probe, sco_gallery, sco_out = "scores";
    sco->add_option("--probe", sco_probe, "probe template store")->required();
    sco->add_option("--gallery", sco_gallery, "gallery template store")
        ->required();
    sco->add_option("--out", sco_out, "output directory");

    // fuse
    auto* fus = app.add_subcommand("fuse", "equal-weighted score fusion");
    std::string fus_scores, fus_out = "fused.csv";
    fus->add_option("--scores", fus_scores,
                    "directory with face.csv gait.csv body.csv")
        ->required();
    fus->add_option("--out", fus_out, "fused CSV path");

    // eval
    auto* evl = app.add_subcommand("eval", "biometric metrics");
    std::string evl_scores, evl_mates, evl_out = "report.json";
    double evl_far = 0.01, evl_fpir = 0.01;
    int evl_rank = 20;
    evl->add_option("--scores", evl_scores, "fused score CSV")->required();
    evl->add_option("--mates", evl_mates, "probe->gallery mate JSON")->required();
    evl->add_option("--out", evl_out, "report JSON path");
    evl->add_option("--far", evl_far, "FAR target");
    evl->add_option("--fpir", evl_fpir, "FPIR target");
    evl->add_option("--rank", evl_rank, "closed-set rank N");

    // bench
    auto* ben = app.add_subcommand("bench", "serialized throughput benchmark");
    std::string ben_out;
    int ben_hd = 8, ben_uhd = 4;
    ben->add_option("--out", ben_out, "report JSON path");
    ben->add_option("--frames-1080p", ben_hd, "1080p frame count");
    ben->add_option("--frames-4k", ben_uhd, "4K frame count");

    CLI11_PARSE(app, argc, argv);

    try {
        GlobalConfig cfg = load_config(config_path, seed);
        if (sim->parsed())
            return cmd_simulate(sim_in, sim_out, cfg, sim_cn2, sim_dr0, seed,
                                sim_grid, sim_psf);
        if (asc->parsed()) return cmd_assoc(asc_det, asc_out, asc_gt, cfg);
        if (enr->parsed())
            return cmd_enroll(enr_in, enr_out, enr_mode, enr_synth,
                              enr_subjects, enr_sim, cfg, seed);
        if (sco->parsed()) return cmd_score(sco_probe, sco_gallery, sco_out);
        if (fus->parsed()) return cmd_fuse(fus_scores, fus_out, cfg);
        if (evl->parsed())
            return cmd_eval(evl_scores, evl_mates, evl_out, evl_far, evl_fpir,
                            evl_rank);
        if (ben->parsed()) {
            pipeline::BenchConfig bcfg;
            bcfg.frames_1080p = ben_hd;
            bcfg.frames_4k = ben_uhd;
            bcfg.seed = seed;
            const auto report = pipeline::bench(bcfg);
            std::cout << report.to_table();
            if (!ben_out.empty()) pipeline::write_bench_report(report, ben_out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Io ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
