#include "ssp/runner.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include "json.hpp"

#include "ssp/ddim.hpp"
#include "ssp/io.hpp"
#include "ssp/parallel.hpp"
#include "ssp/pipeline.hpp"
#include "ssp/rng.hpp"
#include "ssp/selftest.hpp"

namespace ssp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_file(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " is required but not set");
    if (!fs::exists(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

ConditionEmbedding resolve_label(const ConditionalMixtureModel& model, const std::string& label,
                                 const char* what) {
    if (label.empty()) return ConditionEmbedding::null_condition();
    const int idx = model.find_label(label);
    if (idx < 0) throw ConfigError(std::string(what) + ": unknown label '" + label + "'");
    return model.label_embedding(idx);
}

GuidanceConfig resolve_guidance(const ConditionalMixtureModel& model, const GuidanceParams& p) {
    GuidanceConfig g;
    g.mode = p.mode;
    g.omega = p.omega;
    g.omega_i = p.omega_i;
    g.omega_plus = p.omega_plus;
    g.omega_minus = p.omega_minus;
    g.positive = resolve_label(model, p.positive_label, "guidance.positive_label");
    g.negative = resolve_label(model, p.negative_label, "guidance.negative_label");
    return g;
}

json base_manifest(const RunConfig& cfg) {
    json m;
    m["command"] = command_name(cfg.command);
    m["seed"] = cfg.seed;
    m["steps"] = cfg.steps;
    m["omega_i"] = cfg.omega_i;
    m["cfg_omega"] = cfg.cfg_omega;
    m["schedule"] = {{"train_steps", cfg.schedule.train_steps},
                     {"beta_start", cfg.schedule.beta_start},
                     {"beta_end", cfg.schedule.beta_end}};
    m["startpoint"] = {{"kind", startpoint_kind_name(cfg.startpoint.kind)},
                       {"alpha", cfg.startpoint.alpha},
                       {"noise_sigma", cfg.startpoint.noise_sigma},
                       {"filter",
                        {{"kind", cfg.startpoint.filter.kind == FilterKind::gaussian
                                      ? "gaussian"
                                      : "butterworth"},
                         {"sigma", cfg.startpoint.filter.sigma},
                         {"cutoff", cfg.startpoint.filter.cutoff},
                         {"order", cfg.startpoint.filter.order}}},
                       {"scaled_per_element", cfg.startpoint.scaled_per_element}};
    return m;
}

void write_manifest(const fs::path& dir, const json& m) {
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

void write_transfer_outputs(const fs::path& dir, const TransferResult& r) {
    fs::create_directories(dir);
    write_grid((dir / "output.sspg").string(), r.output);
    write_grid((dir / "output.pgm").string(), r.output);
    write_grid((dir / "startpoint.sspg").string(), r.startpoint_latent);
    write_text(dir / "inversion.csv", trajectory_csv(r.inversion_trajectory));
    write_text(dir / "sampling.csv", trajectory_csv(r.sampling_trajectory));
}

TransferConfig make_transfer_config(const RunConfig& cfg, const ConditionalMixtureModel& model) {
    require_file(cfg.content_file, "content_file");
    require_file(cfg.style_file, "style_file");
    TransferConfig tc;
    tc.content = read_grid(cfg.content_file);
    tc.style = read_grid(cfg.style_file);
    tc.positive_condition = resolve_label(model, cfg.positive_label, "positive_label");
    tc.omega_i = cfg.omega_i;
    tc.cfg_omega = cfg.cfg_omega;
    tc.startpoint = cfg.startpoint;
    tc.steps = cfg.steps;
    tc.seed = cfg.seed;
    return tc;
}

json metrics_json(const TransferResult& r) {
    json m;
    for (const auto& [k, v] : r.metrics) m[k] = v;
    return m;
}

int dispatch(const RunConfig& cfg, std::ostream& log) {
    par::set_threads(cfg.threads);

    if (cfg.command == Command::selftest) {
        const auto results = run_selftest();
        bool all_ok = true;
        for (const auto& r : results) {
            log << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
            if (!r.passed) log << "  (" << r.detail << ")";
            log << '\n';
            all_ok = all_ok && r.passed;
        }
        log << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
        return all_ok ? 0 : 4;
    }

    require_file(cfg.model_file, "model_file");
    auto schedule = std::make_shared<NoiseSchedule>(build_schedule(
        cfg.schedule.train_steps, cfg.steps, cfg.schedule.beta_start, cfg.schedule.beta_end));
    const auto model = load_model_file(cfg.model_file, schedule);

    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    json manifest = base_manifest(cfg);
    manifest["model_file"] = cfg.model_file;

    switch (cfg.command) {
        case Command::invert: {
            require_file(cfg.content_file, "content_file");
            const Grid z0 = read_grid(cfg.content_file);
            const GuidanceConfig g = resolve_guidance(*model, cfg.guidance);
            const TrajectoryRecord traj = invert(*model, *schedule, z0, g);
            write_grid((out_dir / "latent.sspg").string(), traj.final_latent());
            write_text(out_dir / "inversion.csv", trajectory_csv(traj));
            manifest["content_file"] = cfg.content_file;
            write_manifest(out_dir, manifest);
            log << "invert: wrote " << (out_dir / "latent.sspg").string() << '\n';
            return 0;
        }
        case Command::sample: {
            Grid zT;
            if (!cfg.latent_file.empty()) {
                require_file(cfg.latent_file, "latent_file");
                zT = read_grid(cfg.latent_file);
                manifest["latent_file"] = cfg.latent_file;
            } else {
                const GridShape s = model->data_shape();
                zT = Grid(s.height, s.width, s.channels);
                SeededRng rng(cfg.seed, "init");
                for (double& v : zT.data) v = rng.normal();
                manifest["latent_file"] = "(seeded standard normal)";
            }
            const GuidanceConfig g = resolve_guidance(*model, cfg.guidance);
            const TrajectoryRecord traj = sample(*model, *schedule, zT, g);
            write_grid((out_dir / "z0.sspg").string(), traj.final_latent());
            write_grid((out_dir / "z0.pgm").string(), traj.final_latent());
            write_text(out_dir / "sampling.csv", trajectory_csv(traj));
            write_manifest(out_dir, manifest);
            log << "sample: wrote " << (out_dir / "z0.sspg").string() << '\n';
            return 0;
        }
        case Command::transfer: {
            const TransferConfig tc = make_transfer_config(cfg, *model);
            const TransferResult r = style_transfer(*model, *schedule, tc);
            write_transfer_outputs(out_dir, r);
            manifest["content_file"] = cfg.content_file;
            manifest["style_file"] = cfg.style_file;
            manifest["metrics"] = metrics_json(r);
            write_manifest(out_dir, manifest);
            log << "transfer: content_l2=" << format_double(r.metrics.at("content_l2")) << '\n';
            return 0;
        }
        case Command::ablate: {
            const TransferConfig tc = make_transfer_config(cfg, *model);
            std::vector<StartpointKind> kinds;
            for (const auto& name : cfg.ablate_kinds) {
                try {
                    kinds.push_back(startpoint_kind_from_name(name));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
            const auto results = ablate_startpoints(*model, *schedule, tc, kinds);
            std::string csv = "kind,content_l2,low_band_ratio,style_embedding_distance\n";
            for (std::size_t i = 0; i < kinds.size(); ++i) {
                write_transfer_outputs(out_dir / startpoint_kind_name(kinds[i]), results[i]);
                csv += std::string(startpoint_kind_name(kinds[i])) + ',' +
                       format_double(results[i].metrics.at("content_l2")) + ',' +
                       format_double(results[i].metrics.at("low_band_ratio")) + ',' +
                       format_double(results[i].metrics.at("style_embedding_distance")) + '\n';
            }
            write_text(out_dir / "ablation.csv", csv);
            manifest["content_file"] = cfg.content_file;
            manifest["style_file"] = cfg.style_file;
            manifest["kinds"] = cfg.ablate_kinds;
            write_manifest(out_dir, manifest);
            log << "ablate: wrote " << (out_dir / "ablation.csv").string() << '\n';
            return 0;
        }
        case Command::sweep: {
            const TransferConfig tc = make_transfer_config(cfg, *model);
            const SweepTable table =
                filter_sweep(*model, *schedule, tc, cfg.sweep_sigmas, cfg.sweep_alphas);
            write_text(out_dir / "sweep.csv", table.to_csv());
            manifest["content_file"] = cfg.content_file;
            manifest["style_file"] = cfg.style_file;
            manifest["sweep_sigmas"] = cfg.sweep_sigmas;
            manifest["sweep_alphas"] = cfg.sweep_alphas;
            write_manifest(out_dir, manifest);
            log << "sweep: wrote " << (out_dir / "sweep.csv").string() << '\n';
            return 0;
        }
        default:
            throw ConfigError("unhandled command");
    }
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
    try {
        return dispatch(cfg, log);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ssp
