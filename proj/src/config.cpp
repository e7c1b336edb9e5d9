#include "ssp/config.hpp"

#include <set>

#include "json.hpp"

namespace ssp {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (allowed.find(it.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <class T>
T get_as(const json& obj, const std::string& key, const T& fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "' in " + where + ": " + e.what());
    }
}

Command parse_command(const std::string& s) {
    if (s == "invert") return Command::invert;
    if (s == "sample") return Command::sample;
    if (s == "transfer") return Command::transfer;
    if (s == "ablate") return Command::ablate;
    if (s == "sweep") return Command::sweep;
    if (s == "selftest") return Command::selftest;
    throw ConfigError("unknown command '" + s + "'");
}

GuidanceMode parse_mode(const std::string& s) {
    if (s == "none") return GuidanceMode::none;
    if (s == "cfg") return GuidanceMode::cfg;
    if (s == "negative") return GuidanceMode::negative;
    if (s == "dual") return GuidanceMode::dual;
    throw ConfigError("unknown guidance mode '" + s + "'");
}

FilterSpec parse_filter(const json& j) {
    reject_unknown(j, {"kind", "sigma", "cutoff", "order"}, "startpoint.filter");
    FilterSpec f;
    const std::string kind = get_as<std::string>(j, "kind", "gaussian", "startpoint.filter");
    if (kind == "gaussian") {
        f.kind = FilterKind::gaussian;
    } else if (kind == "butterworth") {
        f.kind = FilterKind::butterworth;
    } else {
        throw ConfigError("unknown filter kind '" + kind + "'");
    }
    f.sigma = get_as<double>(j, "sigma", 0.3, "startpoint.filter");
    f.cutoff = get_as<double>(j, "cutoff", 0.5, "startpoint.filter");
    f.order = get_as<int>(j, "order", 2, "startpoint.filter");
    return f;
}

StartpointSpec parse_startpoint(const json& j) {
    reject_unknown(j, {"kind", "alpha", "noise_sigma", "filter", "scaled_per_element"}, "startpoint");
    StartpointSpec sp;
    try {
        sp.kind = startpoint_kind_from_name(
            get_as<std::string>(j, "kind", "freq_manipulated", "startpoint"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    sp.alpha = get_as<double>(j, "alpha", 0.7, "startpoint");
    sp.noise_sigma = get_as<double>(j, "noise_sigma", 1.0, "startpoint");
    if (j.contains("filter")) sp.filter = parse_filter(j.at("filter"));
    sp.scaled_per_element = get_as<bool>(j, "scaled_per_element", false, "startpoint");
    return sp;
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::invert: return "invert";
        case Command::sample: return "sample";
        case Command::transfer: return "transfer";
        case Command::ablate: return "ablate";
        case Command::sweep: return "sweep";
        case Command::selftest: return "selftest";
    }
    return "unknown";
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    reject_unknown(doc,
                   {"command", "model_file", "content_file", "style_file", "latent_file",
                    "output_dir", "seed", "threads", "schedule", "steps", "omega_i", "cfg_omega",
                    "positive_label", "guidance", "startpoint", "ablate_kinds", "sweep_sigmas",
                    "sweep_alphas"},
                   "config");

    if (!doc.contains("command")) throw ConfigError("config is missing the required 'command' key");

    RunConfig cfg;
    cfg.command = parse_command(get_as<std::string>(doc, "command", "", "config"));
    cfg.model_file = get_as<std::string>(doc, "model_file", "", "config");
    cfg.content_file = get_as<std::string>(doc, "content_file", "", "config");
    cfg.style_file = get_as<std::string>(doc, "style_file", "", "config");
    cfg.latent_file = get_as<std::string>(doc, "latent_file", "", "config");
    cfg.output_dir = get_as<std::string>(doc, "output_dir", "out", "config");
    cfg.seed = get_as<std::uint64_t>(doc, "seed", 0, "config");
    cfg.threads = get_as<int>(doc, "threads", 0, "config");

    if (doc.contains("schedule")) {
        const json& js = doc.at("schedule");
        reject_unknown(js, {"train_steps", "beta_start", "beta_end"}, "schedule");
        cfg.schedule.train_steps = get_as<int>(js, "train_steps", 1000, "schedule");
        cfg.schedule.beta_start = get_as<double>(js, "beta_start", 8.5e-4, "schedule");
        cfg.schedule.beta_end = get_as<double>(js, "beta_end", 1.2e-2, "schedule");
    }
    cfg.steps = get_as<int>(doc, "steps", 50, "config");
    cfg.omega_i = get_as<double>(doc, "omega_i", 1.5, "config");
    cfg.cfg_omega = get_as<double>(doc, "cfg_omega", 5.0, "config");
    cfg.positive_label = get_as<std::string>(doc, "positive_label", "", "config");

    if (doc.contains("guidance")) {
        const json& jg = doc.at("guidance");
        reject_unknown(jg,
                       {"mode", "omega", "omega_i", "omega_plus", "omega_minus", "positive_label",
                        "negative_label"},
                       "guidance");
        cfg.guidance.mode = parse_mode(get_as<std::string>(jg, "mode", "none", "guidance"));
        cfg.guidance.omega = get_as<double>(jg, "omega", 1.0, "guidance");
        cfg.guidance.omega_i = get_as<double>(jg, "omega_i", cfg.omega_i, "guidance");
        cfg.guidance.omega_plus = get_as<double>(jg, "omega_plus", 1.0, "guidance");
        cfg.guidance.omega_minus = get_as<double>(jg, "omega_minus", 0.0, "guidance");
        cfg.guidance.positive_label = get_as<std::string>(jg, "positive_label", "", "guidance");
        cfg.guidance.negative_label = get_as<std::string>(jg, "negative_label", "", "guidance");
    } else {
        cfg.guidance.omega_i = cfg.omega_i;
    }

    if (doc.contains("startpoint")) cfg.startpoint = parse_startpoint(doc.at("startpoint"));

    if (doc.contains("ablate_kinds")) {
        cfg.ablate_kinds = get_as<std::vector<std::string>>(doc, "ablate_kinds", {}, "config");
        if (cfg.ablate_kinds.empty()) throw ConfigError("ablate_kinds must be non-empty");
    }
    if (doc.contains("sweep_sigmas")) {
        cfg.sweep_sigmas = get_as<std::vector<double>>(doc, "sweep_sigmas", {}, "config");
        if (cfg.sweep_sigmas.empty()) throw ConfigError("sweep_sigmas must be non-empty");
    }
    if (doc.contains("sweep_alphas")) {
        cfg.sweep_alphas = get_as<std::vector<double>>(doc, "sweep_alphas", {}, "config");
        if (cfg.sweep_alphas.empty()) throw ConfigError("sweep_alphas must be non-empty");
    }
    return cfg;
}

}  // namespace ssp
