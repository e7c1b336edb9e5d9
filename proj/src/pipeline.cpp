#include "ssp/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ssp/guidance.hpp"
#include "ssp/metrics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssp {

namespace {

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("transfer stage '") + name + "': " + e.what());
    }
}

double vec_l2(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("style embedding distance: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

TransferResult style_transfer(const ScoreModel& model, const NoiseSchedule& schedule,
                              const TransferConfig& cfg) {
    if (cfg.steps != schedule.t_sample()) {
        throw std::invalid_argument("style_transfer: cfg.steps disagrees with the schedule");
    }
    if (cfg.content.shape() != model.data_shape() || cfg.style.shape() != model.data_shape()) {
        throw std::invalid_argument("style_transfer: grids must match the model's data shape");
    }

    TransferResult res;

    const ConditionEmbedding negative = stage("negative_embedding", [&] {
        return build_negative_embedding(extract_style(cfg.content), extract_content(cfg.style));
    });

    res.inversion_trajectory = stage("inversion", [&] {
        GuidanceConfig g;
        g.mode = GuidanceMode::negative;
        g.omega_i = cfg.omega_i;
        g.positive = cfg.positive_condition;
        g.negative = negative;
        return invert(model, schedule, cfg.content, g);
    });

    res.startpoint_latent = stage("startpoint", [&] {
        StartpointSpec sp = cfg.startpoint;
        sp.seed = cfg.seed;
        return make_variant(res.inversion_trajectory.final_latent(), sp);
    });

    res.sampling_trajectory = stage("sampling", [&] {
        GuidanceConfig g;
        g.mode = GuidanceMode::cfg;
        g.omega = cfg.cfg_omega;
        g.positive.style_slot = extract_style(cfg.style);
        g.positive.content_slot.assign(extract_content(cfg.style).size(), 0.0);
        g.positive.null_flag = false;
        return sample(model, schedule, res.startpoint_latent, g);
    });
    res.output = res.sampling_trajectory.final_latent();

    stage("metrics", [&] {
        res.metrics["content_l2"] = content_l2(res.output, cfg.content);
        res.metrics["low_band_ratio"] = band_ratio(res.startpoint_latent, cfg.startpoint.filter);
        res.metrics["style_embedding_distance"] =
            vec_l2(extract_style(res.output), extract_style(cfg.style));
        return 0;
    });

    res.manifest["seed"] = std::to_string(cfg.seed);
    res.manifest["omega_i"] = fmt(cfg.omega_i);
    res.manifest["cfg_omega"] = fmt(cfg.cfg_omega);
    res.manifest["steps"] = std::to_string(cfg.steps);
    res.manifest["startpoint_kind"] = startpoint_kind_name(cfg.startpoint.kind);
    res.manifest["alpha"] = fmt(cfg.startpoint.alpha);
    res.manifest["noise_sigma"] = fmt(cfg.startpoint.noise_sigma);
    res.manifest["filter_kind"] =
        cfg.startpoint.filter.kind == FilterKind::gaussian ? "gaussian" : "butterworth";
    res.manifest["filter_sigma"] = fmt(cfg.startpoint.filter.sigma);
    for (const auto& [k, v] : res.metrics) res.manifest["metric_" + k] = fmt(v);
    return res;
}

std::vector<TransferResult> ablate_startpoints(const ScoreModel& model,
                                               const NoiseSchedule& schedule,
                                               const TransferConfig& base_cfg,
                                               const std::vector<StartpointKind>& kinds) {
    if (kinds.empty()) throw std::invalid_argument("ablate_startpoints: kinds must be non-empty");
    std::vector<TransferResult> results(kinds.size());
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(kinds.size()); ++i) {
        try {
            TransferConfig cfg = base_cfg;
            cfg.startpoint.kind = kinds[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = style_transfer(model, schedule, cfg);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    out << "sigma,alpha,content_l2,low_band_ratio,style_embedding_distance\n";
    for (const auto& r : rows) {
        out << fmt(r.sigma) << ',' << fmt(r.alpha) << ',' << fmt(r.content_l2) << ','
            << fmt(r.low_band_ratio) << ',' << fmt(r.style_embedding_distance) << '\n';
    }
    return out.str();
}

SweepTable filter_sweep(const ScoreModel& model, const NoiseSchedule& schedule,
                        const TransferConfig& base_cfg, const std::vector<double>& sigmas,
                        const std::vector<double>& alphas) {
    if (sigmas.empty() || alphas.empty()) {
        throw std::invalid_argument("filter_sweep: parameter lists must be non-empty");
    }
    SweepTable table;
    table.rows.resize(sigmas.size() * alphas.size());
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(table.rows.size()); ++idx) {
        try {
            const std::size_t si = static_cast<std::size_t>(idx) / alphas.size();
            const std::size_t ai = static_cast<std::size_t>(idx) % alphas.size();
            TransferConfig cfg = base_cfg;
            cfg.startpoint.kind = StartpointKind::freq_manipulated;
            cfg.startpoint.filter.kind = FilterKind::gaussian;
            cfg.startpoint.filter.sigma = sigmas[si];
            cfg.startpoint.alpha = alphas[ai];
            const TransferResult r = style_transfer(model, schedule, cfg);
            SweepRow& row = table.rows[static_cast<std::size_t>(idx)];
            row.sigma = sigmas[si];
            row.alpha = alphas[ai];
            row.content_l2 = r.metrics.at("content_l2");
            row.low_band_ratio = r.metrics.at("low_band_ratio");
            row.style_embedding_distance = r.metrics.at("style_embedding_distance");
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

}  // namespace ssp
