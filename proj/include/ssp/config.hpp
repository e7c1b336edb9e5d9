#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssp/guidance.hpp"
#include "ssp/startpoint.hpp"

namespace ssp {

enum class Command { invert, sample, transfer, ablate, sweep, selftest };

struct ScheduleParams {
    int train_steps = 1000;
    double beta_start = 8.5e-4;
    double beta_end = 1.2e-2;
};

// Guidance selection as written in the config document; labels are resolved
// against the model registry when the command runs.
struct GuidanceParams {
    GuidanceMode mode = GuidanceMode::none;
    double omega = 1.0;
    double omega_i = 1.5;
    double omega_plus = 1.0;
    double omega_minus = 0.0;
    std::string positive_label;  // empty = null condition
    std::string negative_label;
};

struct RunConfig {
    Command command = Command::selftest;
    std::string model_file;
    std::string content_file;
    std::string style_file;
    std::string latent_file;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
    int threads = 0;

    ScheduleParams schedule{};
    int steps = 50;
    double omega_i = 1.5;
    double cfg_omega = 5.0;
    std::string positive_label;
    GuidanceParams guidance{};
    StartpointSpec startpoint{};
    std::vector<std::string> ablate_kinds = {"inversion",  "random", "noised",
                                             "shifted",    "scaled", "freq_manipulated"};
    std::vector<double> sweep_sigmas = {0.1, 0.3, 0.5, 0.9};
    std::vector<double> sweep_alphas = {0.3, 0.5, 0.7, 1.0};
};

// Raised for malformed documents, unknown keys, or type mismatches; the CLI
// maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the UTF-8 JSON configuration document. Defaults are filled in;
// unknown keys are rejected; the command field is required.
RunConfig parse_config(const std::string& text);

const char* command_name(Command c);

}  // namespace ssp
