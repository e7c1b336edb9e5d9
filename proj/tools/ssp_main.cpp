#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ssp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ssp - deterministic diffusion sampling, inversion, and startpoint tooling"};
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = -1;
    app.add_option("--config", config_path, "path to the JSON run configuration")->required();
    auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
    auto* out_opt = app.add_option("--out", out_dir, "override the output directory");
    auto* thr_opt = app.add_option("--threads", threads, "worker thread count (0 = auto)");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "config error: cannot open " << config_path << '\n';
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    ssp::RunConfig cfg;
    try {
        cfg = ssp::parse_config(buf.str());
    } catch (const ssp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (out_opt->count() > 0) cfg.output_dir = out_dir;
    if (thr_opt->count() > 0) cfg.threads = threads;

    return ssp::run_command(cfg, std::cout);
}
