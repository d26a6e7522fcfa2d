#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwfb/filter_design.hpp"

namespace gwfb::cli {

struct Options {
    std::string graph_path;
    std::string coords_path;
    std::string signal_path;
    std::string reference_path;  // denoise: clean signal for error reporting
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int depth = 1;
    double sigma = 0.0;
    int trials = 100;
    int ensemble = 100;
    std::vector<std::string> strategies = {"polarity", "random"};
    bool legacy_identity = false;  // verify: degree-1 legacy bank with K = I
    bool zero_dc = true;
};

// Parsed from JSON keys {r, s, J, alpha, xi0, epsilon, model}; missing keys
// keep their defaults. Empty path keeps all defaults.
DesignConfig load_design_config(const std::string& path);

// Each command writes out_dir/report.json (plus its data files) and returns
// the process exit code: 0 on success, 2 on a reported domain failure.
// Hard errors (missing files, bad flags) throw.
int run_design(const Options& opts);
int run_verify(const Options& opts);
int run_decompose(const Options& opts);
int run_denoise(const Options& opts);
int run_bench(const Options& opts);

nlohmann::json read_report(const std::string& out_dir);

}  // namespace gwfb::cli
