#pragma once

#include "igc/centroid.hpp"
#include "igc/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace igc {

/// One experiment cell family. Serialized as key=value lines.
struct ExperimentConfig {
    std::string name = "default";
    std::string generator = "uniform-box"; // uniform-box | gaussian-clusters | grid-jitter
    std::size_t n = 120;
    double box = 6.0;
    int clusters = 3;
    double spread = 0.5;
    double jitter = 0.25;
    std::string metric = "udg-l2";
    int k = 3;
    int z = 1;
    double eps = 0.2;
    double delta = 0.1;
    std::vector<std::uint64_t> seeds{1};
    int trials = 1;
    int verify_trials = 50;
    std::string preset = "desk"; // desk | paper
    double size_constant = kDefaultSizeConstant;
    double x_frac = 1.0;         // fraction of vertices that are clients
    std::vector<std::string> stages{"spanner", "decompose", "coreset"};

    /// Throws ParameterError naming the offending field, e.g. "config.n".
    void validate() const;
    std::string to_text() const;
    static ExperimentConfig from_text(const std::string& text);
    /// Applies one key=value assignment.
    void set(const std::string& key, const std::string& value);
};

/// Points for the given seed; ids are 0..n-1.
PointSet generate(const ExperimentConfig& cfg, std::uint64_t seed);
/// Ground-truth centers of gaussian-clusters (empty for other generators).
std::vector<Vec2> planted_centers(const ExperimentConfig& cfg, std::uint64_t seed);

/// Client vertices: a seeded sample of ceil(x_frac * n) vertices, sorted.
std::vector<int> choose_clients(std::size_t n, double x_frac, std::uint64_t seed);

CentroidConfig centroid_config(const ExperimentConfig& cfg);

struct MatrixReport {
    Table rows;     // one row per (config, seed, trial); deterministic
    Table runtimes; // wall-clock seconds per stage, same keys
    std::size_t failures = 0;

    int exit_code() const { return failures == 0 ? 0 : 1; }
};

MatrixReport run_matrix(const std::vector<ExperimentConfig>& configs);

/// Splits a config file into blocks separated by lines of the form "---".
std::vector<ExperimentConfig> parse_matrix(const std::string& text);

} // namespace igc
