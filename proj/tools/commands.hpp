#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roampath/geo.hpp"
#include "roampath/spline.hpp"

namespace roampath::cli {

struct OutputFile {
    std::string name;
    std::string content;
};

/// Creates `dir` if needed and writes every file through a temporary name,
/// so a failed command leaves no half-written output.
void write_outputs(const std::filesystem::path& dir, std::span<const OutputFile> files);

struct PathCompareConfig {
    std::filesystem::path keypoints;
    Tension tension;
    std::size_t samples = 32;
    Projection projection = Projection::raw();
    bool tangent_arrows = false;
};

/// compare.svg and smoothness.csv
std::vector<OutputFile> path_compare(const PathCompareConfig& config);

struct SimRunConfig {
    std::filesystem::path keypoints;
    std::filesystem::path scene;
    double dt = 0.01;
    std::uint64_t seed = 1;
    double sigma = 0.05;
    std::optional<CurveKind> kind;  // all three kinds when empty
    std::optional<double> trigger_distance;
    Tension tension;
    Projection projection = Projection::raw();
};

/// sim.json
std::vector<OutputFile> sim_run(const SimRunConfig& config);

struct StudyAnalyzeConfig {
    std::filesystem::path study;
    std::uint64_t seed = 1;
    std::size_t replicates = 10000;
    double alpha = 0.05;
};

/// stats.json, metrics.csv and one scatter SVG per engagement pairing.
std::vector<OutputFile> study_analyze(const StudyAnalyzeConfig& config);

struct StudySynthConfig {
    std::size_t participants = 50;
    std::uint64_t seed = 7;
};

/// study.csv
std::vector<OutputFile> study_synth(const StudySynthConfig& config);

/// Parses arguments and runs one subcommand. Returns the process exit code:
/// 0 on success, 1 on any usage, input or domain error (reported on err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace roampath::cli
