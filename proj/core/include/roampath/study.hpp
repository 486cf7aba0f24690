#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roampath/stats.hpp"

namespace roampath {

/// One participant's questionnaire sums and roaming-task measurements.
struct StudyRecord {
    std::string participant;
    int enjoyment = 5;   // sum of five 1-5 items, 5..25
    int engagement = 5;  // sum of five 1-5 items, 5..25
    double time_s = 0.0;
    int collisions = 0;
    double accuracy = 0.0;  // [0, 1]

    friend bool operator==(const StudyRecord&, const StudyRecord&) = default;
};

inline constexpr int kMinScore = 5;
inline constexpr int kMaxScore = 25;

void validate(const StudyRecord& record);

/// Header `participant,enjoyment,engagement,time_s,collisions,accuracy`.
/// Diagnostics name the 1-based data row and the column.
std::vector<StudyRecord> load_study(std::string_view content);
std::vector<StudyRecord> load_study_file(const std::filesystem::path& path);
std::string serialize_study(std::span<const StudyRecord> records);

/// Seeded synthetic cohort. A latent engagement factor drives every column:
/// enjoyment and accuracy rise with it, time and collisions fall.
/// Collisions are clipped at zero counts and come out skewed.
std::vector<StudyRecord> synthesize_study(std::size_t participants, std::uint64_t seed);

/// Column names usable with study_column.
inline constexpr std::string_view kStudyVariables[] = {"engagement", "enjoyment", "time_s",
                                                       "collisions", "accuracy"};
std::vector<double> study_column(std::span<const StudyRecord> records, std::string_view name);

struct VariableNormality {
    std::string variable;
    NormalityResult result;
    bool normal = true;  // p >= alpha
};

struct PairCorrelation {
    std::string x;
    std::string y;
    CorrelationResult result;
};

struct StatsReport {
    std::size_t n = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    std::vector<VariableNormality> normality;
    std::vector<PairCorrelation> correlations;
};

struct AnalyzeOptions {
    double alpha = 0.05;
    std::uint64_t seed = 1;
    std::size_t replicates = kDefaultKsReplicates;
};

/// Screens every variable for normality, then correlates engagement with
/// enjoyment, time, collisions and accuracy. A pair uses Spearman when either
/// variable fails the screen at alpha, Pearson otherwise.
StatsReport analyze_study(std::span<const StudyRecord> records, const AnalyzeOptions& options);

nlohmann::ordered_json to_json(const StatsReport& report);

}  // namespace roampath
