#include "roampath/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "roampath/error.hpp"
#include "roampath/random.hpp"
#include "text_io.hpp"

namespace roampath {

namespace {

constexpr const char* kColumns[] = {"participant", "enjoyment", "engagement",
                                    "time_s",      "collisions", "accuracy"};

std::string cell_error(std::size_t row, std::string_view column, std::string_view what) {
    return "study CSV row " + std::to_string(row) + ", column " + std::string(column) + ": " +
           std::string(what);
}

}  // namespace

void validate(const StudyRecord& r) {
    if (r.participant.empty()) throw Error(Errc::invalid_input, "participant id is empty");
    if (r.enjoyment < kMinScore || r.enjoyment > kMaxScore) {
        throw Error(Errc::invalid_input, "enjoyment must lie in 5..25");
    }
    if (r.engagement < kMinScore || r.engagement > kMaxScore) {
        throw Error(Errc::invalid_input, "engagement must lie in 5..25");
    }
    if (!std::isfinite(r.time_s) || r.time_s < 0.0) {
        throw Error(Errc::invalid_input, "time_s must be finite and >= 0");
    }
    if (r.collisions < 0) throw Error(Errc::invalid_input, "collisions must be >= 0");
    if (!(r.accuracy >= 0.0 && r.accuracy <= 1.0)) {
        throw Error(Errc::invalid_input, "accuracy must lie in [0, 1]");
    }
}

std::vector<StudyRecord> load_study(std::string_view content) {
    const auto lines = detail::split_lines(content);
    if (lines.empty()) throw Error(Errc::parse, "study CSV is empty");
    const auto header = detail::split_fields(lines.front().text);
    bool header_ok = header.size() == std::size(kColumns);
    for (std::size_t i = 0; header_ok && i < header.size(); ++i) {
        header_ok = header[i] == kColumns[i];
    }
    if (!header_ok) {
        throw Error(Errc::parse,
                    "study CSV header must be "
                    "participant,enjoyment,engagement,time_s,collisions,accuracy");
    }

    std::vector<StudyRecord> out;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto f = detail::split_fields(lines[row].text);
        if (f.size() != std::size(kColumns)) {
            throw Error(Errc::parse, "study CSV row " + std::to_string(row) + ": expected 6 fields, got " +
                                         std::to_string(f.size()));
        }
        const auto score = [&](std::size_t c) {
            const auto v = detail::parse_integer(f[c]);
            if (!v) throw Error(Errc::parse, cell_error(row, kColumns[c], "not an integer"));
            if (*v < kMinScore || *v > kMaxScore) {
                throw Error(Errc::parse, cell_error(row, kColumns[c], "score outside 5..25"));
            }
            return static_cast<int>(*v);
        };
        const auto real = [&](std::size_t c) {
            const auto v = detail::parse_double(f[c]);
            if (!v || !std::isfinite(*v)) {
                throw Error(Errc::parse, cell_error(row, kColumns[c], "not a number"));
            }
            return *v;
        };

        StudyRecord rec;
        rec.participant = std::string(f[0]);
        if (rec.participant.empty()) {
            throw Error(Errc::parse, cell_error(row, kColumns[0], "empty participant id"));
        }
        rec.enjoyment = score(1);
        rec.engagement = score(2);
        rec.time_s = real(3);
        if (rec.time_s < 0.0) throw Error(Errc::parse, cell_error(row, kColumns[3], "negative time"));
        const auto collisions = detail::parse_integer(f[4]);
        if (!collisions || *collisions < 0) {
            throw Error(Errc::parse, cell_error(row, kColumns[4], "not a nonnegative integer"));
        }
        rec.collisions = static_cast<int>(*collisions);
        rec.accuracy = real(5);
        if (rec.accuracy < 0.0 || rec.accuracy > 1.0) {
            throw Error(Errc::parse, cell_error(row, kColumns[5], "outside [0, 1]"));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<StudyRecord> load_study_file(const std::filesystem::path& path) {
    return load_study(detail::read_text_file(path));
}

std::string serialize_study(std::span<const StudyRecord> records) {
    std::string out = "participant,enjoyment,engagement,time_s,collisions,accuracy\n";
    for (const auto& r : records) {
        out += r.participant + ',' + std::to_string(r.enjoyment) + ',' +
               std::to_string(r.engagement) + ',' + detail::format_roundtrip(r.time_s) + ',' +
               std::to_string(r.collisions) + ',' + detail::format_roundtrip(r.accuracy) + '\n';
    }
    return out;
}

std::vector<StudyRecord> synthesize_study(std::size_t participants, std::uint64_t seed) {
    // Cohort centers: enjoyment 20.7, engagement 18.9, 213.4 s, about two
    // collisions, 0.75 accuracy.
    constexpr double kLoading = 0.75;
    const double unique = std::sqrt(1.0 - kLoading * kLoading);
    // Divide by the integer scale so values print as their short decimal form.
    const auto round_to = [](double v, double scale) { return std::round(v * scale) / scale; };
    const auto score = [](double v) {
        return static_cast<int>(std::clamp(std::round(v), double(kMinScore), double(kMaxScore)));
    };

    Rng rng(seed);
    std::vector<StudyRecord> out;
    out.reserve(participants);
    for (std::size_t i = 0; i < participants; ++i) {
        const double z = rng.normal();
        const auto mix = [&](double sign) { return sign * kLoading * z + unique * rng.normal(); };

        StudyRecord r;
        char id[32];
        std::snprintf(id, sizeof id, "P%03zu", i + 1);
        r.participant = id;
        r.engagement = score(18.9 + 3.0 * z);
        r.enjoyment = score(20.7 + 2.6 * mix(1.0));
        r.time_s = std::max(0.0, round_to(213.4 + 25.0 * mix(-1.0), 10.0));
        r.collisions = static_cast<int>(std::max(0.0, std::round(2.0 + 1.6 * mix(-1.0))));
        r.accuracy = std::clamp(round_to(0.75 + 0.08 * mix(1.0), 100.0), 0.0, 1.0);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> study_column(std::span<const StudyRecord> records, std::string_view name) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        if (name == "engagement") {
            out.push_back(r.engagement);
        } else if (name == "enjoyment") {
            out.push_back(r.enjoyment);
        } else if (name == "time_s") {
            out.push_back(r.time_s);
        } else if (name == "collisions") {
            out.push_back(r.collisions);
        } else if (name == "accuracy") {
            out.push_back(r.accuracy);
        } else {
            throw Error(Errc::invalid_input, "unknown study column '" + std::string(name) + "'");
        }
    }
    return out;
}

StatsReport analyze_study(std::span<const StudyRecord> records, const AnalyzeOptions& options) {
    if (records.size() < 4) {
        throw Error(Errc::insufficient_sample,
                    "insufficient sample: study analysis needs at least 4 participants, got " +
                        std::to_string(records.size()));
    }
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw Error(Errc::invalid_input, "alpha must lie in (0, 1)");
    }

    StatsReport report;
    report.n = records.size();
    report.alpha = options.alpha;
    report.seed = options.seed;
    report.replicates = options.replicates;

    std::vector<std::vector<double>> columns;
    for (auto name : kStudyVariables) {
        auto col = study_column(records, name);
        if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); })) {
            throw Error(Errc::undefined_correlation,
                        "column '" + std::string(name) +
                            "' has zero variance; correlation is undefined");
        }
        columns.push_back(std::move(col));
    }

    const LillieforsNull null(records.size(), options.seed, options.replicates);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto result = ks_normality(columns[i], null);
        report.normality.push_back(
            {std::string(kStudyVariables[i]), result, result.p_value >= options.alpha});
    }

    // Engagement is column 0; pair it with every other variable.
    for (std::size_t i = 1; i < columns.size(); ++i) {
        const bool both_normal = report.normality[0].normal && report.normality[i].normal;
        const auto result =
            both_normal ? pearson(columns[0], columns[i]) : spearman(columns[0], columns[i]);
        report.correlations.push_back(
            {std::string(kStudyVariables[0]), std::string(kStudyVariables[i]), result});
    }
    return report;
}

nlohmann::ordered_json to_json(const StatsReport& report) {
    using ojson = nlohmann::ordered_json;
    ojson normality = ojson::array();
    for (const auto& v : report.normality) {
        normality.push_back(ojson{{"variable", v.variable},
                                  {"D", v.result.d},
                                  {"p_value", v.result.p_value},
                                  {"p_display", v.result.display_p()},
                                  {"capped_at_0.2", v.result.capped_at_0_2()},
                                  {"normal", v.normal},
                                  {"n", v.result.n}});
    }
    ojson correlations = ojson::array();
    for (const auto& c : report.correlations) {
        correlations.push_back(ojson{{"x", c.x},
                                     {"y", c.y},
                                     {"method", to_string(c.result.method)},
                                     {"r", c.result.r},
                                     {"p_value", c.result.p_value},
                                     {"n", c.result.n}});
    }
    return ojson{{"n", report.n},
                 {"alpha", report.alpha},
                 {"seed", report.seed},
                 {"replicates", report.replicates},
                 {"normality", normality},
                 {"correlations", correlations}};
}

}  // namespace roampath
