#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace roampath {

enum class CorrelationMethod { pearson, spearman };

std::string_view to_string(CorrelationMethod method) noexcept;

struct CorrelationResult {
    CorrelationMethod method = CorrelationMethod::pearson;
    double r = 0.0;
    double p_value = 1.0;  // two-sided, t distribution with n-2 df
    std::size_t n = 0;
};

/// Needs n >= 3 and nonzero variance in both inputs.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);
/// Pearson correlation of average ranks.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values share the mean of the ranks they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Two-sided p for a correlation r over n pairs.
double correlation_p_value(double r, std::size_t n);

/// Kolmogorov-Smirnov distance between the sample and the normal
/// distribution with the sample's mean and (n-1) standard deviation.
double ks_statistic(std::span<const double> x);

inline constexpr std::size_t kDefaultKsReplicates = 10000;

/// Simulated null distribution of ks_statistic for samples of size n drawn
/// from a normal law with unknown parameters. The statistic is location and
/// scale free, so one table serves every sample of that size.
class LillieforsNull {
public:
    LillieforsNull(std::size_t n, std::uint64_t seed,
                   std::size_t replicates = kDefaultKsReplicates);

    /// (1 + #{replicates with D' >= d}) / (replicates + 1).
    double p_value(double d) const;

    std::size_t sample_size() const noexcept { return n_; }
    std::size_t replicates() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_statistics() const noexcept { return sorted_; }

private:
    std::size_t n_;
    std::vector<double> sorted_;
};

/// Values of p at or above this are displayed as this ceiling.
inline constexpr double kNormalityDisplayCeiling = 0.2;

struct NormalityResult {
    double d = 0.0;
    double p_value = 1.0;  // Monte-Carlo estimate
    std::size_t n = 0;
    std::size_t replicates = 0;

    bool capped_at_0_2() const noexcept { return p_value >= kNormalityDisplayCeiling; }
    double display_p() const noexcept {
        return capped_at_0_2() ? kNormalityDisplayCeiling : p_value;
    }
};

/// Needs n >= 4 and nonzero variance.
NormalityResult ks_normality(std::span<const double> x, std::uint64_t seed,
                             std::size_t replicates = kDefaultKsReplicates);
NormalityResult ks_normality(std::span<const double> x, const LillieforsNull& null);

struct Band {
    double lower;
    double upper;
};

/// Ordinary least squares line with a confidence band for the mean response.
class RegressionFit {
public:
    RegressionFit(double slope, double intercept, std::size_t n, double x_mean, double sxx,
                  double residual_sd, double confidence);

    double slope() const noexcept { return slope_; }
    double intercept() const noexcept { return intercept_; }
    std::size_t n() const noexcept { return n_; }
    double x_mean() const noexcept { return x_mean_; }
    double residual_sd() const noexcept { return residual_sd_; }
    double confidence() const noexcept { return confidence_; }
    double t_quantile() const noexcept { return t_quantile_; }

    double predict(double x) const noexcept { return intercept_ + slope_ * x; }
    /// t * s * sqrt(1/n + (x - mean)^2 / Sxx)
    double half_width(double x) const noexcept;
    Band band(double x) const noexcept;

private:
    double slope_, intercept_;
    std::size_t n_;
    double x_mean_, sxx_, residual_sd_, confidence_, t_quantile_;
};

RegressionFit linear_fit_with_band(std::span<const double> x, std::span<const double> y,
                                   double confidence = 0.95);

/// Quantile of Student's t distribution.
double students_t_quantile(double probability, double degrees_of_freedom);

double mean(std::span<const double> x);
/// Sample standard deviation (n-1 denominator).
double sample_sd(std::span<const double> x);

}  // namespace roampath
