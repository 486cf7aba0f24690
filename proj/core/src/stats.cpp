#include "roampath/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "roampath/error.hpp"
#include "roampath/random.hpp"

namespace roampath {

std::string_view to_string(CorrelationMethod method) noexcept {
    return method == CorrelationMethod::pearson ? "pearson" : "spearman";
}

double mean(std::span<const double> x) {
    if (x.empty()) throw Error(Errc::insufficient_sample, "mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) throw Error(Errc::insufficient_sample, "sd needs at least 2 values");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

namespace {

void check_pairs(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size()) {
        throw Error(Errc::invalid_input, "paired samples differ in length");
    }
    if (x.size() < min_n) {
        throw Error(Errc::insufficient_sample, "insufficient sample: need at least " +
                                                   std::to_string(min_n) + " values, got " +
                                                   std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw Error(Errc::invalid_input, "samples must be finite");
        }
    }
}

double correlation_coefficient(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(Errc::undefined_correlation, "correlation undefined: zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

double correlation_p_value(double r, std::size_t n) {
    if (n < 3) throw Error(Errc::insufficient_sample, "p-value needs n >= 3");
    const double df = static_cast<double>(n - 2);
    const double one_minus_r2 = 1.0 - r * r;
    if (one_minus_r2 <= 0.0) return 0.0;
    const double t = std::abs(r) * std::sqrt(df / one_minus_r2);
    const boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)), 0.0, 1.0);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    check_pairs(x, y, 3);
    const double r = correlation_coefficient(x, y);
    return {CorrelationMethod::pearson, r, correlation_p_value(r, x.size()), x.size()};
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        // Positions i..j-1 hold ranks i+1..j.
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    check_pairs(x, y, 3);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double r = correlation_coefficient(rx, ry);
    return {CorrelationMethod::spearman, r, correlation_p_value(r, x.size()), x.size()};
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

// Assumes finite input with at least 2 values; returns D or throws on zero variance.
double ks_distance(std::vector<double> x) {
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    if (ss == 0.0) {
        throw Error(Errc::degenerate_sample, "normality test undefined: zero variance");
    }
    const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf((x[i] - m) / sd);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

void check_normality_input(std::span<const double> x) {
    if (x.size() < 4) {
        throw Error(Errc::insufficient_sample, "insufficient sample: normality test needs n >= 4");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(Errc::invalid_input, "samples must be finite");
    }
}

}  // namespace

double ks_statistic(std::span<const double> x) {
    check_normality_input(x);
    return ks_distance(std::vector<double>(x.begin(), x.end()));
}

LillieforsNull::LillieforsNull(std::size_t n, std::uint64_t seed, std::size_t replicates)
    : n_(n) {
    if (n < 4) throw Error(Errc::insufficient_sample, "normality test needs n >= 4");
    if (replicates == 0) throw Error(Errc::invalid_input, "need at least one replicate");
    sorted_.reserve(replicates);
    std::vector<double> sample(n);
    for (std::size_t r = 0; r < replicates; ++r) {
        Rng rng(derive_seed(seed, r));
        for (auto& v : sample) v = rng.normal();
        sorted_.push_back(ks_distance(sample));
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double LillieforsNull::p_value(double d) const {
    const auto first_ge = std::lower_bound(sorted_.begin(), sorted_.end(), d);
    const auto at_least = static_cast<double>(sorted_.end() - first_ge);
    return (1.0 + at_least) / (static_cast<double>(sorted_.size()) + 1.0);
}

NormalityResult ks_normality(std::span<const double> x, const LillieforsNull& null) {
    check_normality_input(x);
    if (null.sample_size() != x.size()) {
        throw Error(Errc::invalid_input, "null distribution was built for a different n");
    }
    const double d = ks_distance(std::vector<double>(x.begin(), x.end()));
    return {d, null.p_value(d), x.size(), null.replicates()};
}

NormalityResult ks_normality(std::span<const double> x, std::uint64_t seed,
                             std::size_t replicates) {
    check_normality_input(x);
    // Fail on a degenerate sample before paying for the simulation.
    const double d = ks_distance(std::vector<double>(x.begin(), x.end()));
    const LillieforsNull null(x.size(), seed, replicates);
    return {d, null.p_value(d), x.size(), null.replicates()};
}

double students_t_quantile(double probability, double degrees_of_freedom) {
    const boost::math::students_t dist(degrees_of_freedom);
    return boost::math::quantile(dist, probability);
}

RegressionFit::RegressionFit(double slope, double intercept, std::size_t n, double x_mean,
                             double sxx, double residual_sd, double confidence)
    : slope_(slope),
      intercept_(intercept),
      n_(n),
      x_mean_(x_mean),
      sxx_(sxx),
      residual_sd_(residual_sd),
      confidence_(confidence),
      t_quantile_(students_t_quantile(0.5 + 0.5 * confidence, static_cast<double>(n - 2))) {}

double RegressionFit::half_width(double x) const noexcept {
    const double dx = x - x_mean_;
    return t_quantile_ * residual_sd_ *
           std::sqrt(1.0 / static_cast<double>(n_) + dx * dx / sxx_);
}

Band RegressionFit::band(double x) const noexcept {
    const double fit = predict(x);
    const double h = half_width(x);
    return {fit - h, fit + h};
}

RegressionFit linear_fit_with_band(std::span<const double> x, std::span<const double> y,
                                   double confidence) {
    check_pairs(x, y, 3);
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error(Errc::invalid_input, "confidence must lie in (0, 1)");
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw Error(Errc::undefined_fit, "regression undefined: zero variance in x");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (intercept + slope * x[i]);
        sse += e * e;
    }
    const double s = std::sqrt(sse / static_cast<double>(x.size() - 2));
    return RegressionFit(slope, intercept, x.size(), mx, sxx, s, confidence);
}

}  // namespace roampath
