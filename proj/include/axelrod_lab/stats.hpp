#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace axelrod::stats {

/// Running mean and variance (Welford).
class Accumulator {
 public:
  void add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const noexcept {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }
  double standard_error() const noexcept {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Standard deviation of a sample proportion for success probability p.
inline double binomial_sigma(double p, std::uint64_t n) {
  return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool overlaps(const Interval& other) const noexcept {
    return !(high < other.low || other.high < low);
  }
};

/// Normal-approximation 95% interval for the mean.
inline Interval confidence95(const Accumulator& acc) {
  const double half = 1.96 * acc.standard_error();
  return {acc.mean() - half, acc.mean() + half};
}

/// Empirical CDF evaluated at x: fraction of samples <= x.
double empirical_cdf(std::span<const double> sorted_samples, double x);

/// Sample quantile (type 1, inverse of the empirical CDF) of sorted data.
double quantile(std::span<const double> sorted_samples, double p);

/// Kolmogorov-Smirnov statistic of samples against Exp(rate).
double ks_exponential(std::vector<double> samples, double rate);

}  // namespace axelrod::stats
