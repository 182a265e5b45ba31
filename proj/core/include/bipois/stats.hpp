#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bipois {

/// Streaming mean/variance (Welford).
class RunningMoments {
 public:
  void add(double x) noexcept {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  void merge(const RunningMoments& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double d = other.mean_ - mean_;
    mean_ += d * nb / (na + nb);
    m2_ += other.m2_ + d * d * na * nb / (na + nb);
    n_ += other.n_;
  }
  std::int64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }
  double standard_error() const noexcept;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t dof = 0;
  std::int64_t merged_cells = 0;
};

/// Goodness of fit of observed counts against exact cell probabilities.
/// Cells are merged greedily from the tail until every expected count is at
/// least min_expected. probs may sum to < 1; the remainder becomes an
/// implicit overflow cell.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> counts,
                               std::span<const double> probs,
                               std::int64_t total,
                               double min_expected = 5.0);

/// Two-sample chi-square homogeneity test on parallel count vectors.
ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b,
                                      double min_expected = 5.0);

/// One-sample Kolmogorov-Smirnov p-value against a continuous CDF.
/// Asymptotic with the Stephens small-sample correction.
double ks_test_pvalue(std::vector<double> samples,
                      const std::function<double(double)>& cdf);

/// Index of dispersion (sample variance / sample mean) with the normal
/// approximation to its null distribution under Poisson sampling:
/// (n-1) D ~ chi-square(n-1).
struct DispersionResult {
  double index = 1.0;
  double z_score = 0.0;  // standardized (index - 1) / sqrt(2/(n-1))
};
DispersionResult dispersion_index(std::span<const std::int64_t> counts);

/// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace bipois
