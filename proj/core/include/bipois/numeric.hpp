#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

namespace bipois {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Neumaier-compensated accumulator for long sums of small positive terms.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct AdaptiveSumResult {
  double value = 0.0;
  std::int64_t k_stop = 0;  // last index included
  bool converged = false;
};

/// Sums exp(log_term(k)) for k = k_begin, k_begin+1, ... with the adaptive
/// tail rule: stop at the first index past the running maximum where the
/// term drops below eps_tail times the partial sum. All terms must be
/// log-masses (finite or -inf).
template <typename LogTermFn>
AdaptiveSumResult adaptive_sum(LogTermFn&& log_term, std::int64_t k_begin,
                               double eps_tail = 1e-16,
                               std::int64_t k_cap = 20'000'000) {
  CompensatedSum acc;
  double best = kNegInf;
  AdaptiveSumResult out;
  for (std::int64_t k = k_begin; k < k_begin + k_cap; ++k) {
    const double lt = log_term(k);
    const double term = std::isfinite(lt) ? std::exp(lt) : 0.0;
    acc.add(term);
    out.k_stop = k;
    if (lt >= best) {
      best = lt;
      continue;  // still climbing toward the mode
    }
    if (term < eps_tail * acc.value()) {
      out.converged = true;
      break;
    }
  }
  out.value = acc.value();
  return out;
}

/// Regularized lower incomplete gamma P(a, x); series for x < a+1, else
/// 1 - continued fraction (Lentz). Accurate to ~1e-14 for moderate a.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-square distribution with dof degrees.
double chi_square_sf(double x, double dof);

/// log(n choose k) via log-gamma.
inline double log_binomial_coefficient(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace bipois
