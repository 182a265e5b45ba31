#include "bipois/transition_law.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bipois/numeric.hpp"

namespace bipois {

namespace {

[[noreturn]] void throw_domain(const std::string& msg) {
  throw std::domain_error(msg);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TransitionLaw TransitionLaw::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("Poisson requires lambda > 0");
  }
  return {LawTag::kPoisson, lambda, 0.0, 0};
}

TransitionLaw TransitionLaw::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) ||
      !std::isfinite(scale)) {
    throw std::invalid_argument("Gamma requires shape > 0 and scale > 0");
  }
  return {LawTag::kGamma, shape, scale, 0};
}

TransitionLaw TransitionLaw::negative_binomial(double r, double p) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("NegativeBinomial requires r > 0");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("NegativeBinomial requires p in (0,1)");
  }
  return {LawTag::kNegativeBinomial, r, p, 0};
}

TransitionLaw TransitionLaw::binomial(std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("Binomial requires n >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("Binomial requires p in [0,1]");
  }
  return {LawTag::kBinomial, 0.0, p, n};
}

double TransitionLaw::log_mass(std::int64_t k) const {
  if (tag_ == LawTag::kGamma) {
    throw_domain("log_mass: Gamma is continuous, use log_density");
  }
  if (k < 0) throw_domain("log_mass: k must be >= 0");
  const double kd = static_cast<double>(k);
  switch (tag_) {
    case LawTag::kPoisson:
      return -a_ + kd * std::log(a_) - std::lgamma(kd + 1.0);
    case LawTag::kNegativeBinomial:
      return std::lgamma(kd + a_) - std::lgamma(a_) - std::lgamma(kd + 1.0) +
             a_ * std::log(b_) + kd * std::log1p(-b_);
    case LawTag::kBinomial: {
      if (k > n_) return kNegInf;
      if (b_ == 0.0) return k == 0 ? 0.0 : kNegInf;
      if (b_ == 1.0) return k == n_ ? 0.0 : kNegInf;
      return log_binomial_coefficient(n_, k) + kd * std::log(b_) +
             static_cast<double>(n_ - k) * std::log1p(-b_);
    }
    default:
      throw_domain("log_mass: unreachable");
  }
}

double TransitionLaw::log_density(double x) const {
  if (tag_ != LawTag::kGamma) {
    throw_domain("log_density: only Gamma has a density, use log_mass");
  }
  if (x < 0.0) throw_domain("log_density: x must be >= 0");
  if (x == 0.0) {
    if (a_ > 1.0) return kNegInf;
    if (a_ == 1.0) return -std::log(b_);
    return kPosInf;  // integrable boundary blow-up for shape < 1
  }
  return -std::lgamma(a_) - a_ * std::log(b_) + (a_ - 1.0) * std::log(x) -
         x / b_;
}

double TransitionLaw::mgf_log(double u) const {
  switch (tag_) {
    case LawTag::kPoisson:
      return a_ * std::expm1(u);
    case LawTag::kGamma:
      if (u * b_ >= 1.0) {
        throw_domain("mgf diverges: Gamma requires u < 1/scale = " +
                     format_double(1.0 / b_));
      }
      return -a_ * std::log1p(-b_ * u);
    case LawTag::kNegativeBinomial: {
      const double q = 1.0 - b_;
      if (u >= -std::log(q)) {
        throw_domain("mgf diverges: NegativeBinomial requires u < -log(1-p) = " +
                     format_double(-std::log(q)));
      }
      // log(p / (1 - q e^u)) with 1 - q e^u = p - q expm1(u)
      return -a_ * std::log1p(-q * std::expm1(u) / b_);
    }
    case LawTag::kBinomial:
      return static_cast<double>(n_) * std::log1p(b_ * std::expm1(u));
  }
  throw_domain("mgf_log: unreachable");
}

double TransitionLaw::mgf(double u) const { return std::exp(mgf_log(u)); }

double TransitionLaw::mgf_upper_bound() const noexcept {
  switch (tag_) {
    case LawTag::kGamma:
      return 1.0 / b_;
    case LawTag::kNegativeBinomial:
      return -std::log1p(-b_);
    default:
      return kPosInf;
  }
}

Moments TransitionLaw::moments() const noexcept {
  switch (tag_) {
    case LawTag::kPoisson:
      return {a_, a_};
    case LawTag::kGamma:
      return {a_ * b_, a_ * b_ * b_};
    case LawTag::kNegativeBinomial: {
      const double q = 1.0 - b_;
      return {a_ * q / b_, a_ * q / (b_ * b_)};
    }
    case LawTag::kBinomial: {
      const double nd = static_cast<double>(n_);
      return {nd * b_, nd * b_ * (1.0 - b_)};
    }
  }
  return {};
}

std::int64_t sample_poisson(double lambda, Rng& rng) {
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    // inversion by sequential search
    const double p0 = std::exp(-lambda);
    double p = p0;
    double cdf = p0;
    const double u = rng.uniform01();
    std::int64_t k = 0;
    while (u > cdf && k < 2000) {
      ++k;
      p *= lambda / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // PTRS transformed rejection (Hormann), exact for lambda >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_lambda = std::log(lambda);
  for (;;) {
    double u = rng.uniform01() - 0.5;
    double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_lambda - lambda - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

double sample_gamma(double shape, double scale, Rng& rng) {
  if (shape < 1.0) {
    const double boost =
        std::pow(rng.uniform01_open_left(), 1.0 / shape);
    return sample_gamma(shape + 1.0, scale, rng) * boost;
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01_open_left();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v * scale;
    }
  }
}

std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng) {
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);
  // geometric-skip method: exact for any n without pmf underflow,
  // expected cost O(np + 1)
  const double log_q = std::log1p(-p);
  std::int64_t successes = 0;
  std::int64_t pos = 0;
  for (;;) {
    const double g =
        std::floor(std::log(rng.uniform01_open_left()) / log_q);
    pos += static_cast<std::int64_t>(g) + 1;
    if (pos > n) return successes;
    ++successes;
  }
}

double TransitionLaw::sample(Rng& rng) const {
  switch (tag_) {
    case LawTag::kPoisson:
      return static_cast<double>(sample_poisson(a_, rng));
    case LawTag::kGamma:
      return sample_gamma(a_, b_, rng);
    case LawTag::kNegativeBinomial: {
      // gamma-mixed Poisson
      const double mix = sample_gamma(a_, (1.0 - b_) / b_, rng);
      return static_cast<double>(sample_poisson(mix, rng));
    }
    case LawTag::kBinomial:
      return static_cast<double>(sample_binomial(n_, b_, rng));
  }
  return 0.0;
}

std::int64_t TransitionLaw::sample_int(Rng& rng) const {
  if (!is_discrete()) {
    throw_domain("sample_int: law is continuous");
  }
  return static_cast<std::int64_t>(sample(rng));
}

std::string TransitionLaw::describe() const {
  switch (tag_) {
    case LawTag::kPoisson:
      return "Poisson(lambda=" + format_double(a_) + ")";
    case LawTag::kGamma:
      return "Gamma(shape=" + format_double(a_) +
             ", scale=" + format_double(b_) + ")";
    case LawTag::kNegativeBinomial:
      return "NegativeBinomial(r=" + format_double(a_) +
             ", p=" + format_double(b_) + ")";
    case LawTag::kBinomial:
      return "Binomial(n=" + std::to_string(n_) +
             ", p=" + format_double(b_) + ")";
  }
  return {};
}

}  // namespace bipois
