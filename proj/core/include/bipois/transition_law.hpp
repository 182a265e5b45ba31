#pragma once

#include <cstdint>
#include <string>

#include "bipois/rng.hpp"

namespace bipois {

enum class LawTag { kPoisson, kGamma, kNegativeBinomial, kBinomial };

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// One of the four laws that occur as transition probabilities of the
/// process: Poisson(lambda), Gamma(shape p, scale sigma), negative
/// binomial(r, p) on {0,1,...}, binomial(n, p). Construction validates the
/// parameter domains; all mass evaluation is done in log space through
/// log-gamma so that shapes like 1/theta^2 far above 10^3 stay finite.
class TransitionLaw {
 public:
  static TransitionLaw poisson(double lambda);
  static TransitionLaw gamma(double shape, double scale);
  static TransitionLaw negative_binomial(double r, double p);
  static TransitionLaw binomial(std::int64_t n, double p);

  LawTag tag() const noexcept { return tag_; }
  bool is_discrete() const noexcept { return tag_ != LawTag::kGamma; }

  double lambda() const noexcept { return a_; }      // Poisson
  double shape() const noexcept { return a_; }       // Gamma
  double scale() const noexcept { return b_; }       // Gamma
  double r() const noexcept { return a_; }           // NegativeBinomial
  double p() const noexcept { return b_; }           // NegativeBinomial / Binomial
  std::int64_t n() const noexcept { return n_; }     // Binomial

  /// log pmf at integer k (discrete laws). -inf off support; negative k is
  /// a domain error, not a mass-zero point.
  double log_mass(std::int64_t k) const;

  /// log pdf at x >= 0 (Gamma only).
  double log_density(double x) const;

  /// E exp(uZ). Throws std::domain_error naming the bound when u is outside
  /// the convergence region.
  double mgf(double u) const;
  double mgf_log(double u) const;

  /// Least upper bound of the convergence region (+inf when entire line).
  double mgf_upper_bound() const noexcept;

  Moments moments() const noexcept;

  /// Exact sampling (no approximation bias): Poisson by inversion or PTRS
  /// rejection, Gamma by Marsaglia-Tsang, negative binomial as a
  /// gamma-mixed Poisson, binomial by inversion.
  double sample(Rng& rng) const;
  std::int64_t sample_int(Rng& rng) const;

  std::string describe() const;

  bool operator==(const TransitionLaw&) const = default;

 private:
  TransitionLaw(LawTag tag, double a, double b, std::int64_t n)
      : tag_(tag), a_(a), b_(b), n_(n) {}

  LawTag tag_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::int64_t n_ = 0;
};

/// Exact samplers shared with the trajectory module.
std::int64_t sample_poisson(double lambda, Rng& rng);
double sample_gamma(double shape, double scale, Rng& rng);
std::int64_t sample_binomial(std::int64_t n, double p, Rng& rng);

}  // namespace bipois
