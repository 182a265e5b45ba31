#include "bipois/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bipois/numeric.hpp"

namespace bipois {

double RunningMoments::standard_error() const noexcept {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

namespace {

ChiSquareResult chi_square_from_cells(const std::vector<double>& observed,
                                      const std::vector<double>& expected) {
  ChiSquareResult out;
  out.merged_cells = static_cast<std::int64_t>(observed.size());
  out.dof = static_cast<std::int64_t>(observed.size()) - 1;
  if (out.dof < 1) {
    out.dof = 0;
    return out;  // degenerate: everything in one cell
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  out.statistic = stat;
  out.p_value = chi_square_sf(stat, static_cast<double>(out.dof));
  return out;
}

// merge adjacent cells (from the right, then from the left) until all
// expected counts reach the floor
void merge_small_cells(std::vector<double>& obs, std::vector<double>& exp,
                       double min_expected) {
  // right-to-left pass
  for (std::size_t i = obs.size(); i-- > 1;) {
    if (exp[i] < min_expected) {
      exp[i - 1] += exp[i];
      obs[i - 1] += obs[i];
      exp.erase(exp.begin() + static_cast<std::ptrdiff_t>(i));
      obs.erase(obs.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  // the first cell may still be small
  while (exp.size() > 1 && exp.front() < min_expected) {
    exp[1] += exp[0];
    obs[1] += obs[0];
    exp.erase(exp.begin());
    obs.erase(obs.begin());
  }
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::int64_t> counts,
                               std::span<const double> probs,
                               std::int64_t total, double min_expected) {
  if (counts.size() != probs.size()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  std::vector<double> obs(counts.begin(), counts.end());
  std::vector<double> exp;
  exp.reserve(probs.size() + 1);
  double mass = 0.0;
  double observed_mass = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    exp.push_back(probs[i] * static_cast<double>(total));
    mass += probs[i];
    observed_mass += obs[i];
  }
  // implicit overflow cell for the remaining probability mass
  const double tail_prob = std::max(0.0, 1.0 - mass);
  exp.push_back(tail_prob * static_cast<double>(total));
  obs.push_back(static_cast<double>(total) - observed_mass);
  merge_small_cells(obs, exp, min_expected);
  return chi_square_from_cells(obs, exp);
}

ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b,
                                      double min_expected) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  }
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  }
  // merge on pooled expected counts
  std::vector<double> ca(a.begin(), a.end());
  std::vector<double> cb(b.begin(), b.end());
  {
    std::vector<double> pooled(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) pooled[i] = ca[i] + cb[i];
    for (std::size_t i = pooled.size(); i-- > 1;) {
      const double scale = std::min(na, nb) / (na + nb);
      if (pooled[i] * scale < min_expected) {
        pooled[i - 1] += pooled[i];
        ca[i - 1] += ca[i];
        cb[i - 1] += cb[i];
        pooled.erase(pooled.begin() + static_cast<std::ptrdiff_t>(i));
        ca.erase(ca.begin() + static_cast<std::ptrdiff_t>(i));
        cb.erase(cb.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    while (pooled.size() > 1 &&
           pooled.front() * std::min(na, nb) / (na + nb) < min_expected) {
      pooled[1] += pooled[0];
      ca[1] += ca[0];
      cb[1] += cb[0];
      pooled.erase(pooled.begin());
      ca.erase(ca.begin());
      cb.erase(cb.begin());
    }
  }
  ChiSquareResult out;
  out.merged_cells = static_cast<std::int64_t>(ca.size());
  out.dof = static_cast<std::int64_t>(ca.size()) - 1;
  if (out.dof < 1) {
    out.dof = 0;
    return out;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double pooled = (ca[i] + cb[i]) / (na + nb);
    const double ea = pooled * na;
    const double eb = pooled * nb;
    if (ea > 0.0) stat += (ca[i] - ea) * (ca[i] - ea) / ea;
    if (eb > 0.0) stat += (cb[i] - eb) * (cb[i] - eb) / eb;
  }
  out.statistic = stat;
  out.p_value = chi_square_sf(stat, static_cast<double>(out.dof));
  return out;
}

double ks_test_pvalue(std::vector<double> samples,
                      const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_test_pvalue: empty sample");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  // Kolmogorov tail sum
  double p = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    p += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

DispersionResult dispersion_index(std::span<const std::int64_t> counts) {
  RunningMoments m;
  for (auto c : counts) m.add(static_cast<double>(c));
  DispersionResult out;
  if (m.count() < 2 || m.mean() == 0.0) return out;
  out.index = m.variance() / m.mean();
  const double n1 = static_cast<double>(m.count() - 1);
  out.z_score = (out.index - 1.0) / std::sqrt(2.0 / n1);
  return out;
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation: need two equal-length samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace bipois
