#include "bipois/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace bipois {

namespace {

struct GaussRule {
  std::array<double, 16> nodes;    // on (-1, 1)
  std::array<double, 16> weights;
};

// Nodes by Newton iteration on Legendre P_16; computed once.
const GaussRule& gauss16() {
  static const GaussRule rule = [] {
    GaussRule r{};
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double p0 = 0.0, p1 = 0.0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double gauss16_panels(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  const GaussRule& rule = gauss16();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < 16; ++i) {
      s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += s * half;
  }
  return total;
}

}  // namespace

QuadratureResult gauss_legendre_adaptive(const std::function<double(double)>& f,
                                         double a, double b, double tol,
                                         int max_panels) {
  QuadratureResult out;
  double prev = gauss16_panels(f, a, b, 1);
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    const double cur = gauss16_panels(f, a, b, panels);
    out.value = cur;
    out.refinement_level = panels;
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_level) {
  // x = c + r*tanh((pi/2) sinh t); weights decay double-exponentially in t.
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double t_max = 3.8;  // tanh((pi/2) sinh 3.8) is 1 to double precision

  auto eval = [&](double t) -> double {
    const double s = std::sinh(t) * (M_PI / 2.0);
    const double ch = std::cosh(s);
    const double w = (M_PI / 2.0) * std::cosh(t) / (ch * ch);
    // 1 - |tanh(s)| computed stably so nodes hug the endpoints without
    // rounding onto them.
    const double off = r / (std::exp(s) * ch);  // r * (1 - tanh s) for s > 0
    const double x_lo = a + off;
    const double x_hi = b - off;
    double v = 0.0;
    if (t == 0.0) {
      v = f(c);
      return w * v;
    }
    if (x_lo > a) v += f(x_lo);
    if (x_hi < b) v += f(x_hi);
    return w * v;
  };

  QuadratureResult out;
  double h = t_max;
  double sum = eval(0.0);
  double prev = r * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    // add the new odd nodes for this level
    for (double t = h; t <= t_max; t += 2.0 * h) {
      sum += eval(t);
    }
    const double cur = r * h * sum;
    out.value = cur;
    out.refinement_level = level;
    if (level >= 3 && std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

}  // namespace bipois
