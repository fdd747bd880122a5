#include "offshell/quadrature.hpp"

#include <map>
#include <mutex>

namespace offshell {

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be > 0");

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(3.14159265358979323846 * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = (n == 1) ? 2.0 : w;
    rule.weights[n - 1 - i] = (n == 1) ? 2.0 : w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

Extrapolation extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys, double power) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "extrapolation needs >= 2 matching samples");
  }
  const std::size_t n = xs.size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = std::pow(xs[i], power);
  std::vector<double> p(ys.begin(), ys.end());
  Extrapolation out;
  out.diagonal.push_back(p[n - 1]);
  // p[i] after level k holds the interpolant through points i..i+k at 0.
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      p[i] = (h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i]);
    }
    out.diagonal.push_back(p[n - 1 - k]);
  }
  out.value = p[0];
  // Compare the full extrapolant with the one that drops the coarsest point.
  std::vector<double> q(ys.begin() + 1, ys.end());
  for (std::size_t k = 1; k + 1 < n; ++k) {
    for (std::size_t i = 0; i + k < n - 1; ++i) {
      q[i] = (h[i + 1 + k] * q[i] - h[i + 1] * q[i + 1]) / (h[i + 1 + k] - h[i + 1]);
    }
  }
  out.error = std::abs(out.value - q[0]);
  return out;
}

}  // namespace offshell
