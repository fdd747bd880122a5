#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "offshell/error.hpp"

namespace offshell {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  std::size_t evals = 0;
};

/// Shared evaluation counter for nested integrations.
class EvalBudget {
 public:
  explicit EvalBudget(std::size_t limit) : limit_(limit) {}
  void charge(std::size_t n) {
    used_ += n;
    if (used_ > limit_) {
      throw Error(ErrorCode::BudgetExceeded,
                  "evaluation budget of " + std::to_string(limit_) + " exceeded");
    }
  }
  std::size_t used() const noexcept { return used_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

/// Gauss-Legendre rule on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t n);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <typename F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  const double value = resk * h;
  const double err = std::abs((resk - resg) * h);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonIntegrable,
                "non-finite integrand samples on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return Segment{a, b, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Bisects the segment with
/// the largest error estimate until the summed estimate meets
/// max(abs_tol, rel_tol * |value|) or max_segments is reached. Deterministic.
template <typename F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                     EvalBudget* budget = nullptr, std::size_t max_segments = 4000) {
  if (a == b) return {};
  auto& fn = f;
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(fn, a, b);
  std::size_t evals = 15;
  if (budget) budget->charge(15);
  double total = first.value;
  double err = first.err;
  heap.push(first);
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_segments) {
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      heap.push(worst);
      break;
    }
    auto left = detail::gk15(fn, worst.a, mid);
    auto right = detail::gk15(fn, mid, worst.b);
    evals += 30;
    if (budget) budget->charge(30);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the leaves so rounding does not depend on refinement history.
  double sum = 0.0;
  double esum = 0.0;
  std::vector<detail::Segment> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  for (const auto& s : leaves) {
    sum += s.value;
    esum += s.err;
  }
  return QuadResult{sum, esum, evals};
}

/// Which ends of [a, b] carry an inverse-square-root singularity or a
/// square-root cusp. The substitution x = a + (b - a) u^2 (and its mirror)
/// turns both into smooth integrands.
enum class SqrtEnds { None, Left, Right, Both };

template <typename F>
QuadResult integrate_sqrt_ends(F&& f, double a, double b, SqrtEnds ends, double abs_tol,
                               double rel_tol, EvalBudget* budget = nullptr) {
  if (a == b) return {};
  const double L = b - a;
  switch (ends) {
    case SqrtEnds::None:
      return integrate(f, a, b, abs_tol, rel_tol, budget);
    case SqrtEnds::Left: {
      auto g = [&](double u) { return 2.0 * L * u * f(a + L * u * u); };
      return integrate(g, 0.0, 1.0, abs_tol, rel_tol, budget);
    }
    case SqrtEnds::Right: {
      auto g = [&](double u) { return 2.0 * L * u * f(b - L * u * u); };
      return integrate(g, 0.0, 1.0, abs_tol, rel_tol, budget);
    }
    case SqrtEnds::Both: {
      const double m = 0.5 * (a + b);
      auto left = integrate_sqrt_ends(f, a, m, SqrtEnds::Left, 0.5 * abs_tol, rel_tol, budget);
      auto right = integrate_sqrt_ends(f, m, b, SqrtEnds::Right, 0.5 * abs_tol, rel_tol, budget);
      return {left.value + right.value, left.abs_err + right.abs_err, left.evals + right.evals};
    }
  }
  return {};
}

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
template <typename F>
double composite_gauss(F&& f, double a, double b, std::size_t panels, std::size_t order) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + (static_cast<double>(p) + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < order; ++i) s += rule.weights[i] * f(c + 0.5 * h * rule.nodes[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

struct Extrapolation {
  double value = 0.0;
  double error = 0.0;  // |last diagonal - previous diagonal|
  std::vector<double> diagonal;
};

/// Neville polynomial extrapolation of y(x) to x = 0 in the variable x^power.
/// Points need not be equally spaced. Throws InvalidArgument for < 2 points.
Extrapolation extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys,
                                  double power = 1.0);

}  // namespace offshell
