#include "offshell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "offshell/error.hpp"
#include "offshell/parallel.hpp"

namespace offshell {

namespace {

constexpr std::size_t kOrder = 16;
constexpr double kPvRel = 1e-12;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

Nodes gl_nodes(double a, double b, std::size_t n) {
  const std::size_t panels = std::max<std::size_t>(1, (n + kOrder - 1) / kOrder);
  const GaussRule& rule = gauss_legendre(kOrder);
  Nodes out;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < kOrder; ++i) {
      out.x.push_back(c + 0.5 * h * rule.nodes[i]);
      out.w.push_back(0.5 * h * rule.weights[i]);
    }
  }
  return out;
}

// Spatial Fourier transform of exp(-(r - rc)^2/w^2) over R^3. For rc > 0 the
// shell is extended to r < 0, where it is below the truncation level anyway.
double radial_transform(double k, double rc, double w) {
  const double g = std::exp(-0.25 * w * w * k * k);
  if (rc == 0.0) return std::pow(kPi, 1.5) * w * w * w * g;
  const double pre = 4.0 * kPi * std::sqrt(kPi) * w * g;
  if (k * rc < 1e-6) return pre * (rc * rc + 0.5 * w * w);
  return pre / k * (rc * std::sin(k * rc) + 0.5 * k * w * w * std::cos(k * rc));
}

struct BumpSum {
  double value = 0.0;
  double pv_err = 0.0;
  double abel_gap = 0.0;  // max |excision - damping| over checked nodes
  double pv_scale = 0.0;  // max |PV| over nodes
};

BumpSum bump_pairing(const Bump& b, std::size_t n, const QuadSpec& q, bool check_abel) {
  const double w = b.width;
  const double reach = 13.5 / w;
  const Nodes om = gl_nodes(0.0, reach, n);
  const Nodes ps = gl_nodes(0.0, kPi, n);
  auto f = [&](double k) { return std::cos(k * b.t_c) * std::exp(-0.25 * w * w * k * k); };
  const double sq = std::sqrt(kPi) * w;

  struct Row {
    double value, err, gap, pv;
  };
  auto row = [&](std::size_t i) {
    const double omega = om.x[i];
    const double scale = std::min(omega, 1.0 / (std::abs(b.t_c) + w));
    std::vector<double> deltas;
    for (double e : q.eps_seq) deltas.push_back(e * scale);
    const Extrapolation pv = pv_excision(f, omega, reach, deltas);
    double gap = 0.0;
    if (check_abel && i % kOrder == kOrder / 2) {
      const Extrapolation ab = pv_abel(f, omega, reach, deltas);
      gap = std::abs(ab.value - pv.value);
    }
    double inner = 0.0;
    double inner_abs = 0.0;
    for (std::size_t j = 0; j < ps.x.size(); ++j) {
      const double k = omega * std::sin(ps.x[j]);
      const double k5 = omega * std::cos(ps.x[j]);
      const double v = ps.w[j] * 4.0 * kPi * k * k * radial_transform(k, b.r_c, w) * sq *
                       std::cos(k5 * b.tau_c) * std::exp(-0.25 * w * w * k5 * k5);
      inner += v;
      inner_abs += std::abs(v);
    }
    const double jac = om.w[i] * omega * sq / omega;  // omega dω, H = PV/omega
    return Row{jac * inner * pv.value, std::abs(jac) * inner_abs * pv.error, gap, std::abs(pv.value)};
  };
  const auto rows = parallel_map<Row>(om.x.size(), row);
  BumpSum s;
  for (const auto& r : rows) {
    s.value += r.value;
    s.pv_err += r.err;
    s.abel_gap = std::max(s.abel_gap, r.gap);
    s.pv_scale = std::max(s.pv_scale, r.pv);
  }
  const double norm = b.weight / std::pow(2.0 * kPi, 5);
  s.value *= norm;
  s.pv_err *= std::abs(norm);
  return s;
}

}  // namespace

Extrapolation pv_excision(const std::function<double(double)>& f, double omega, double reach,
                          std::span<const double> deltas) {
  const double U = omega + reach;
  // With v = |k - omega| = e^s the two sides combine into a bounded integrand.
  auto g = [&](double s) {
    const double v = std::exp(s);
    return f(omega - v) - f(omega + v);
  };
  std::vector<double> xs;
  std::vector<double> ys;
  for (double d : deltas) {
    if (!(d > 0.0) || d >= U) throw Error(ErrorCode::InvalidArgument, "excision half-width out of range");
    const auto r = integrate(g, std::log(d), std::log(U), 1e-15, kPvRel);
    xs.push_back(d);
    ys.push_back(r.value);
  }
  return extrapolate_to_zero(xs, ys, 1.0);
}

Extrapolation pv_abel(const std::function<double(double)>& f, double omega, double reach,
                      std::span<const double> eps) {
  const double U = omega + reach;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double e : eps) {
    if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "damping parameter must be positive");
    auto g = [&](double v) { return (f(omega - v) - f(omega + v)) * v / (v * v + e * e); };
    double sum = 0.0;
    double a = 0.0;
    for (double b : {e, 10.0 * e, 100.0 * e, U}) {
      if (b <= a) continue;
      sum += integrate(g, a, std::min(b, U), 1e-15, kPvRel).value;
      a = b;
      if (a >= U) break;
    }
    xs.push_back(e);
    ys.push_back(sum);
  }
  return extrapolate_to_zero(xs, ys, 1.0);
}

PairingResult fourier_pairing(const TestFunction& phi, Signature s, const QuadSpec& q) {
  q.validate();
  if (!s.is_o41()) throw Error(ErrorCode::InvalidArgument, "the Fourier oracle covers O(4,1) only");
  if (!phi.all_gaussian()) {
    throw Error(ErrorCode::InvalidArgument, "the Fourier oracle needs Gaussian test functions");
  }
  const std::size_t n_fine = std::max<std::size_t>(kOrder, q.grid);
  const std::size_t n_coarse = std::max<std::size_t>(kOrder, (3 * q.grid / 4 / kOrder) * kOrder);
  PairingResult out;
  double coarse = 0.0;
  double gap = 0.0;
  double pv_scale = 0.0;
  for (const auto& b : phi.bumps()) {
    const BumpSum fs = bump_pairing(b, n_fine, q, true);
    const BumpSum cs = bump_pairing(b, n_coarse, q, false);
    out.value += fs.value;
    out.abs_err += fs.pv_err;
    coarse += cs.value;
    gap = std::max(gap, fs.abel_gap);
    pv_scale = std::max(pv_scale, fs.pv_scale);
  }
  out.abs_err += std::abs(out.value - coarse) + phi.truncation_bound() * std::abs(out.value);
  out.evaluations = phi.bumps().size() * n_fine * n_fine;
  const double rel_gap = pv_scale > 0.0 ? gap / pv_scale : 0.0;
  if (rel_gap > q.tol) {
    throw Error(ErrorCode::NoConvergence,
                "excision and damping principal values disagree by " + std::to_string(rel_gap));
  }
  std::ostringstream os;
  os.precision(3);
  os << "grid " << n_fine << "x" << n_fine << ", excision vs damping gap " << rel_gap;
  out.notes = os.str();
  return out;
}

double k0_principal_residues(double k, double k5, double t) {
  const double om = std::hypot(k, k5);
  if (om == 0.0) throw Error(ErrorCode::Degenerate, "k = k5 = 0 puts both poles at the origin");
  return kPi * std::sin(om * std::abs(t)) / om;
}

PairingResult k0_principal_quadrature(double k, double k5, double t, const QuadSpec& q) {
  q.validate();
  const double om = std::hypot(k, k5);
  if (om == 0.0) throw Error(ErrorCode::Degenerate, "k = k5 = 0 puts both poles at the origin");
  EvalBudget budget(q.max_evals);
  // [cos(kt) - cos(om t)]/(om^2 - k^2) written without cancellation.
  auto near = [&](double x) {
    const double y = 0.5 * (om - x) * t;
    const double sinc = std::abs(y) < 1e-8 ? 1.0 : std::sin(y) / y;
    return t * std::sin(0.5 * (x + om) * t) * sinc / (x + om);
  };
  const auto a1 = integrate(near, 0.0, om, 1e-15, 1e-13, &budget);
  const auto a2 = integrate(near, om, 2.0 * om, 1e-15, 1e-13, &budget);
  double value = a1.value + a2.value + std::cos(om * t) * std::log(3.0) / (2.0 * om);
  double err = a1.abs_err + a2.abs_err;
  const double at = std::abs(t);
  if (at == 0.0) {
    value += -std::log(3.0) / (2.0 * om);
  } else {
    auto g = [&](double x) { return 1.0 / (om * om - x * x); };
    const double half = kPi / at;
    const std::size_t panels = 4000;
    const GaussRule& rule = gauss_legendre(kOrder);
    // Resolve the 1/k^2 decay near 2 omega adaptively before switching to panels.
    double a = 2.0 * om + 40.0 * std::max(half, om);
    const auto head = integrate([&](double x) { return std::cos(x * t) * g(x); }, 2.0 * om, a, 1e-15,
                                1e-13, &budget);
    err += head.abs_err;
    double tail = head.value;
    for (std::size_t p = 0; p < panels; ++p) {
      const double c = a + 0.5 * half;
      double s = 0.0;
      for (std::size_t i = 0; i < kOrder; ++i) {
        const double x = c + 0.5 * half * rule.nodes[i];
        s += rule.weights[i] * std::cos(x * t) * g(x);
      }
      tail += 0.5 * half * s;
      a += half;
    }
    budget.charge(panels * kOrder);
    // Two integrations by parts for the remainder beyond a.
    const double gp = 2.0 * a / ((om * om - a * a) * (om * om - a * a));
    tail += -std::sin(a * t) * g(a) / t - std::cos(a * t) * gp / (t * t);
    err += 6.0 / (std::pow(a, 4) * at * at * at);
    value += tail;
  }
  PairingResult out;
  out.value = 2.0 * value;
  out.abs_err = 2.0 * err;
  out.evaluations = budget.used();
  out.notes = "pole subtraction on [0, 2 omega], half-period panels beyond";
  return out;
}

}  // namespace offshell
