#include "offshell/kgroute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "offshell/bessel.hpp"
#include "offshell/error.hpp"
#include "offshell/parallel.hpp"
#include "offshell/quadrature.hpp"

namespace offshell {

namespace {

constexpr std::size_t kOrder = 16;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

std::size_t panels_for(double n_nodes) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n_nodes / kOrder)));
}

// Composite Gauss-Legendre on [a, b]. With `smooth_ends` each panel set is
// pulled through x = a + L (3u^2 - 2u^3), which flattens square-root
// behaviour at both ends.
void append_nodes(Nodes& out, double a, double b, std::size_t panels, bool smooth_ends) {
  if (!(b > a)) return;
  const GaussRule& rule = gauss_legendre(kOrder);
  const double L = b - a;
  const double hp = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = (static_cast<double>(p) + 0.5) * hp;
    for (std::size_t i = 0; i < kOrder; ++i) {
      const double u = c + 0.5 * hp * rule.nodes[i];
      const double wu = 0.5 * hp * rule.weights[i];
      if (smooth_ends) {
        out.x.push_back(a + L * u * u * (3.0 - 2.0 * u));
        out.w.push_back(wu * L * 6.0 * u * (1.0 - u));
      } else {
        out.x.push_back(a + L * u);
        out.w.push_back(wu * L);
      }
    }
  }
}

double min_scale(const TestFunction& phi) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& b : phi.bumps()) {
    s = std::min(s, b.kind == TestKind::Gaussian ? b.width : b.cutoff / 3.0);
  }
  return s;
}

struct MGrid {
  Nodes t, tau, m;
  double w_min = 0.0;
  double m_max = 0.0;
};

MGrid build_grid(const TestFunction& phi, double res) {
  MGrid g;
  const SupportBox box = phi.support();
  g.w_min = min_scale(phi);
  g.m_max = 12.0 / g.w_min;
  std::vector<double> cuts{box.t_lo};
  for (double p : {-box.r_hi, -box.r_lo, 0.0, box.r_lo, box.r_hi}) {
    if (p > cuts.back() && p < box.t_hi) cuts.push_back(p);
  }
  cuts.push_back(box.t_hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    append_nodes(g.t, cuts[i], cuts[i + 1], panels_for(res * kOrder * (cuts[i + 1] - cuts[i]) / g.w_min),
                 true);
  }
  const double tspan = box.tau_hi - box.tau_lo;
  append_nodes(g.tau, box.tau_lo, box.tau_hi,
               panels_for(res * std::max(5.0 * tspan / g.w_min, 1.3 * g.m_max * tspan)), false);
  const double tmax = std::max(std::abs(box.t_lo), std::abs(box.t_hi));
  const double umax = std::max(std::abs(box.tau_lo), std::abs(box.tau_hi));
  append_nodes(g.m, 0.0, g.m_max, panels_for(res * std::max(64.0, 1.3 * g.m_max * (tmax + umax))),
               false);
  return g;
}

// h(m) on the m nodes: the 4D pairing of G_KG(., m) with the tau-cosine
// transform of phi.
std::vector<double> h_of_m(const TestFunction& phi, KGForm form, const MGrid& g, double res) {
  const SupportBox box = phi.support();
  const std::size_t nm = g.m.x.size();
  const std::size_t nu = g.tau.x.size();
  std::vector<double> costab(nm * nu);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t k = 0; k < nu; ++k) costab[i * nu + k] = std::cos(g.m.x[i] * g.tau.x[k]) * g.tau.w[k];
  }
  // Cosine transform in tau of a sampled row, for every m.
  auto transform = [&](const std::vector<double>& row, std::vector<double>& out) {
    for (std::size_t i = 0; i < nm; ++i) {
      const double* c = &costab[i * nu];
      double s = 0.0;
      for (std::size_t k = 0; k < nu; ++k) s += c[k] * row[k];
      out[i] = s;
    }
  };

  auto per_t = [&](std::size_t it) {
    std::vector<double> acc(nm, 0.0);
    const double t = g.t.x[it];
    const double wt = g.t.w[it];
    const double at = std::abs(t);
    if (at == 0.0) return acc;
    std::vector<double> row(nu);
    std::vector<double> tr(nm);
    if (form == KGForm::Printed && at >= box.r_lo && at <= box.r_hi) {
      // -(1/4 pi) <delta(t^2 - r^2), phi>_4 = -(1/2) int |t| phi(t, |t|) dt
      for (std::size_t k = 0; k < nu; ++k) row[k] = phi(t, at, g.tau.x[k]);
      transform(row, tr);
      for (std::size_t i = 0; i < nm; ++i) acc[i] += -0.5 * wt * at * tr[i];
    }
    if (box.r_lo >= at) return acc;
    const double th_lo = std::asin(std::min(1.0, box.r_lo / at));
    const double th_hi = std::asin(std::min(1.0, box.r_hi / at));
    Nodes th;
    append_nodes(th, th_lo, th_hi, panels_for(res * std::max(32.0, 8.0 * at / g.w_min)), false);
    for (std::size_t j = 0; j < th.x.size(); ++j) {
      const double r = at * std::sin(th.x[j]);
      const double s = at * std::cos(th.x[j]);
      const double w = wt * th.w[j];
      for (std::size_t k = 0; k < nu; ++k) {
        row[k] = form == KGForm::Rewritten ? phi.radial_flux(t, r, g.tau.x[k]) : phi(t, r, g.tau.x[k]);
      }
      if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) continue;
      transform(row, tr);
      for (std::size_t i = 0; i < nm; ++i) {
        const double m = g.m.x[i];
        // REWRITTEN: (1/2 pi)(-2 pi) int J0(m s) d/dr(r phi) dr, dr = s dtheta.
        // PRINTED:   int 4 pi r^2 m J1(m s)/(4 pi s) phi dr.
        const double k = form == KGForm::Rewritten ? -s * bessel_j0(m * s) : r * r * m * bessel_j1(m * s);
        acc[i] += w * k * tr[i];
      }
    }
    return acc;
  };
  const auto rows = parallel_map<std::vector<double>>(g.t.x.size(), per_t);
  std::vector<double> h(nm, 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < nm; ++i) h[i] += r[i];
  }
  return h;
}

struct MRun {
  double value;
  double extrap_err;
};

MRun damped_limit(const MGrid& g, const std::vector<double>& h, const std::vector<double>& eps) {
  std::vector<double> ys;
  for (double e : eps) {
    double s = 0.0;
    // eps is measured in units of the natural mass scale 1/w_min.
    for (std::size_t i = 0; i < h.size(); ++i) s += g.m.w[i] * std::exp(-e * g.w_min * g.m.x[i]) * h[i];
    ys.push_back(s / kPi);
  }
  const auto ex = extrapolate_to_zero(eps, ys, 1.0);
  return {ex.value, ex.error};
}

}  // namespace

std::string_view to_string(KGForm f) noexcept {
  return f == KGForm::Printed ? "PRINTED" : "REWRITTEN";
}

double eval_kg(double x2, double m, KGForm form) {
  (void)form;
  if (!std::isfinite(x2) || !std::isfinite(m) || m < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "eval_kg needs finite x2 and m >= 0");
  }
  if (x2 == 0.0) throw Error(ErrorCode::OnSingularSupport, "eval_kg: x^2 = 0 is the light cone");
  if (x2 > 0.0) return 0.0;
  const double s = std::sqrt(-x2);
  // PRINTED regular part and d/d(r^2) of J0(m s)/(2 pi) coincide off the cone.
  return m * bessel_j1(m * s) / (4.0 * kPi * s);
}

PairingResult pair_m_integration(const TestFunction& phi, KGForm form, const QuadSpec& q) {
  q.validate();
  const MGrid fine = build_grid(phi, 1.0);
  const MGrid coarse = build_grid(phi, 0.75);
  const auto hf = h_of_m(phi, form, fine, 1.0);
  const auto hc = h_of_m(phi, form, coarse, 0.75);
  const MRun rf = damped_limit(fine, hf, q.eps_seq);
  const MRun rc = damped_limit(coarse, hc, q.eps_seq);
  PairingResult out;
  out.value = rf.value;
  out.abs_err = rf.extrap_err + std::abs(rf.value - rc.value) + phi.truncation_bound() * std::abs(rf.value);
  out.evaluations = hf.size() * fine.t.x.size() * fine.tau.x.size();
  double scale = 0.0;
  for (const auto& b : phi.bumps()) scale += 1e-9 * std::abs(b.weight);
  if (rf.extrap_err > q.tol * std::max(std::abs(rf.value), scale)) {
    throw Error(ErrorCode::NoConvergence, "damping extrapolation did not settle: error "  +
                                              std::to_string(rf.extrap_err) + " value " + std::to_string(rf.value));
  }
  std::ostringstream os;
  os.precision(6);
  os << "M_max=" << fine.m_max << " nodes(t,tau,m)=" << fine.t.x.size() << "," << fine.tau.x.size()
     << "," << fine.m.x.size();
  out.notes = os.str();
  return out;
}

PairingResult bessel_identity_integral(double krho, const QuadSpec& q) {
  q.validate();
  if (!(krho > 0.0) || !std::isfinite(krho)) {
    throw Error(ErrorCode::InvalidArgument, "bessel_identity_integral needs krho > 0");
  }
  const double x = krho;
  const GaussRule& rule = gauss_legendre(kOrder);
  auto damped = [&](double eps) {
    // [1, 2] with u = 1 + s^2 removes the inverse square root.
    auto head = [&](double s) {
      const double u = 1.0 + s * s;
      return 2.0 * std::exp(-eps * u) * std::sin(x * u) / std::sqrt(2.0 + s * s);
    };
    double sum = composite_gauss(head, 0.0, 1.0, 8, kOrder);
    // Half-period panels on [2, inf) until the damping factor is negligible.
    const double half = kPi / x;
    const double u_end = 2.0 + 40.0 / eps;
    double a = 2.0;
    while (a < u_end) {
      const double b = a + half;
      const double c = 0.5 * (a + b);
      double s = 0.0;
      for (std::size_t i = 0; i < kOrder; ++i) {
        const double u = c + 0.5 * half * rule.nodes[i];
        s += rule.weights[i] * std::exp(-eps * u) * std::sin(x * u) / std::sqrt(u * u - 1.0);
      }
      sum += 0.5 * half * s;
      a = b;
    }
    return sum;
  };
  const double e0 = std::min(0.1, 0.2 * x);
  std::vector<double> eps;
  std::vector<double> vals;
  for (int k = 0; k < 8; ++k) {
    eps.push_back(e0 * std::ldexp(1.0, -k));
    vals.push_back(damped(eps.back()));
  }
  const auto ex = extrapolate_to_zero(eps, vals, 1.0);
  PairingResult out;
  out.value = ex.value;
  out.abs_err = ex.error;
  out.evaluations = 0;
  out.notes = "eps = " + std::to_string(e0) + " * 2^-k, k = 0..7";
  if (!(ex.error < std::max(q.tol, 1e-3))) {
    throw Error(ErrorCode::NoConvergence, "Abel extrapolation error " + std::to_string(ex.error));
  }
  return out;
}

}  // namespace offshell
