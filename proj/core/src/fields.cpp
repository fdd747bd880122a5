#include "offshell/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "offshell/error.hpp"
#include "offshell/parallel.hpp"
#include "offshell/quadrature.hpp"

namespace offshell {

namespace {

constexpr std::size_t kOrder = 8;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss panels of width <= pw covering [a, b].
void append_panels(Nodes& out, double a, double b, double pw) {
  if (!(b > a)) return;
  const GaussRule& rule = gauss_legendre(kOrder);
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / pw - 1e-9));
  const double h = (b - a) / static_cast<double>(std::max<std::size_t>(1, n));
  for (std::size_t p = 0; p < std::max<std::size_t>(1, n); ++p) {
    const double c = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < kOrder; ++i) {
      out.x.push_back(c + 0.5 * h * rule.nodes[i]);
      out.w.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

// Panels on [a, b] with an extra edge at 0 when it lies inside.
Nodes panels_split_at_zero(double a, double b, double pw) {
  Nodes n;
  if (a < 0.0 && b > 0.0) {
    append_panels(n, a, 0.0, pw);
    append_panels(n, 0.0, b, pw);
  } else {
    append_panels(n, a, b, pw);
  }
  return n;
}

double gauss_cut(double x, double s, double cut) {
  const double y = x / s;
  return std::abs(y) > cut ? 0.0 : std::exp(-y * y);
}

// Angular integral H(P, r)/r of d/drho [rho M(rho)] for the Gaussian profile,
// tabulated in P and interpolated with four-point Lagrange. H is even in P.
class HTable {
 public:
  HTable(double r, double sigma, double p_max, double dp) : dp_(dp) {
    const double s2 = sigma * sigma;
    auto f = [s2](double x) { return x * std::exp(-x * x / s2); };
    auto fp = [s2](double x) { return (1.0 - 2.0 * x * x / s2) * std::exp(-x * x / s2); };
    auto g = [&](double rho) {
      if (r == 0.0) return 2.0 * fp(rho);
      return (f(r - rho) + f(r + rho)) / r;
    };
    const auto n = static_cast<std::size_t>(std::ceil(p_max / dp)) + 4;
    vals_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double P = static_cast<double>(i) * dp;
      if (i == 0) {
        vals_[i] = 0.5 * kPi * g(0.0);
        continue;
      }
      auto h = [&](double th) { return g(P * std::sin(th)); };
      vals_[i] = integrate(h, 0.0, 0.5 * kPi, 1e-13, 1e-12).value;
    }
  }

  double operator()(double P) const {
    const double x = P / dp_;
    auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    if (i + 2 >= static_cast<std::ptrdiff_t>(vals_.size())) {
      throw Error(ErrorCode::InvalidArgument, "kernel table queried beyond its range");
    }
    const double u = x - static_cast<double>(i);
    auto v = [&](std::ptrdiff_t k) { return vals_[static_cast<std::size_t>(std::abs(k))]; };
    const double f0 = v(i - 1), f1 = v(i), f2 = v(i + 1), f3 = v(i + 2);
    return -f0 * u * (u - 1.0) * (u - 2.0) / 6.0 + f1 * (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0 -
           f2 * (u + 1.0) * u * (u - 2.0) / 2.0 + f3 * (u + 1.0) * u * (u - 1.0) / 6.0;
  }

 private:
  double dp_;
  std::vector<double> vals_;
};

double kernel_weight(const KernelSpec& k, double v) {
  const double c = k.scale / (2.0 * kPi * kPi);
  if (k.kind == KernelKind::Even) return c;
  return v >= 0.0 ? 2.0 * c : 0.0;
}

}  // namespace

void CurrentModel::validate() const {
  for (double s : {sigma_r, sigma_t, sigma_tau, cut}) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::InvalidArgument, "current widths and cut must be positive");
    }
  }
  if (!std::isfinite(amplitude) || !std::isfinite(t0) || !std::isfinite(tau0) || !std::isfinite(u0)) {
    throw Error(ErrorCode::InvalidArgument, "current parameters must be finite");
  }
  if (component != 0 && component != 1 && component != 2 && component != 3 && component != 5) {
    throw Error(ErrorCode::InvalidArgument, "component must be one of 0, 1, 2, 3, 5");
  }
}

double CurrentModel::component_factor() const noexcept {
  if (component == 5) return 1.0;
  if (component == 0) return kind == CurrentKind::StaticGaussian ? 1.0 : u0;
  return 0.0;
}

double CurrentModel::temporal(double t, double tau) const noexcept {
  const double s = gauss_cut(tau - tau0, sigma_tau, cut);
  if (s == 0.0) return 0.0;
  const double tc = kind == CurrentKind::StaticGaussian ? t0 : t0 + u0 * (tau - tau0);
  return component_factor() * s * gauss_cut(t - tc, sigma_t, cut);
}

double CurrentModel::operator()(double t, double r, double tau) const noexcept {
  return amplitude * temporal(t, tau) * std::exp(-r * r / (sigma_r * sigma_r));
}

GridSpec GridSpec::around(const CurrentModel& j, std::size_t n, double h) {
  GridSpec g;
  g.n_t = g.n_r = g.n_tau = n;
  g.h_t = g.h_r = g.h_tau = h;
  g.t_min = j.t0 - 0.5 * h * static_cast<double>(n);
  g.tau_min = j.tau_lo() - 4.0 * h;
  return g;
}

void GridSpec::validate() const {
  if (n_t < 9 || n_r < 9 || n_tau < 9) throw Error(ErrorCode::InvalidArgument, "grid needs >= 9 points per axis");
  if (!(h_t > 0.0) || !(h_r > 0.0) || !(h_tau > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid spacings must be positive");
  }
}

FieldGrid convolve(const CurrentModel& j, const GridSpec& grid, const QuadSpec& q, KernelSpec kernel) {
  j.validate();
  grid.validate();
  q.validate();
  FieldGrid out;
  out.spec = grid;
  out.values.assign(grid.n_t * grid.n_r * grid.n_tau, 0.0);
  const double pre = -kPi * j.amplitude;
  if (j.component_factor() == 0.0 || j.amplitude == 0.0) {
    out.notes = "zero current";
    return out;
  }
  const double density = static_cast<double>(q.grid) / 128.0;
  const double pw_u = j.sigma_t / density;
  const double pw_v = j.sigma_tau / density;
  const double t_max = out.t(grid.n_t - 1);
  const double tau_max = out.tau(grid.n_tau - 1);
  const double c = j.cut;

  // Range of t' over the source, for the kernel table bound.
  double tc_lo = j.t0;
  double tc_hi = j.t0;
  if (j.kind == CurrentKind::UniformWorldline) {
    const double a = j.u0 * (j.tau_lo() - j.tau0);
    const double b = j.u0 * (j.tau_hi() - j.tau0);
    tc_lo += std::min(a, b);
    tc_hi += std::max(a, b);
  }
  const double tp_lo = tc_lo - c * j.sigma_t;
  const double tp_hi = tc_hi + c * j.sigma_t;
  const double p_max = std::max(std::abs(t_max - tp_lo), std::abs(grid.t_min - tp_hi)) + 1e-9;
  const double dp = j.sigma_r * 4.0 / static_cast<double>(q.grid);

  const double v_lo_all = grid.tau_min - j.tau_hi();
  const double v_hi_all = tau_max - j.tau_lo();

  auto u_nodes = [&](double lo, double hi, double v) {
    // u in [lo, hi] with |u| > |v|; the kernel jumps at |u| = |v|.
    Nodes n;
    const double av = std::abs(v);
    if (hi > av) append_panels(n, std::max(lo, av), hi, pw_u);
    if (lo < -av) append_panels(n, lo, std::min(hi, -av), pw_u);
    return n;
  };

  const bool separable = j.kind == CurrentKind::StaticGaussian;
  parallel_for(grid.n_r, [&](std::size_t ir) {
    const HTable H(out.r(ir), j.sigma_r, p_max, dp);
    if (separable) {
      const double v_lo = kernel.kind == KernelKind::Retarded ? std::max(0.0, v_lo_all) : v_lo_all;
      if (!(v_hi_all > v_lo)) return;
      const Nodes vn = panels_split_at_zero(v_lo, v_hi_all, pw_v);
      std::vector<double> B(vn.x.size());
      for (std::size_t it = 0; it < grid.n_t; ++it) {
        const double t = out.t(it);
        for (std::size_t iv = 0; iv < vn.x.size(); ++iv) {
          const double v = vn.x[iv];
          const Nodes un = u_nodes(t - j.t0 - c * j.sigma_t, t - j.t0 + c * j.sigma_t, v);
          double s = 0.0;
          for (std::size_t iu = 0; iu < un.x.size(); ++iu) {
            const double u = un.x[iu];
            s += un.w[iu] * H(std::sqrt(std::max(0.0, u * u - v * v))) * gauss_cut(t - u - j.t0, j.sigma_t, c);
          }
          B[iv] = s * vn.w[iv] * kernel_weight(kernel, v);
        }
        for (std::size_t k = 0; k < grid.n_tau; ++k) {
          const double tau = out.tau(k);
          double s = 0.0;
          for (std::size_t iv = 0; iv < vn.x.size(); ++iv) {
            if (B[iv] == 0.0) continue;
            const double sv = gauss_cut(tau - vn.x[iv] - j.tau0, j.sigma_tau, c);
            if (sv != 0.0) s += sv * B[iv];
          }
          out.at(it, ir, k) = pre * j.component_factor() * s;
        }
      }
      return;
    }
    for (std::size_t k = 0; k < grid.n_tau; ++k) {
      const double tau = out.tau(k);
      double v_lo = tau - j.tau_hi();
      const double v_hi = tau - j.tau_lo();
      if (kernel.kind == KernelKind::Retarded) v_lo = std::max(v_lo, 0.0);
      if (!(v_hi > v_lo)) continue;
      const Nodes vn = panels_split_at_zero(v_lo, v_hi, pw_v);
      for (std::size_t it = 0; it < grid.n_t; ++it) {
        const double t = out.t(it);
        double s = 0.0;
        for (std::size_t iv = 0; iv < vn.x.size(); ++iv) {
          const double v = vn.x[iv];
          const double taup = tau - v;
          const double tc = j.t0 + j.u0 * (taup - j.tau0);
          const Nodes un = u_nodes(t - tc - c * j.sigma_t, t - tc + c * j.sigma_t, v);
          double su = 0.0;
          for (std::size_t iu = 0; iu < un.x.size(); ++iu) {
            const double u = un.x[iu];
            su += un.w[iu] * H(std::sqrt(std::max(0.0, u * u - v * v))) * j.temporal(t - u, taup);
          }
          s += vn.w[iv] * kernel_weight(kernel, v) * su;
        }
        out.at(it, ir, k) = pre * s;
      }
    }
  });
  std::ostringstream os;
  os << (kernel.kind == KernelKind::Retarded ? "retarded" : "even") << " kernel x " << kernel.scale
     << (separable ? ", separable path" : ", general path");
  out.notes = os.str();
  return out;
}

FieldGrid convolve_retarded(const CurrentModel& j, const GridSpec& grid, const QuadSpec& q) {
  return convolve(j, grid, q, KernelSpec{});
}

ResidualResult residual(const FieldGrid& a, const CurrentModel& j) {
  const GridSpec& g = a.spec;
  g.validate();
  if (a.values.size() != g.n_t * g.n_r * g.n_tau) {
    throw Error(ErrorCode::InvalidArgument, "field grid size does not match its spec");
  }
  // r a with the axis mirrored: a is even in r, so r a is odd.
  auto ra = [&](std::size_t it, std::ptrdiff_t ir, std::size_t iu) {
    const auto m = static_cast<std::size_t>(std::abs(ir));
    const double v = a.r(m) * a.at(it, m, iu);
    return ir < 0 ? -v : v;
  };
  auto am = [&](std::size_t it, std::ptrdiff_t ir, std::size_t iu) {
    return a.at(it, static_cast<std::size_t>(std::abs(ir)), iu);
  };
  const double ht2 = g.h_t * g.h_t;
  const double hr2 = g.h_r * g.h_r;
  const double hu2 = g.h_tau * g.h_tau;
  double res2 = 0.0;
  double j2 = 0.0;
  double tr2 = 0.0;
  double res_max = 0.0;
  double j_max = 0.0;
  std::size_t count = 0;
  for (std::size_t it = 2; it + 2 < g.n_t; ++it) {
    for (std::size_t ir = 0; ir + 2 < g.n_r; ++ir) {
      const auto r = static_cast<std::ptrdiff_t>(ir);
      for (std::size_t iu = 2; iu + 2 < g.n_tau; ++iu) {
        const double c = a.at(it, ir, iu);
        const double dtt2 = (a.at(it + 1, ir, iu) - 2.0 * c + a.at(it - 1, ir, iu)) / ht2;
        const double duu2 = (a.at(it, ir, iu + 1) - 2.0 * c + a.at(it, ir, iu - 1)) / hu2;
        const double dtt4 = (-a.at(it + 2, ir, iu) + 16.0 * a.at(it + 1, ir, iu) - 30.0 * c +
                             16.0 * a.at(it - 1, ir, iu) - a.at(it - 2, ir, iu)) / (12.0 * ht2);
        const double duu4 = (-a.at(it, ir, iu + 2) + 16.0 * a.at(it, ir, iu + 1) - 30.0 * c +
                             16.0 * a.at(it, ir, iu - 1) - a.at(it, ir, iu - 2)) / (12.0 * hu2);
        double lap2;
        double lap4;
        if (ir == 0) {
          lap2 = 3.0 * (am(it, 1, iu) - 2.0 * c + am(it, -1, iu)) / hr2;
          lap4 = 3.0 * (-am(it, 2, iu) + 16.0 * am(it, 1, iu) - 30.0 * c + 16.0 * am(it, -1, iu) -
                        am(it, -2, iu)) / (12.0 * hr2);
        } else {
          const double rr = a.r(ir);
          lap2 = (ra(it, r + 1, iu) - 2.0 * ra(it, r, iu) + ra(it, r - 1, iu)) / (hr2 * rr);
          lap4 = (-ra(it, r + 2, iu) + 16.0 * ra(it, r + 1, iu) - 30.0 * ra(it, r, iu) +
                  16.0 * ra(it, r - 1, iu) - ra(it, r - 2, iu)) / (12.0 * hr2 * rr);
        }
        const double box2 = -dtt2 + lap2 + duu2;
        const double box4 = -dtt4 + lap4 + duu4;
        const double jv = j(a.t(it), a.r(ir), a.tau(iu));
        const double d = box2 - jv;
        res2 += d * d;
        j2 += jv * jv;
        tr2 += (box2 - box4) * (box2 - box4);
        res_max = std::max(res_max, std::abs(d));
        j_max = std::max(j_max, std::abs(jv));
        ++count;
      }
    }
  }
  ResidualResult out;
  out.points = count;
  if (j2 == 0.0) {
    out.rel_l2 = std::sqrt(res2);
    out.pointwise_max = res_max;
    out.truncation = std::sqrt(tr2);
    return out;
  }
  out.rel_l2 = std::sqrt(res2 / j2);
  out.pointwise_max = res_max / j_max;
  out.truncation = std::sqrt(tr2 / j2);
  if (out.truncation > 1.0) {
    throw Error(ErrorCode::GridTooCoarse, "stencil truncation estimate " + std::to_string(out.truncation) +
                                              " exceeds the source norm");
  }
  return out;
}

}  // namespace offshell
