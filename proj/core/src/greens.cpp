#include "offshell/greens.hpp"

#include <array>
#include <cmath>

#include "offshell/error.hpp"
#include "offshell/quadrature.hpp"

namespace offshell {

namespace {

constexpr double kC = 1.0 / (8.0 * kPi * kPi * kPi);  // 1/(2 pi)^3

void require_off_cone(const Event5& e, const char* what) {
  const Region5 reg = classify(e);
  if (is_cone(reg)) {
    throw Error(ErrorCode::OnSingularSupport,
                std::string(what) + ": point (t=" + std::to_string(e.t()) + ", r=" +
                    std::to_string(e.r()) + ", tau=" + std::to_string(e.tau()) + ") lies on " +
                    std::string(to_string(reg)));
  }
}

// Both closed forms with a = |tau|; a = 0 is allowed here.
G1G2 g1_g2_pieces(const Event5& e) {
  const double t = e.t();
  const double r = e.r();
  const double a = std::abs(e.tau());
  const double Q = e.q();
  if (Q > 0.0) {
    const double b = std::sqrt(Q);
    const double A = std::atan2(a, b);
    const double ab = a * a + b * b;
    // (1/r) d/dr = -(1/b) d/db at fixed t, tau.
    const double g1 = 2.0 * kC / b * (a / (ab * b) + A / (b * b));
    const double g2 = kC / b * ((2.0 * kPi - 2.0 * A) / (b * b) - 2.0 * a / (ab * b));
    return {g1, g2};
  }
  const double s2 = a * a + r * r - t * t;
  const double s = std::sqrt(s2);
  const double L = std::log(std::abs((a + s) / (s - a)));
  const double Lp = -2.0 * a / (s2 - a * a);
  const double X = kC / s * (Lp / s - L / s2);
  return {-X, X};
}

// sinh(x) - x without cancellation for small x.
double sinh_minus_x(double x) {
  if (std::abs(x) > 0.5) return std::sinh(x) - x;
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 4; k < 40; k += 2) {
    term *= x2 / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

std::string_view to_string(GFVariant v) noexcept {
  switch (v) {
    case GFVariant::Canonical: return "CANONICAL";
    case GFVariant::LhPrincipal: return "LH_PRINCIPAL";
    case GFVariant::LhPublished: return "LH_PUBLISHED";
    case GFVariant::OhPublished: return "OH_PUBLISHED";
    case GFVariant::K5Route: return "K5_ROUTE";
    case GFVariant::Retarded: return "RETARDED";
  }
  return "?";
}

GFVariant variant_from_string(std::string_view s) {
  for (GFVariant v : {GFVariant::Canonical, GFVariant::LhPrincipal, GFVariant::LhPublished,
                      GFVariant::OhPublished, GFVariant::K5Route, GFVariant::Retarded}) {
    if (s == to_string(v)) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Green-function variant '" + std::string(s) + "'");
}

bool known_erroneous(GFVariant v) noexcept { return v == GFVariant::OhPublished; }

double eval_canonical(const Event5& e) {
  require_off_cone(e, "eval_canonical");
  const double Q = e.q();
  return Q > 0.0 ? std::pow(Q, -1.5) / (4.0 * kPi * kPi) : 0.0;
}

double eval_lh_principal(const Event5& e, Signature s) {
  require_off_cone(e, "eval_lh_principal");
  const double x2 = e.interval4();
  const double tau2 = e.tau() * e.tau();
  if (s.is_o41()) {
    const double Q = -x2 - tau2;
    return Q > 0.0 ? -std::pow(Q, -1.5) / (4.0 * kPi * kPi) : 0.0;
  }
  const double u = x2 - tau2;
  if (std::abs(u) <= kDefaultConeEps * std::max(1.0, x2 * x2 + tau2)) {
    throw Error(ErrorCode::OnSingularSupport, "eval_lh_principal: x^2 = tau^2");
  }
  // d/d(x^2) u^(-1/2) = -u^(-3/2)/2
  return u > 0.0 ? std::pow(u, -1.5) / (4.0 * kPi * kPi) : 0.0;
}

double eval_lh_published_regular(const Event5& e) {
  require_off_cone(e, "eval_lh_published");
  const double Q = e.q();
  return Q > 0.0 ? -std::pow(Q, -1.5) / (8.0 * kPi * kPi) : 0.0;
}

double eval_oh_published(const Event5& e) {
  if (e.tau() < 0.0) return 0.0;
  require_off_cone(e, "eval_oh_published");
  const double tau = e.tau();
  const double x2 = e.interval4();
  const double w = x2 + tau * tau;
  const double tail = tau / (x2 * w);
  double branch;
  if (-w > 0.0) {
    const double sq = std::sqrt(-w);
    branch = std::atan(sq / tau) / (sq * sq * sq) - tail;
  } else {
    const double sq = std::sqrt(w);
    branch = 0.5 / (w * sq) * std::log(std::abs((tau - sq) / (tau + sq))) - tail;
  }
  return 2.0 * kC * branch;
}

G1G2 eval_g1_g2(const Event5& e) {
  require_off_cone(e, "eval_g1_g2");
  if (e.tau() == 0.0) {
    throw Error(ErrorCode::UndefinedAtTauZero, "eval_g1_g2: the closed forms degenerate at tau = 0");
  }
  return g1_g2_pieces(e);
}

double eval_k5_route(const Event5& e) {
  require_off_cone(e, "eval_k5_route");
  const G1G2 p = g1_g2_pieces(e);
  return p.g1 + p.g2;
}

double eval_retarded(const Event5& e) {
  if (e.tau() < 0.0) return 0.0;
  return 2.0 * eval_canonical(e);
}

double eval_variant(GFVariant v, const Event5& e, Signature s) {
  switch (v) {
    case GFVariant::Canonical: return eval_canonical(e);
    case GFVariant::LhPrincipal: return eval_lh_principal(e, s);
    case GFVariant::LhPublished: return eval_lh_published_regular(e);
    case GFVariant::OhPublished: return eval_oh_published(e);
    case GFVariant::K5Route: return eval_k5_route(e);
    case GFVariant::Retarded: return eval_retarded(e);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

PairingResult pair_dr2_cone(const TestFunction& phi, const QuadSpec& q) {
  auto h = [&](double t, double r, double tau) { return phi.radial_flux(t, r, tau); };
  PairingResult k = pair_cone_kernel(0.0, h, phi.support(), q);
  PairingResult out;
  out.value = -2.0 * kPi * k.value;
  out.abs_err = 2.0 * kPi * k.abs_err + phi.truncation_bound() * std::abs(out.value);
  out.evaluations = k.evaluations;
  out.notes = "d/d(r^2) moved onto the test function";
  return out;
}

PairingResult pair_canonical(const TestFunction& phi, const QuadSpec& q) {
  PairingResult p = pair_dr2_cone(phi, q);
  const double c = 1.0 / (2.0 * kPi * kPi);
  p.value *= c;
  p.abs_err *= c;
  return p;
}

PairingResult pair_lh_published(const TestFunction& phi, const QuadSpec& q) {
  const PairingResult d = pair_lightcone_delta(phi);
  const PairingResult s = pair_dr2_cone(phi, q);
  const double cd = -1.0 / (4.0 * kPi);
  const double cs = -1.0 / (4.0 * kPi * kPi);
  PairingResult out;
  out.value = cd * d.value + cs * s.value;
  out.abs_err = std::abs(cd) * d.abs_err + std::abs(cs) * s.abs_err;
  out.evaluations = d.evaluations + s.evaluations;
  out.notes = "light-cone delta term plus -1/(4 pi^2) d/d(r^2) term";
  return out;
}

double i_closed(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "I(a,b) needs a > 0");
  const double d = a * a - b * b;
  if (d == 0.0) throw Error(ErrorCode::Degenerate, "I(a,b) is degenerate at b^2 = a^2");
  if (d > 0.0) {
    const double s = std::sqrt(d);
    return (0.5 * kPi - std::atan(b / s)) / s;
  }
  const double s = std::sqrt(-d);
  return std::log(std::abs((b + s) / (b - s))) / (2.0 * s);
}

double i_closed_as_printed(double a, double b) {
  const double d = a * a - b * b;
  if (d >= 0.0) return i_closed(a, b);
  const double s = std::sqrt(-d);
  return -std::log(std::abs((b + s) / (b - s))) / (2.0 * a * s);
}

PairingResult i_quadrature(double a, double b, const QuadSpec& q) {
  q.validate();
  if (!(a > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "I(a,b) needs a > 0");
  if (a * a == b * b) throw Error(ErrorCode::Degenerate, "I(a,b) is degenerate at b^2 = a^2");
  EvalBudget budget(q.max_evals);
  constexpr double kTop = 45.0;
  constexpr double kTol = 1e-14;
  auto f = [&](double al) { return 1.0 / (a * std::cosh(al) + b); };
  PairingResult out;
  // Beyond kTop the integrand is 2 e^(-alpha)/a to double precision.
  const double tail = 2.0 * std::exp(-kTop) / a;
  if (b > -a) {
    auto r = integrate(f, 0.0, kTop, kTol / std::abs(a), kTol, &budget);
    out.value = r.value + tail;
    out.abs_err = r.abs_err + tail * 1e-3;
  } else {
    const double a0 = std::acosh(-b / a);
        const double d = std::min(a0, 1.0);
    const double sh0 = std::sinh(a0);
    const double ch0 = std::cosh(a0);
    // f - c/(alpha - alpha0) rearranged so both terms of order u^2 cancel analytically.
    auto g = [&](double al) {
      const double u = 0.5 * (al - a0);
      const double su = std::sinh(u);
      const double num = -sh0 * sinh_minus_x(2.0 * u) - 2.0 * ch0 * su * su;
      return num / (2.0 * a * std::sinh(0.5 * (al + a0)) * su * sh0 * 2.0 * u);
    };
    std::array<QuadResult, 4> parts{
        a0 - d > 0.0 ? integrate(f, 0.0, a0 - d, kTol, kTol, &budget) : QuadResult{},
        integrate(g, a0 - d, a0, kTol, kTol, &budget),
        integrate(g, a0, a0 + d, kTol, kTol, &budget),
        integrate(f, a0 + d, kTop, kTol, kTol, &budget)};
    for (const auto& p : parts) {
      out.value += p.value;
      out.abs_err += p.abs_err;
    }
    out.value += tail;
    out.notes = "principal part subtracted on a symmetric window";
  }
  out.evaluations = budget.used();
  return out;
}

}  // namespace offshell
