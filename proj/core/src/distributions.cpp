#include "offshell/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "offshell/error.hpp"
#include "offshell/quadrature.hpp"

namespace offshell {

namespace {

double d2_of(const Bump& b, double t, double r, double tau) {
  const double dt = t - b.t_c;
  const double dr = r - b.r_c;
  const double du = tau - b.tau_c;
  return dt * dt + dr * dr + du * du;
}

void check_bump(const Bump& b) {
  if (!(b.width > 0.0) || !std::isfinite(b.width) || !(b.cutoff > 0.0) || !std::isfinite(b.cutoff)) {
    throw Error(ErrorCode::InvalidArgument, "bump width and cutoff must be positive and finite");
  }
  if (b.r_c != 0.0 && b.r_c < b.cutoff) {
    throw Error(ErrorCode::InvalidArgument,
                "bump centred at r_c > 0 must satisfy r_c >= cutoff so it vanishes near r = 0");
  }
}

// Interior breakpoints of [lo, hi], sorted, with the endpoints attached.
std::vector<double> with_breaks(double lo, double hi, std::vector<double> pts) {
  std::vector<double> out{lo};
  std::sort(pts.begin(), pts.end());
  const double guard = 1e-12 * std::max(1.0, hi - lo);
  for (double p : pts) {
    if (p > out.back() + guard && p < hi - guard) out.push_back(p);
  }
  out.push_back(hi);
  return out;
}

template <typename F>
QuadResult integrate_pieces(F&& f, const std::vector<double>& cuts, double abs_tol, double rel_tol,
                            EvalBudget* budget) {
  QuadResult total;
  const double span = cuts.back() - cuts.front();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double frac = span > 0 ? (cuts[i + 1] - cuts[i]) / span : 1.0;
    auto piece = integrate_sqrt_ends(f, cuts[i], cuts[i + 1], SqrtEnds::Both, abs_tol * frac,
                                     rel_tol, budget);
    total.value += piece.value;
    total.abs_err += piece.abs_err;
    total.evals += piece.evals;
  }
  return total;
}

double internal_rel(const QuadSpec& q) { return std::min(1e-9, q.tol * 1e-6); }

}  // namespace

double Bump::value(double t, double r, double tau) const noexcept {
  const double d2 = d2_of(*this, t, r, tau);
  const double R2 = cutoff * cutoff;
  if (d2 >= R2) return 0.0;
  if (kind == TestKind::Gaussian) return weight * std::exp(-d2 / (width * width));
  const double s = 1.0 - d2 / R2;
  return weight * s * s * s * s;
}

double Bump::d_dr(double t, double r, double tau) const noexcept {
  const double d2 = d2_of(*this, t, r, tau);
  const double R2 = cutoff * cutoff;
  if (d2 >= R2) return 0.0;
  if (kind == TestKind::Gaussian) {
    return weight * std::exp(-d2 / (width * width)) * (-2.0 * (r - r_c) / (width * width));
  }
  const double s = 1.0 - d2 / R2;
  return weight * 4.0 * s * s * s * (-2.0 * (r - r_c) / R2);
}

TestFunction TestFunction::gaussian(const Event5& c, double width, double cutoff) {
  Bump b{c.t(), c.r(), c.tau(), width, cutoff > 0 ? cutoff : 8.0 * width, TestKind::Gaussian, 1.0};
  check_bump(b);
  TestFunction f;
  f.bumps_.push_back(b);
  return f;
}

TestFunction TestFunction::poly_bump(const Event5& c, double width, double cutoff) {
  Bump b{c.t(), c.r(), c.tau(), width, cutoff > 0 ? cutoff : 3.0 * width, TestKind::PolyBump, 1.0};
  check_bump(b);
  TestFunction f;
  f.bumps_.push_back(b);
  return f;
}

double TestFunction::operator()(double t, double r, double tau) const noexcept {
  double s = 0.0;
  for (const auto& b : bumps_) s += b.value(t, r, tau);
  return s;
}

double TestFunction::d_dr(double t, double r, double tau) const noexcept {
  double s = 0.0;
  for (const auto& b : bumps_) s += b.d_dr(t, r, tau);
  return s;
}

double TestFunction::radial_flux(double t, double r, double tau) const noexcept {
  double s = 0.0;
  for (const auto& b : bumps_) s += b.value(t, r, tau) + r * b.d_dr(t, r, tau);
  return s;
}

SupportBox TestFunction::support() const noexcept {
  if (bumps_.empty()) return {0, 0, 0, 0, 0, 0};
  constexpr double inf = std::numeric_limits<double>::infinity();
  SupportBox box{inf, -inf, inf, -inf, inf, -inf};
  for (const auto& b : bumps_) {
    box.t_lo = std::min(box.t_lo, b.t_c - b.cutoff);
    box.t_hi = std::max(box.t_hi, b.t_c + b.cutoff);
    box.r_lo = std::min(box.r_lo, std::max(0.0, b.r_c - b.cutoff));
    box.r_hi = std::max(box.r_hi, b.r_c + b.cutoff);
    box.tau_lo = std::min(box.tau_lo, b.tau_c - b.cutoff);
    box.tau_hi = std::max(box.tau_hi, b.tau_c + b.cutoff);
  }
  return box;
}

double TestFunction::truncation_bound() const noexcept {
  double s = 0.0;
  for (const auto& b : bumps_) {
    if (b.kind != TestKind::Gaussian) continue;
    const double x = b.cutoff / b.width;
    s += std::abs(b.weight) * std::exp(-x * x);
  }
  return s;
}

bool TestFunction::all_gaussian() const noexcept {
  return std::all_of(bumps_.begin(), bumps_.end(),
                     [](const Bump& b) { return b.kind == TestKind::Gaussian; });
}

TestFunction TestFunction::reflected_t_tau() const {
  TestFunction f = *this;
  for (auto& b : f.bumps_) {
    b.t_c = -b.t_c;
    b.tau_c = -b.tau_c;
  }
  return f;
}

TestFunction TestFunction::reflected_tau() const {
  TestFunction f = *this;
  for (auto& b : f.bumps_) b.tau_c = -b.tau_c;
  return f;
}

TestFunction& TestFunction::operator+=(const TestFunction& other) {
  bumps_.insert(bumps_.end(), other.bumps_.begin(), other.bumps_.end());
  return *this;
}

TestFunction& TestFunction::operator*=(double s) {
  for (auto& b : bumps_) b.weight *= s;
  return *this;
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < bumps_.size(); ++i) {
    const auto& b = bumps_[i];
    if (i) os << " + ";
    os << b.weight << "*" << (b.kind == TestKind::Gaussian ? "gauss" : "poly") << "(t=" << b.t_c
       << ",r=" << b.r_c << ",tau=" << b.tau_c << ",w=" << b.width << ",R=" << b.cutoff << ")";
  }
  return os.str();
}

PairingResult pair_smooth(const PointFunction& f, const TestFunction& phi, const QuadSpec& q) {
  q.validate();
  const SupportBox box = phi.support();
  EvalBudget budget(q.max_evals);
  const double rel = internal_rel(q);
  double phimax = 0.0;
  for (const auto& b : phi.bumps()) phimax += std::abs(b.weight);
  const double A = phimax * 4.0 * kPi * box.r_hi * box.r_hi * (box.r_hi - box.r_lo);
  const double tol_r = rel * A;
  const double tol_t = tol_r * (box.t_hi - box.t_lo);
  const double tol_tau = tol_t * (box.tau_hi - box.tau_lo);
  double worst_r = 0.0;
  double worst_t = 0.0;

  auto over_r = [&](double t, double tau) {
    std::vector<double> pts{std::abs(t)};
    if (t * t > tau * tau) pts.push_back(std::sqrt(t * t - tau * tau));
    const auto cuts = with_breaks(box.r_lo, box.r_hi, pts);
    auto g = [&](double r) {
      const double p = phi(t, r, tau);
      if (p == 0.0) return 0.0;
      return 4.0 * kPi * r * r * p * f(Event5(t, r, tau));
    };
    auto res = integrate_pieces(g, cuts, tol_r, rel, &budget);
    worst_r = std::max(worst_r, res.abs_err);
    return res.value;
  };
  auto over_t = [&](double tau) {
    const double a = std::abs(tau);
    const auto cuts = with_breaks(box.t_lo, box.t_hi, {-a, a, 0.0});
    auto g = [&](double t) { return over_r(t, tau); };
    auto res = integrate_pieces(g, cuts, tol_t, rel, &budget);
    worst_t = std::max(worst_t, res.abs_err + (box.t_hi - box.t_lo) * worst_r);
    return res.value;
  };
  const auto cuts = with_breaks(box.tau_lo, box.tau_hi, {0.0});
  auto outer = integrate_pieces(over_t, cuts, tol_tau, rel, &budget);

  PairingResult out;
  out.value = outer.value;
  out.abs_err = outer.abs_err + (box.tau_hi - box.tau_lo) * worst_t +
                phi.truncation_bound() * std::abs(outer.value);
  out.evaluations = budget.used();
  out.notes = "nested adaptive Gauss-Kronrod with cone breakpoints";
  return out;
}

PairingResult pair_lightcone_delta(const TestFunction& phi) {
  const SupportBox box = phi.support();
  auto g = [&](double r) { return r * (phi(r, r, 0.0) + phi(-r, r, 0.0)); };
  double mass = 0.0;
  for (const auto& b : phi.bumps()) mass += std::abs(b.weight);
  const double lo = box.r_lo;
  const double hi = box.r_hi;
  std::vector<double> pts;
  for (const auto& b : phi.bumps()) {
    pts.push_back(b.r_c);
    pts.push_back(std::abs(b.t_c));
    pts.push_back(0.5 * (b.r_c + std::abs(b.t_c)));
  }
  const auto cuts = with_breaks(lo, hi, pts);
  QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto piece = integrate(g, cuts[i], cuts[i + 1], 1e-15 * mass * hi * hi, 1e-12);
    total.value += piece.value;
    total.abs_err += piece.abs_err;
    total.evals += piece.evals;
  }
  PairingResult out;
  out.value = 2.0 * kPi * total.value;
  out.abs_err = 2.0 * kPi * total.abs_err + phi.truncation_bound() * std::abs(out.value);
  out.evaluations = total.evals;
  out.notes = "one-dimensional integral along t = |r|, tau = 0";
  return out;
}

PairingResult pair_cone_kernel(double a, const std::function<double(double, double, double)>& h,
                               const SupportBox& box, const QuadSpec& q) {
  q.validate();
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "regulator must be finite");
  EvalBudget budget(q.max_evals);
  const double rel = internal_rel(q);
  const double tol_theta = rel;
  const double tol_t = tol_theta * (box.t_hi - box.t_lo);
  const double tol_tau = tol_t * (box.tau_hi - box.tau_lo);
  double worst_theta = 0.0;
  double worst_t = 0.0;

  auto over_theta = [&](double t, double tau) {
    const double P2 = t * t - tau * tau + a;
    if (P2 <= 0.0) return 0.0;
    const double P = std::sqrt(P2);
    if (box.r_lo >= P) return 0.0;
    const double th_lo = std::asin(std::min(1.0, box.r_lo / P));
    const double th_hi = std::asin(std::min(1.0, box.r_hi / P));
    if (th_hi <= th_lo) return 0.0;
    auto g = [&](double th) { return h(t, P * std::sin(th), tau); };
    auto res = integrate(g, th_lo, th_hi, tol_theta, rel, &budget);
    worst_theta = std::max(worst_theta, res.abs_err);
    return res.value;
  };
  auto over_t = [&](double tau) {
    const double c = tau * tau - a;
    std::vector<double> pts{0.0};
    for (double rr : {0.0, box.r_lo, box.r_hi}) {
      if (c + rr * rr > 0.0) {
        const double s = std::sqrt(c + rr * rr);
        pts.push_back(s);
        pts.push_back(-s);
      }
    }
    const auto cuts = with_breaks(box.t_lo, box.t_hi, pts);
    auto g = [&](double t) { return over_theta(t, tau); };
    auto res = integrate_pieces(g, cuts, tol_t, rel, &budget);
    worst_t = std::max(worst_t, res.abs_err + (box.t_hi - box.t_lo) * worst_theta);
    return res.value;
  };
  std::vector<double> pts{0.0};
  for (double te : {box.t_lo, box.t_hi, 0.0}) {
    for (double rr : {0.0, box.r_lo, box.r_hi}) {
      const double s2 = te * te - rr * rr + a;
      if (s2 > 0.0) {
        pts.push_back(std::sqrt(s2));
        pts.push_back(-std::sqrt(s2));
      }
    }
  }
  const auto cuts = with_breaks(box.tau_lo, box.tau_hi, pts);
  auto outer = integrate_pieces(over_t, cuts, tol_tau, rel, &budget);

  PairingResult out;
  out.value = outer.value;
  out.abs_err = outer.abs_err + (box.tau_hi - box.tau_lo) * worst_t;
  out.evaluations = budget.used();
  out.notes = "angular substitution r = P sin(theta)";
  return out;
}

PairingResult pair_regularized_limit(const TestFunction& phi, std::span<const double> a_seq,
                                     const QuadSpec& q) {
  q.validate();
  if (a_seq.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "regulator sequence needs at least two entries");
  }
  for (std::size_t i = 0; i < a_seq.size(); ++i) {
    if (!(a_seq[i] > 0.0) || (i > 0 && !(a_seq[i] < a_seq[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "regulator sequence must be positive and decreasing");
    }
  }
  const SupportBox box = phi.support();
  auto h = [&](double t, double r, double tau) { return 4.0 * kPi * r * r * phi(t, r, tau); };
  std::vector<double> xs;
  std::vector<double> ds;
  std::size_t evals = 0;
  double quad_err = 0.0;
  for (double a : a_seq) {
    const auto hi = pair_cone_kernel(1.5 * a, h, box, q);
    const auto lo = pair_cone_kernel(0.5 * a, h, box, q);
    xs.push_back(a);
    ds.push_back((hi.value - lo.value) / a);
    quad_err = std::max(quad_err, (hi.abs_err + lo.abs_err) / a);
    evals += hi.evaluations + lo.evaluations;
  }
  const auto ex = extrapolate_to_zero(xs, ds, 1.0);
  const double k = -1.0 / (2.0 * kPi * kPi);
  PairingResult out;
  out.value = k * ex.value;
  out.abs_err = std::abs(k) * (ex.error + quad_err) + phi.truncation_bound() * std::abs(out.value);
  out.evaluations = evals;
  double scale = 0.0;
  for (double d : ds) scale = std::max(scale, std::abs(k * d));
  double floor = 0.0;
  for (const auto& b : phi.bumps()) floor += 1e-9 * std::abs(b.weight);
  if (out.abs_err > q.tol * std::max(scale, floor)) {
    throw Error(ErrorCode::NoConvergence,
                "regulator extrapolation error " + std::to_string(out.abs_err) +
                    " exceeds tolerance relative to scale " + std::to_string(scale));
  }
  out.notes = "central differences in a, Richardson in a";
  return out;
}

}  // namespace offshell
