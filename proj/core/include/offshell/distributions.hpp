#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "offshell/core.hpp"

namespace offshell {

enum class TestKind { Gaussian, PolyBump };

/// One smooth bump in (t, r, tau). The profile depends on
/// d^2 = (t - t_c)^2 + (r - r_c)^2 + (tau - tau_c)^2:
///   Gaussian: exp(-d^2 / w^2) for d < R, exactly 0 beyond;
///   PolyBump: (1 - d^2 / R^2)^4 for d < R.
/// With r_c = 0 this is a ball in 5D. With r_c >= R it is a spherical shell in
/// the spatial 3-vector, still smooth because it vanishes near r = 0.
struct Bump {
  double t_c = 0.0;
  double r_c = 0.0;
  double tau_c = 0.0;
  double width = 1.0;
  double cutoff = 8.0;
  TestKind kind = TestKind::Gaussian;
  double weight = 1.0;

  double value(double t, double r, double tau) const noexcept;
  double d_dr(double t, double r, double tau) const noexcept;
};

struct SupportBox {
  double t_lo, t_hi, r_lo, r_hi, tau_lo, tau_hi;
};

/// A finite weighted sum of bumps; pairings are linear in it.
class TestFunction {
 public:
  /// cutoff <= 0 selects the default R = 8w.
  static TestFunction gaussian(const Event5& center, double width, double cutoff = 0.0);
  /// cutoff <= 0 selects R = 3w.
  static TestFunction poly_bump(const Event5& center, double width, double cutoff = 0.0);

  double operator()(double t, double r, double tau) const noexcept;
  double d_dr(double t, double r, double tau) const noexcept;
  /// d/dr (r phi), the combination left on the test function after
  /// integrating d/d(r^2) by parts against the measure 4 pi r^2 dr.
  double radial_flux(double t, double r, double tau) const noexcept;

  SupportBox support() const noexcept;
  std::span<const Bump> bumps() const noexcept { return bumps_; }
  /// Bound on the mass dropped by truncating Gaussians at their cutoff.
  double truncation_bound() const noexcept;
  bool all_gaussian() const noexcept;

  /// (t, tau) -> (-t, -tau) applied to every bump centre.
  TestFunction reflected_t_tau() const;
  TestFunction reflected_tau() const;

  TestFunction& operator+=(const TestFunction& other);
  TestFunction& operator*=(double s);
  friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }
  friend TestFunction operator*(double s, TestFunction a) { return a *= s; }

  std::string describe() const;

 private:
  std::vector<Bump> bumps_;
};

struct PairingResult {
  double value = 0.0;
  double abs_err = 0.0;
  std::size_t evaluations = 0;
  std::string notes;
};

using PointFunction = std::function<double(const Event5&)>;

/// Integral of f * phi against 4 pi r^2 dr dt dtau. The r-axis is split at
/// the 5D cone r = sqrt(t^2 - tau^2) and at the 4D cone r = |t|, with
/// square-root endpoint substitutions so Q^(-1/2) boundary behaviour is
/// integrated accurately. Throws NonIntegrable on non-finite samples and
/// BudgetExceeded past q.max_evals.
PairingResult pair_smooth(const PointFunction& f, const TestFunction& phi, const QuadSpec& q);

/// <delta(t^2 - r^2) delta(tau), phi> = 2 pi int_0^inf r [phi(r,r,0) + phi(-r,r,0)] dr.
PairingResult pair_lightcone_delta(const TestFunction& phi);

/// int dt dtau int_0^inf dr (t^2 - tau^2 + a - r^2)_+^(-1/2) h(t, r, tau).
///
/// The r-integral is done in the angle r = P sin(theta), P^2 = t^2 - tau^2 + a,
/// which removes the inverse square root exactly. `box` bounds the support of h.
PairingResult pair_cone_kernel(double a, const std::function<double(double, double, double)>& h,
                               const SupportBox& box, const QuadSpec& q);

/// Finite-a route to the canonical Green function: for each a in a_seq the
/// pairing P(a) = <theta(Q+a)/sqrt(Q+a), phi> is differentiated by central
/// differences (step a/2), the derivatives are extrapolated to a -> 0 by
/// Richardson, and the result is scaled by -1/(2 pi^2), i.e. the d/d(r^2) form.
/// Throws NoConvergence if the extrapolation error exceeds q.tol relative to
/// the pairing scale.
PairingResult pair_regularized_limit(const TestFunction& phi, std::span<const double> a_seq,
                                     const QuadSpec& q);

}  // namespace offshell
