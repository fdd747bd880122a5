#include "offshell/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "offshell/error.hpp"

namespace offshell {

Event5::Event5(double t, double r, double tau) : t_(t), r_(r), tau_(tau) {
  if (!std::isfinite(t) || !std::isfinite(r) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "Event5 coordinates must be finite");
  }
  if (r < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "Event5 radius must be >= 0, got " + std::to_string(r));
  }
}

Event5 Event5::from_xyz(double t, const std::array<double, 3>& xyz, double tau) {
  Event5 e(t, std::hypot(xyz[0], xyz[1], xyz[2]), tau);
  e.xyz_ = xyz;
  return e;
}

Signature Signature::from_int(int sigma55) {
  if (sigma55 != 1 && sigma55 != -1) {
    throw Error(ErrorCode::InvalidArgument, "signature must be +1 or -1");
  }
  return Signature(sigma55);
}

std::string_view to_string(Region5 region) noexcept {
  switch (region) {
    case Region5::Timelike5: return "TIMELIKE5";
    case Region5::Spacelike4: return "SPACELIKE4";
    case Region5::Mixed: return "MIXED";
    case Region5::Cone4: return "CONE4";
    case Region5::Cone5: return "CONE5";
  }
  return "UNKNOWN";
}

bool is_cone(Region5 region) noexcept {
  return region == Region5::Cone4 || region == Region5::Cone5;
}

Region5 classify(const Event5& e, double eps_cone) noexcept {
  const double t2 = e.t() * e.t();
  const double r2 = e.r() * e.r();
  const double tau2 = e.tau() * e.tau();
  const double band = eps_cone * std::max(1.0, t2 + r2 + tau2);
  const double q = t2 - r2 - tau2;
  const double s = t2 - r2;
  if (std::abs(q) <= band) return Region5::Cone5;
  if (std::abs(s) <= band) return Region5::Cone4;
  if (q > 0.0) return Region5::Timelike5;
  if (s < 0.0) return Region5::Spacelike4;
  return Region5::Mixed;
}

Invariants invariants(const Event5& e, double eps_cone) noexcept {
  const double x2 = e.interval4();
  return Invariants{x2, e.q(), std::abs(x2), classify(e, eps_cone)};
}

void QuadSpec::validate() const {
  if (eps_seq.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "QuadSpec.eps_seq needs at least 3 entries");
  }
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    if (!(eps_seq[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "QuadSpec.eps_seq entries must be > 0");
    if (i > 0 && !(eps_seq[i] < eps_seq[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "QuadSpec.eps_seq must be strictly decreasing");
    }
  }
  if (k_max * eps_seq.back() < 5.0) {
    throw Error(ErrorCode::InvalidArgument, "QuadSpec requires k_max * min(eps_seq) >= 5");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "QuadSpec.tol must be > 0");
  if (grid < 8) throw Error(ErrorCode::InvalidArgument, "QuadSpec.grid must be >= 8");
}

}  // namespace offshell
