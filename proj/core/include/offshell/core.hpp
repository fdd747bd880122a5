#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace offshell {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// A point of the 5D event space in reduced coordinates (t, r, tau), c = 1.
///
/// Every object in the library is spherically symmetric in the spatial
/// 3-vector, so only r = |x| is kept. A full 3-vector may be supplied; it is
/// reduced on construction and retained for reporting.
class Event5 {
 public:
  Event5() = default;
  /// Throws InvalidArgument for r < 0 or non-finite input.
  Event5(double t, double r, double tau);
  static Event5 from_xyz(double t, const std::array<double, 3>& xyz, double tau);

  double t() const noexcept { return t_; }
  double r() const noexcept { return r_; }
  double tau() const noexcept { return tau_; }
  const std::optional<std::array<double, 3>>& xyz() const noexcept { return xyz_; }

  /// x_mu x^mu = r^2 - t^2 for the metric (-,+,+,+).
  double interval4() const noexcept { return r_ * r_ - t_ * t_; }
  /// Q = t^2 - r^2 - tau^2; positive inside the 5D light cone.
  double q() const noexcept { return t_ * t_ - r_ * r_ - tau_ * tau_; }

 private:
  double t_ = 0.0;
  double r_ = 0.0;
  double tau_ = 0.0;
  std::optional<std::array<double, 3>> xyz_;
};

/// sigma_55: +1 selects O(4,1), -1 selects O(3,2).
class Signature {
 public:
  static Signature o41() noexcept { return Signature(+1); }
  static Signature o32() noexcept { return Signature(-1); }
  /// Throws InvalidArgument unless sigma55 is +1 or -1.
  static Signature from_int(int sigma55);

  int sigma55() const noexcept { return sigma_; }
  bool is_o41() const noexcept { return sigma_ == +1; }
  friend bool operator==(Signature, Signature) = default;

 private:
  explicit Signature(int s) noexcept : sigma_(s) {}
  int sigma_;
};

enum class Region5 {
  Timelike5,   // Q > 0
  Spacelike4,  // r^2 - t^2 > 0
  Mixed,       // t^2 - r^2 > 0 and Q < 0
  Cone4,       // t^2 = r^2
  Cone5,       // Q = 0
};

std::string_view to_string(Region5 region) noexcept;
bool is_cone(Region5 region) noexcept;

inline constexpr double kDefaultConeEps = 1e-9;

/// Cone loci win over open regions: a point within eps_cone * max(1, t^2 +
/// r^2 + tau^2) of Q = 0 is Cone5, otherwise within that band of t^2 = r^2 it
/// is Cone4.
Region5 classify(const Event5& e, double eps_cone = kDefaultConeEps) noexcept;

struct Invariants {
  double x2;    // r^2 - t^2
  double q;     // t^2 - r^2 - tau^2
  double rho2;  // |r^2 - t^2|
  Region5 region;
};

Invariants invariants(const Event5& e, double eps_cone = kDefaultConeEps) noexcept;

/// Parameters shared by every numerical integration in the library.
struct QuadSpec {
  std::vector<double> eps_seq{0.2, 0.1, 0.05, 0.025};
  double k_max = 400.0;
  std::size_t grid = 256;
  double tol = 1e-3;
  std::size_t max_evals = 200'000'000;

  /// Throws InvalidArgument if the invariants do not hold: eps_seq strictly
  /// decreasing with at least 3 positive entries, k_max * min(eps) >= 5,
  /// tol > 0, grid >= 8.
  void validate() const;
};

}  // namespace offshell
