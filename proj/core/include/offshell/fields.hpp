#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "offshell/core.hpp"

namespace offshell {

enum class CurrentKind { StaticGaussian, UniformWorldline };

/// Smooth event current, spherically symmetric in space:
///   j(t, r, tau) = A c_alpha exp(-r^2/sr^2) T(t - t_c(tau)) S(tau - tau0)
/// with Gaussian T, S of widths st, stau, both cut to exactly 0 beyond
/// `cut` widths. StaticGaussian has t_c = t0. UniformWorldline has
/// t_c = t0 + u0 (tau - tau0): an event at rest in space whose time advances
/// with u0 = dt/dtau. c_alpha is u^alpha: u0 (StaticGaussian: 1) for alpha = 0,
/// 1 for alpha = 5, and 0 for the spatial components.
struct CurrentModel {
  CurrentKind kind = CurrentKind::StaticGaussian;
  double amplitude = 1.0;
  double t0 = 0.0;
  double tau0 = 0.0;
  double sigma_r = 0.25;
  double sigma_t = 0.25;
  double sigma_tau = 0.25;
  double u0 = 1.0;
  int component = 0;
  double cut = 6.0;

  void validate() const;
  double component_factor() const noexcept;
  double temporal(double t, double tau) const noexcept;  // c_alpha T S without A
  double operator()(double t, double r, double tau) const noexcept;
  double tau_lo() const noexcept { return tau0 - cut * sigma_tau; }
  double tau_hi() const noexcept { return tau0 + cut * sigma_tau; }
};

struct GridSpec {
  double t_min = 0.0;
  double h_t = 1.0;
  std::size_t n_t = 9;
  double h_r = 1.0;
  std::size_t n_r = 9;
  double tau_min = 0.0;
  double h_tau = 1.0;
  std::size_t n_tau = 9;

  /// n points per axis with spacing h: t centred on the source, r from the
  /// axis, tau starting four spacings below the source's cut-off.
  static GridSpec around(const CurrentModel& j, std::size_t n, double h);
  void validate() const;
};

/// Samples of one component on a uniform (t, r, tau) grid; r starts at 0.
struct FieldGrid {
  GridSpec spec;
  std::vector<double> values;  // index (i_t * n_r + i_r) * n_tau + i_tau
  std::string notes;

  double t(std::size_t i) const noexcept { return spec.t_min + static_cast<double>(i) * spec.h_t; }
  double r(std::size_t i) const noexcept { return static_cast<double>(i) * spec.h_r; }
  double tau(std::size_t i) const noexcept { return spec.tau_min + static_cast<double>(i) * spec.h_tau; }
  double& at(std::size_t it, std::size_t ir, std::size_t iu) {
    return values[(it * spec.n_r + ir) * spec.n_tau + iu];
  }
  double at(std::size_t it, std::size_t ir, std::size_t iu) const {
    return values[(it * spec.n_r + ir) * spec.n_tau + iu];
  }
};

enum class KernelKind {
  Retarded,  // 2 theta(tau) times the canonical even kernel
  Even,      // the canonical even kernel
};

struct KernelSpec {
  KernelKind kind = KernelKind::Retarded;
  double scale = 1.0;
};

/// a = (scale * kernel) * j. The spatial integral and the d/d(r^2) of the
/// kernel are done in closed form against the Gaussian profile, which leaves
/// a bounded integrand over (t - t', tau - tau'). Node density follows
/// q.grid / 32 Gauss points per source width. Separable currents take a fast
/// path; others cost O(n^3 x nodes^2) and suit small grids.
FieldGrid convolve(const CurrentModel& j, const GridSpec& grid, const QuadSpec& q, KernelSpec kernel);

/// The tau-retarded kernel, scale 1.
FieldGrid convolve_retarded(const CurrentModel& j, const GridSpec& grid, const QuadSpec& q);

struct ResidualResult {
  double rel_l2 = 0.0;         // |box a - j|_2 / |j|_2 over interior points
  double pointwise_max = 0.0;  // max |box a - j| / max |j|
  double truncation = 0.0;     // |second-order - fourth-order stencil|_2 / |j|_2
  std::size_t points = 0;
};

/// Second-order centred stencil for -d_t^2 + (1/r) d_r^2 (r .) + d_tau^2 with
/// 3 d_r^2 and a mirrored ghost point on the axis. Two-point margins are
/// skipped at every outer face. Throws GridTooCoarse when the stencil
/// truncation estimate exceeds |j|_2.
ResidualResult residual(const FieldGrid& a, const CurrentModel& j);

}  // namespace offshell
