#pragma once

#include <functional>
#include <span>

#include "offshell/core.hpp"
#include "offshell/distributions.hpp"
#include "offshell/quadrature.hpp"

namespace offshell {

/// PV int f(k)/(omega - k) dk over the real line, by symmetric excision of
/// |k - omega| < delta for each delta in `deltas` followed by extrapolation
/// to delta = 0. `reach` bounds the support of f: |k| <= reach.
Extrapolation pv_excision(const std::function<double(double)>& f, double omega, double reach,
                          std::span<const double> deltas);

/// Same principal value from the damped kernel (omega - k)/((omega - k)^2 + eps^2),
/// extrapolated to eps = 0.
Extrapolation pv_abel(const std::function<double(double)>& f, double omega, double reach,
                      std::span<const double> eps);

/// <g, phi> for g = (2 pi)^-5 int d^5k exp(i k.x)/(k_a k^a) with the
/// principal-part prescription in k0. Uses the closed-form Fourier transform
/// of Gaussian bumps and reduces the k-space integral to (omega, psi, k0)
/// with k = omega sin(psi), k5 = omega cos(psi). Only O(4,1) and Gaussian
/// test functions are supported (InvalidArgument otherwise).
///
/// abs_err is the difference from a 3/4-resolution grid plus the principal
/// value extrapolation errors. The excision and damping realizations are
/// compared on a subset of omega nodes; NoConvergence if they disagree beyond
/// q.tol relative to the pairing scale.
PairingResult fourier_pairing(const TestFunction& phi, Signature s, const QuadSpec& q);

/// PV int dk0 exp(-i k0 t)/(k^2 + k5^2 - k0^2) = pi sin(omega |t|)/omega,
/// omega = sqrt(k^2 + k5^2). Even in t. Throws Degenerate for k = k5 = 0.
double k0_principal_residues(double k, double k5, double t);

/// The same integral by direct quadrature: pole subtraction on [0, 2 omega]
/// and half-period panels beyond.
PairingResult k0_principal_quadrature(double k, double k5, double t, const QuadSpec& q);

}  // namespace offshell
