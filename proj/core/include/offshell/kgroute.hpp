#pragma once

#include <string_view>

#include "offshell/core.hpp"
#include "offshell/distributions.hpp"

namespace offshell {

/// PRINTED: -delta(x^2)/(4 pi) + theta(-x^2) m J1(m s)/(4 pi s), s = sqrt(-x^2).
/// REWRITTEN: (1/2 pi) d/d(r^2) [theta(-x^2) J0(m s)].
enum class KGForm { Printed, Rewritten };

std::string_view to_string(KGForm f) noexcept;

/// Interior value off the 4D cone. Both forms give m J1(m s)/(4 pi s) for
/// x2 < 0 and 0 for x2 > 0. Throws OnSingularSupport for x2 = 0.
double eval_kg(double x2, double m, KGForm form);

/// <g, phi> through g = (1/pi) int_0^inf cos(m tau) G_KG(x, m) dm.
///
/// For each m the 4D pairing of G_KG with the tau-cosine transform of phi is
/// done on fixed tensor grids (t, angle, tau). PRINTED pairs its regular part
/// directly and adds its own light-cone term; REWRITTEN moves d/d(r^2) onto
/// phi. The m-integral carries exp(-eps m) for each eps in q.eps_seq and is
/// extrapolated to eps = 0. abs_err combines the extrapolation error with the
/// difference from a coarser grid.
PairingResult pair_m_integration(const TestFunction& phi, KGForm form, const QuadSpec& q);

/// int_1^inf sin(krho u)/sqrt(u^2 - 1) du, which equals (pi/2) J0(krho) as an
/// Abel limit. Computed with exp(-eps u) damping for a geometric eps sequence
/// and Neville extrapolation to eps = 0.
PairingResult bessel_identity_integral(double krho, const QuadSpec& q);

}  // namespace offshell
