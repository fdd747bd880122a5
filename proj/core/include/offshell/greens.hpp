#pragma once

#include <string>
#include <string_view>

#include "offshell/core.hpp"
#include "offshell/distributions.hpp"

namespace offshell {

enum class GFVariant { Canonical, LhPrincipal, LhPublished, OhPublished, K5Route, Retarded };

std::string_view to_string(GFVariant v) noexcept;
/// Accepts the upper-case tags (CANONICAL, LH_PRINCIPAL, ...). Throws InvalidArgument.
GFVariant variant_from_string(std::string_view s);
/// Only OH_PUBLISHED: a verbatim transcription of a form with a sign error.
bool known_erroneous(GFVariant v) noexcept;

/// (1/2 pi^2) d/d(r^2) [theta(Q)/sqrt(Q)] off the cones: Q^(-3/2)/(4 pi^2) inside, 0 outside.
/// Throws OnSingularSupport on a cone.
double eval_canonical(const Event5& e);

/// Regular part of -(1/2 pi^2) d/d(x^2) [theta(.)/sqrt(.)] with the
/// O(4,1) argument -x^2 - tau^2 or the O(3,2) argument x^2 - tau^2.
double eval_lh_principal(const Event5& e, Signature s);

/// Regular part of -(1/4 pi^2) d/d(r^2) [theta(Q)/sqrt(Q)], i.e. -Q^(-3/2)/(8 pi^2).
double eval_lh_published_regular(const Event5& e);

/// Verbatim transcription of the k5-first closed form with its 2 theta(tau)/(2 pi)^3
/// prefactor. theta(0) is taken as 1. Throws OnSingularSupport on x^2 = 0 or Q = 0.
double eval_oh_published(const Event5& e);

struct G1G2 {
  double g1;
  double g2;
};

/// The two pieces of the k5-first route. Logarithmic form with
/// sqrt(tau^2 + r^2 - t^2) outside the 5D cone, arctangent form with
/// a = |tau|, b = sqrt(Q) inside. Throws UndefinedAtTauZero for tau = 0.
G1G2 eval_g1_g2(const Event5& e);

/// g1 + g2; defined at tau = 0 as the limit of the closed forms.
double eval_k5_route(const Event5& e);

/// 2 theta(tau) eval_canonical(e), theta(0) = 1. Points with tau < 0 return 0
/// even on a cone.
double eval_retarded(const Event5& e);

/// Pointwise dispatcher used by the command-line tools.
double eval_variant(GFVariant v, const Event5& e, Signature s = Signature::o41());

/// <d/d(r^2) [theta(Q)/sqrt(Q)], phi>, by moving the derivative onto
/// the test function: -2 pi int (Q)_+^(-1/2) d/dr(r phi) dr dt dtau.
PairingResult pair_dr2_cone(const TestFunction& phi, const QuadSpec& q);

/// <CANONICAL, phi> = (1/2 pi^2) pair_dr2_cone.
PairingResult pair_canonical(const TestFunction& phi, const QuadSpec& q);

/// -(1/4 pi) <delta(t^2 - r^2) delta(tau), phi> - (1/4 pi^2) pair_dr2_cone.
PairingResult pair_lh_published(const TestFunction& phi, const QuadSpec& q);

/// I(a, b) = int_1^inf dx / (sqrt(x^2 - 1) (a x + b)), principal value for b < -a.
/// For b^2 > a^2 this is ln|(b + s)/(b - s)| / (2 s), s = sqrt(b^2 - a^2).
/// Throws InvalidArgument for a <= 0 and Degenerate for |b| = a.
double i_closed(double a, double b);

/// The b^2 > a^2 branch exactly as it appears in the literature,
/// -(1/(2 a s)) ln|(b + s)/(b - s)|; the a^2 > b^2 branch matches i_closed.
double i_closed_as_printed(double a, double b);

/// Direct quadrature of the defining integral after x = cosh(alpha); the pole
/// for b < -a is removed by subtracting its principal part on a symmetric window.
PairingResult i_quadrature(double a, double b, const QuadSpec& q);

}  // namespace offshell
