#include <cmath>

#include "doctest.h"
#include "offshell/distributions.hpp"
#include "offshell/error.hpp"
#include "offshell/greens.hpp"

using namespace offshell;

namespace {
QuadSpec quick() {
  QuadSpec q;
  q.tol = 1e-4;
  return q;
}
}  // namespace

TEST_CASE("test functions: values, support and reflections") {
  const auto g = TestFunction::gaussian(Event5(1, 0, 2), 0.3);
  CHECK(g(1, 0, 2) > 0);
  CHECK(g(10, 0, 2) == 0.0);
  const auto p = TestFunction::poly_bump(Event5(1, 0, 2), 0.3);
  CHECK(p(1, 0, 2) > 0);
  CHECK(p(1, 0, 2.95) == 0.0);
  const auto rt = g.reflected_t_tau();
  CHECK(rt(-1, 0.2, -2) == doctest::Approx(g(1, 0.2, 2)));
  const auto h = 2.0 * g + p;
  CHECK(h(1.1, 0.4, 2.1) == doctest::Approx(2 * g(1.1, 0.4, 2.1) + p(1.1, 0.4, 2.1)));
  CHECK_THROWS_AS(TestFunction::gaussian(Event5(0, 0, 0), -1.0), Error);
  CHECK_THROWS_AS(TestFunction::gaussian(Event5(0, 1, 0), 0.3), Error);
  CHECK(g.all_gaussian());
  CHECK_FALSE(h.all_gaussian());
}

TEST_CASE("pair_smooth of a constant integrates the test function") {
  const auto g = TestFunction::gaussian(Event5(0, 0, 0), 0.5);
  const auto r = pair_smooth([](const Event5&) { return 1.0; }, g, quick());
  // exp(-d^2 / w^2) over (t, 3-space, tau) integrates to (pi w^2)^(5/2) times the peak.
  const double w = 0.5;
  const double expected = g(0, 0, 0) * std::pow(M_PI * w * w, 2.5);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("pairings are linear") {
  const auto a = TestFunction::gaussian(Event5(3, 0, 0), 0.5);
  const auto b = TestFunction::gaussian(Event5(2, 0, 1), 0.4);
  const auto q = quick();
  const double pa = pair_canonical(a, q).value;
  const double pb = pair_canonical(b, q).value;
  const double pab = pair_canonical(2.0 * a + b, q).value;
  CHECK(pab == doctest::Approx(2 * pa + pb).epsilon(1e-6));
  const double da = pair_lightcone_delta(a).value;
  const double db = pair_lightcone_delta(b).value;
  CHECK(pair_lightcone_delta(a + 3.0 * b).value == doctest::Approx(da + 3 * db).epsilon(1e-10));
}

TEST_CASE("canonical pairing: interior agrees with the smooth integral") {
  // Support strictly inside the cone: the distribution is the pointwise kernel.
  const auto phi = TestFunction::gaussian(Event5(3, 0, 0), 0.3, 2.0);
  const auto q = quick();
  const auto direct = pair_smooth([](const Event5& e) { return eval_canonical(e); }, phi, q);
  const auto ibp = pair_canonical(phi, q);
  CHECK(ibp.value == doctest::Approx(direct.value).epsilon(1e-7));
}

TEST_CASE("canonical pairing is invariant under (t, tau) -> (-t, -tau)") {
  const auto phi = TestFunction::gaussian(Event5(2, 0, 2), 0.4);
  const auto q = quick();
  CHECK(pair_canonical(phi.reflected_t_tau(), q).value == doctest::Approx(pair_canonical(phi, q).value).epsilon(1e-8));
}

TEST_CASE("regularised limit matches the integration-by-parts route") {
  const auto phi = TestFunction::gaussian(Event5(2, 0, 1), 0.4);
  const QuadSpec q;
  const std::vector<double> as{0.4, 0.2, 0.1, 0.05};
  const auto lim = pair_regularized_limit(phi, as, q);
  const auto ibp = pair_canonical(phi, q);
  CHECK(std::abs(lim.value - ibp.value) <= std::max(1e-5 * std::abs(ibp.value), lim.abs_err + ibp.abs_err));
}

TEST_CASE("light-cone pairing vanishes away from tau = 0") {
  const auto phi = TestFunction::gaussian(Event5(3, 3, 5), 0.35);
  CHECK(pair_lightcone_delta(phi).value == 0.0);
  const auto psi = TestFunction::gaussian(Event5(3, 3, 0), 0.35);
  CHECK(pair_lightcone_delta(psi).value > 0.0);
}
