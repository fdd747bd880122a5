#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "offshell/bessel.hpp"
#include "offshell/core.hpp"
#include "offshell/error.hpp"
#include "offshell/parallel.hpp"
#include "offshell/quadrature.hpp"

using namespace offshell;

TEST_CASE("Event5 invariants and validation") {
  const Event5 e(2.0, 1.0, 1.0);
  CHECK(e.q() == doctest::Approx(2.0));
  CHECK(e.interval4() == doctest::Approx(-3.0));
  CHECK_THROWS_AS(Event5(0.0, -1.0, 0.0), Error);
  CHECK_THROWS_AS(Event5(NAN, 0.0, 0.0), Error);
  const auto x = Event5::from_xyz(1.0, {3.0, 4.0, 0.0}, 0.0);
  CHECK(x.r() == doctest::Approx(5.0));
  REQUIRE(x.xyz().has_value());
}

TEST_CASE("classify regions and cones") {
  CHECK(classify(Event5(2, 1, 1)) == Region5::Timelike5);
  CHECK(classify(Event5(1, 2, 0)) == Region5::Spacelike4);
  CHECK(classify(Event5(2, 1, 3)) == Region5::Mixed);
  CHECK(classify(Event5(1, 1, 0.5)) == Region5::Cone4);
  CHECK(classify(Event5(3, 0, 3)) == Region5::Cone5);
  CHECK(is_cone(Region5::Cone5));
  CHECK_FALSE(is_cone(Region5::Mixed));
}

TEST_CASE("region classification partitions random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 2000; ++i) {
    const Event5 e(u(rng), std::abs(u(rng)), u(rng));
    const auto inv = invariants(e);
    switch (inv.region) {
      case Region5::Timelike5: CHECK(inv.q > 0); break;
      case Region5::Spacelike4: CHECK(inv.x2 > 0); break;
      case Region5::Mixed: CHECK((inv.x2 < 0 && inv.q < 0)); break;
      default: break;
    }
  }
}

TEST_CASE("QuadSpec validation") {
  QuadSpec q;
  CHECK_NOTHROW(q.validate());
  q.eps_seq = {0.1, 0.2, 0.05};
  CHECK_THROWS_AS(q.validate(), Error);
  q = QuadSpec{};
  q.tol = 0;
  CHECK_THROWS_AS(q.validate(), Error);
  q = QuadSpec{};
  q.k_max = 1.0;
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("adaptive quadrature and sqrt endpoints") {
  const auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13, 1e-13);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  const auto s = integrate_sqrt_ends([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1.0, 1.0,
                                     SqrtEnds::Both, 1e-12, 1e-12);
  CHECK(s.value == doctest::Approx(M_PI).epsilon(1e-10));
  EvalBudget b(10);
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(100 * x); }, 0.0, 10.0, 1e-14, 1e-14, &b), Error);
}

TEST_CASE("Richardson extrapolation is exact on polynomials") {
  const std::vector<double> xs{0.4, 0.2, 0.1, 0.05};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 + 2.0 * x - 5.0 * x * x + x * x * x);
  const auto e = extrapolate_to_zero(xs, ys);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(extrapolate_to_zero(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto v = composite_gauss([](double x) { return std::pow(x, 7); }, 0.0, 2.0, 1, 4);
  CHECK(v == doctest::Approx(32.0).epsilon(1e-13));
}

TEST_CASE("Bessel functions agree with the standard library") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-13);
    CHECK(std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)) < 1e-13);
  }
  CHECK(bessel_j0(-2.0) == doctest::Approx(bessel_j0(2.0)));
  CHECK(bessel_j1(-2.0) == doctest::Approx(-bessel_j1(2.0)));
}

TEST_CASE("parallel_map is independent of the thread count") {
  auto run = [](std::size_t n) {
    set_thread_count(n);
    return parallel_map<double>(257, [](std::size_t i) { return std::sin(static_cast<double>(i)); });
  };
  const auto a = run(1);
  const auto b = run(3);
  set_thread_count(0);
  CHECK(a == b);
}
