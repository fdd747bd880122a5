#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "offshell/error.hpp"
#include "offshell/oracle.hpp"

using namespace offshell;

TEST_CASE("k0 principal value: residues are even in t and match quadrature") {
  CHECK(k0_principal_residues(1, 0, 1) == doctest::Approx(M_PI * std::sin(1.0)));
  CHECK_THROWS_AS(k0_principal_residues(0, 0, 1), Error);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  QuadSpec q;
  for (int i = 0; i < 20; ++i) {
    const double k = std::abs(u(rng)) + 0.05, k5 = u(rng), t = u(rng);
    CHECK(k0_principal_residues(k, k5, t) == doctest::Approx(k0_principal_residues(k, k5, -t)));
    CHECK(std::abs(k0_principal_quadrature(k, k5, t, q).value - k0_principal_residues(k, k5, t)) < 1e-8);
  }
}

TEST_CASE("principal value by excision and by damping") {
  auto f = [](double k) { return std::abs(k) < 1 ? 1 - k * k : 0.0; };
  const std::vector<double> d{0.08, 0.04, 0.02, 0.01};
  for (double w : {0.3, 1.7}) {
    const double exact = (1 - w * w) * std::log(std::abs((w + 1) / (w - 1))) + 2 * w;
    CHECK(pv_excision(f, w, 1.0, d).value == doctest::Approx(exact).epsilon(1e-6));
    CHECK(pv_abel(f, w, 1.0, d).value == doctest::Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("Fourier oracle rejects unsupported input") {
  QuadSpec q;
  const auto p = TestFunction::poly_bump(Event5(3, 0, 0), 0.5);
  CHECK_THROWS_AS(fourier_pairing(p, Signature::o41(), q), Error);
  const auto g = TestFunction::gaussian(Event5(3, 0, 0), 0.5);
  CHECK_THROWS_AS(fourier_pairing(g, Signature::o32(), q), Error);
}

TEST_CASE("Fourier oracle is negligible on spacelike support") {
  QuadSpec q;
  q.grid = 96;
  const auto g = TestFunction::gaussian(Event5(0, 3, 0.5), 0.35);
  CHECK(std::abs(fourier_pairing(g, Signature::o41(), q).value) < 1e-6);
}
