#include <cmath>
#include <random>

#include "doctest.h"
#include "offshell/error.hpp"
#include "offshell/greens.hpp"

using namespace offshell;

TEST_CASE("canonical value inside the cone") {
  CHECK(eval_canonical(Event5(2, 1, 1)) == doctest::Approx(8.955612e-3).epsilon(1e-6));
  CHECK(eval_canonical(Event5(2, 1, 1)) == doctest::Approx(std::pow(2.0, -1.5) / (4 * M_PI * M_PI)));
  CHECK(eval_canonical(Event5(1, 2, 0)) == 0.0);
  CHECK(eval_canonical(Event5(2, 0, 3)) == 0.0);
  CHECK_THROWS_AS(eval_canonical(Event5(1, 0, 1)), Error);
}

TEST_CASE("retarded kernel is 2 theta(tau) times canonical") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 500; ++i) {
    const Event5 e(u(rng), std::abs(u(rng)), u(rng));
    if (is_cone(classify(e))) continue;
    if (e.tau() < 0) {
      CHECK(eval_retarded(e) == 0.0);
    } else {
      CHECK(eval_retarded(e) == doctest::Approx(2.0 * eval_canonical(e)));
    }
  }
}

TEST_CASE("K5 route reproduces canonical and g1 = -g2 outside the cone") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const Event5 e(u(rng), std::abs(u(rng)), u(rng));
    const auto reg = classify(e);
    if (is_cone(reg)) continue;
    if (reg == Region5::Timelike5) {
      CHECK(std::abs(eval_k5_route(e) / eval_canonical(e) - 1.0) < 1e-12);
    } else {
      CHECK(eval_k5_route(e) == 0.0);
      const auto g = eval_g1_g2(e);
      CHECK(std::abs(g.g1 + g.g2) <= 1e-12 * std::abs(g.g1));
    }
  }
  CHECK_THROWS_AS(eval_g1_g2(Event5(2, 1, 0)), Error);
}

TEST_CASE("variant names and flags") {
  for (auto v : {GFVariant::Canonical, GFVariant::LhPrincipal, GFVariant::LhPublished, GFVariant::OhPublished,
                 GFVariant::K5Route, GFVariant::Retarded}) {
    CHECK(variant_from_string(to_string(v)) == v);
  }
  CHECK(known_erroneous(GFVariant::OhPublished));
  CHECK_FALSE(known_erroneous(GFVariant::Canonical));
  CHECK_THROWS_AS(variant_from_string("NOPE"), Error);
  CHECK(eval_oh_published(Event5(2, 1, -1)) == 0.0);
}

TEST_CASE("LH principal form in both signatures") {
  const Event5 e(2, 1, 1);
  CHECK(eval_lh_principal(e, Signature::o41()) == doctest::Approx(-eval_canonical(e)));
  const Event5 s(1, 3, 1);
  CHECK(eval_lh_principal(s, Signature::o32()) == doctest::Approx(std::pow(8.0 - 1.0, -1.5) / (4 * M_PI * M_PI)));
  CHECK(eval_lh_published_regular(e) == doctest::Approx(-0.5 * eval_canonical(e)));
}

TEST_CASE("I(a,b) closed form and quadrature") {
  CHECK(i_closed(2, 1) == doctest::Approx(0.604599788).epsilon(1e-9));
  CHECK(i_closed(1, 3) == doctest::Approx(0.623225240).epsilon(1e-9));
  CHECK(i_closed(2, 3) == doctest::Approx(0.430408941).epsilon(1e-9));
  CHECK(i_closed(2, 1) + i_closed(2, -1) == doctest::Approx(M_PI / std::sqrt(3.0)));
  CHECK(i_closed_as_printed(1, 3) != doctest::Approx(i_closed(1, 3)));
  QuadSpec q;
  for (auto [a, b] : {std::pair{2.0, 1.0}, {1.0, 3.0}, {2.0, -3.0}, {0.01, 0.0099}}) {
    const auto r = i_quadrature(a, b, q);
    CHECK(std::abs(r.value - i_closed(a, b)) <= std::max(1e-8, r.abs_err));
  }
  CHECK_THROWS_AS(i_closed(1, 1), Error);
}
