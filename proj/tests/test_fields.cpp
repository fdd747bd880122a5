#include <cmath>

#include "doctest.h"
#include "offshell/error.hpp"
#include "offshell/fields.hpp"

using namespace offshell;

TEST_CASE("current model validation") {
  CurrentModel j;
  CHECK_NOTHROW(j.validate());
  j.sigma_r = -1;
  CHECK_THROWS_AS(j.validate(), Error);
}

TEST_CASE("half even kernel solves the wave equation on a coarse grid") {
  CurrentModel j;
  QuadSpec q;
  const auto g = GridSpec::around(j, 32, 4.0 / 32);
  const auto a = convolve(j, g, q, KernelSpec{KernelKind::Even, 0.5});
  const auto r = residual(a, j);
  CHECK(r.rel_l2 <= 0.1);
  CHECK(r.points > 0);
}

TEST_CASE("retarded field is exactly zero before the source") {
  CurrentModel j;
  QuadSpec q;
  const auto g = GridSpec::around(j, 24, 4.0 / 24);
  const auto a = convolve_retarded(j, g, q);
  std::size_t rows = 0;
  for (std::size_t k = 0; k < g.n_tau; ++k) {
    if (a.tau(k) >= j.tau_lo()) continue;
    ++rows;
    for (std::size_t it = 0; it < g.n_t; ++it) {
      for (std::size_t ir = 0; ir < g.n_r; ++ir) CHECK(a.at(it, ir, k) == 0.0);
    }
  }
  CHECK(rows > 0);
}

TEST_CASE("field is linear in the amplitude") {
  CurrentModel j;
  QuadSpec q;
  const auto g = GridSpec::around(j, 16, 4.0 / 16);
  const auto a = convolve(j, g, q, KernelSpec{KernelKind::Even, 1.0});
  j.amplitude = 3.0;
  const auto b = convolve(j, g, q, KernelSpec{KernelKind::Even, 1.0});
  for (std::size_t i = 0; i < a.values.size(); i += 97) CHECK(b.values[i] == doctest::Approx(3 * a.values[i]));
}

TEST_CASE("grid validation") {
  CurrentModel j;
  GridSpec g = GridSpec::around(j, 16, 0.25);
  CHECK_NOTHROW(g.validate());
  g.n_r = 4;
  CHECK_THROWS_AS(g.validate(), Error);
}
