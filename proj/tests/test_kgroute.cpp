#include <cmath>

#include "doctest.h"
#include "offshell/bessel.hpp"
#include "offshell/error.hpp"
#include "offshell/kgroute.hpp"

using namespace offshell;

TEST_CASE("Klein-Gordon kernel") {
  const double s = std::sqrt(2.0);
  CHECK(eval_kg(-2.0, 1.5, KGForm::Rewritten) == doctest::Approx(1.5 * bessel_j1(1.5 * s) / (4 * M_PI * s)));
  CHECK(eval_kg(3.0, 1.0, KGForm::Printed) == 0.0);
  CHECK_THROWS_AS(eval_kg(0.0, 1.0, KGForm::Printed), Error);
}

TEST_CASE("Abel-regularised Bessel identity") {
  QuadSpec q;
  for (double x : {0.5, 3.0}) {
    CHECK(std::abs(bessel_identity_integral(x, q).value - 0.5 * M_PI * bessel_j0(x)) < 1e-8);
  }
}
