#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "gfweno/multistep.hpp"
#include "oracle_helpers.hpp"

using namespace gfweno;

namespace {

void require_weights(std::span<const double> got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-15));
}

}  // namespace

TEST_CASE("Adams-Bashforth tables up to order 8") {
  const MultiStepRule ab4 = multistep_weights(AdamsFamily::bashforth, 4);
  CHECK(ab4.steps == 4);
  CHECK(ab4.beta.size() == 5);
  CHECK(ab4.beta.back() == 0.0);
  require_weights(ab4.active(), {-9.0 / 24, 37.0 / 24, -59.0 / 24, 55.0 / 24});

  const MultiStepRule ab6 = multistep_weights(AdamsFamily::bashforth, 6);
  require_weights(ab6.active(), {-475.0 / 1440, 2877.0 / 1440, -7298.0 / 1440,
                                 9982.0 / 1440, -7923.0 / 1440, 4277.0 / 1440});

  const MultiStepRule ab8 = multistep_weights(AdamsFamily::bashforth, 8);
  require_weights(ab8.active(),
                  {-36799.0 / 120960, 295767.0 / 120960, -1041723.0 / 120960,
                   2102243.0 / 120960, -2664477.0 / 120960, 2183877.0 / 120960,
                   -1152169.0 / 120960, 434241.0 / 120960});
}

TEST_CASE("Adams-Moulton tables up to order 8") {
  const MultiStepRule am4 = multistep_weights(AdamsFamily::moulton, 4);
  CHECK(am4.steps == 3);
  require_weights(am4.active(), {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24});

  const MultiStepRule am6 = multistep_weights(AdamsFamily::moulton, 6);
  require_weights(am6.active(), {27.0 / 1440, -173.0 / 1440, 482.0 / 1440,
                                 -798.0 / 1440, 1427.0 / 1440, 475.0 / 1440});

  const MultiStepRule am8 = multistep_weights(AdamsFamily::moulton, 8);
  require_weights(am8.active(),
                  {1375.0 / 120960, -11351.0 / 120960, 41499.0 / 120960,
                   -88547.0 / 120960, 123133.0 / 120960, -121797.0 / 120960,
                   139849.0 / 120960, 36799.0 / 120960});
}

TEST_CASE("reduced rules: low-order members") {
  require_weights(reduced_weights(AdamsFamily::bashforth, 2), {-0.5, 1.5});
  require_weights(reduced_weights(AdamsFamily::moulton, 2), {0.5, 0.5});
  require_weights(reduced_weights(AdamsFamily::bashforth, 1), {1.0});
  require_weights(reduced_weights(AdamsFamily::moulton, 1), {1.0});
}

TEST_CASE("weights sum to one") {
  for (AdamsFamily fam : {AdamsFamily::bashforth, AdamsFamily::moulton})
    for (int n = 1; n <= 8; ++n) {
      const std::vector<double> w = reduced_weights(fam, n);
      double sum = 0.0;
      for (double b : w) sum += b;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("quadrature exact for polynomials of degree order-1") {
  oracle::Lcg rng(0x5eed);
  for (AdamsFamily fam : {AdamsFamily::bashforth, AdamsFamily::moulton})
    for (int n = 1; n <= 8; ++n) {
      const std::vector<double> w = reduced_weights(fam, n);
      const int last = fam == AdamsFamily::bashforth ? 0 : 1;
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> coeff;
        for (int d = 0; d < n; ++d) coeff.push_back(rng.uniform(-2.0, 2.0));
        const auto poly = [&](double x) {
          double v = 0.0;
          for (int d = n - 1; d >= 0; --d) v = v * x + coeff[static_cast<size_t>(d)];
          return v;
        };
        const auto antider = [&](double x) {
          double v = 0.0;
          for (int d = n - 1; d >= 0; --d)
            v = v * x + coeff[static_cast<size_t>(d)] / (d + 1);
          return v * x;
        };
        double sum = 0.0, magnitude = 0.0;
        for (int m = 0; m < n; ++m) {
          const double term = w[static_cast<size_t>(m)] * poly(last - (n - 1) + m);
          sum += term;
          magnitude += std::abs(term);
        }
        const double exact = antider(1.0) - antider(0.0);
        // relative to the term magnitude: distant nodes make the sum
        // ill-conditioned for high degrees
        CHECK(std::abs(sum - exact) <= 1e-12 * std::max(1.0, magnitude));
      }
    }
}

TEST_CASE("unsupported order is a configuration error") {
  CHECK_THROWS_AS(multistep_weights(AdamsFamily::bashforth, 5), ConfigError);
  CHECK_THROWS_AS(multistep_weights(AdamsFamily::moulton, 3), ConfigError);
  CHECK_THROWS_AS(reduced_weights(AdamsFamily::moulton, 9), ConfigError);
}
