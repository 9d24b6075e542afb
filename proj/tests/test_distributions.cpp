#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "doctest.h"
#include "oilrisk/distributions.hpp"

using namespace oilrisk;

TEST_CASE("normal cdf symmetry and tails") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(-40.0) <= 1e-12);
    CHECK(normal_cdf(1.0) + normal_cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
}

TEST_CASE("normal ppf inverts the cdf") {
    for (double p : {1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-6}) {
        CHECK(normal_cdf(normal_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normal_ppf(-0.1), std::domain_error);
}

TEST_CASE("chi2 cdf closed forms") {
    CHECK(chi2_cdf(0.0, 3.0) == doctest::Approx(0.0));
    // chi2(2) is exponential with mean 2: CDF(2 ln 2) = 1 - exp(-ln 2) = 0.5.
    CHECK(chi2_cdf(2.0 * std::log(2.0), 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    // chi2(1) at 1 equals P(|Z| < 1).
    CHECK(chi2_cdf(1.0, 1.0) ==
          doctest::Approx(2.0 * normal_cdf(1.0) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(chi2_cdf(1.0, 0.0), std::domain_error);
}

TEST_CASE("f and t cdf closed forms") {
    // F(d, d) at 1 is exactly 1/2 by symmetry.
    CHECK(f_cdf(1.0, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f_cdf(1.0, 7.0, 7.0) == doctest::Approx(0.5).epsilon(1e-12));
    // t(1) is Cauchy: CDF(1) = 3/4.
    CHECK(t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    // t(2): CDF(x) = 1/2 + x / (2 sqrt(2 + x^2)).
    const double x = std::sqrt(2.0);
    CHECK(t_cdf(x, 2.0) ==
          doctest::Approx(0.5 + x / (2.0 * std::sqrt(2.0 + x * x))).epsilon(1e-12));
    CHECK(t_cdf(-x, 2.0) ==
          doctest::Approx(0.5 - x / (2.0 * std::sqrt(2.0 + x * x))).epsilon(1e-12));
}

TEST_CASE("cdfs are monotone nondecreasing") {
    double prev_chi = -1.0, prev_f = -1.0, prev_t = -1.0, prev_n = -1.0;
    for (double x = -6.0; x <= 12.0; x += 0.125) {
        const double n = normal_cdf(x);
        CHECK(n >= prev_n);
        prev_n = n;
        if (x >= 0.0) {
            const double c = chi2_cdf(x, 4.0);
            const double f = f_cdf(x, 3.0, 9.0);
            CHECK(c >= prev_chi);
            CHECK(f >= prev_f);
            prev_chi = c;
            prev_f = f;
        }
        const double t = t_cdf(x, 5.0);
        CHECK(t >= prev_t);
        prev_t = t;
    }
}
