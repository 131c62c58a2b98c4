#include <doctest.h>

#include <cmath>

#include "unitransform/special.hpp"

using ut::special::ci_plus_e1;
using ut::special::cosine_integral;
using ut::special::expint_e1;
using ut::special::sine_integral;

TEST_CASE("sine integral reference values") {
    CHECK(std::abs(sine_integral(1.0) - 0.9460830703671831) < 1e-12);
    CHECK(std::abs(sine_integral(4.0) - 1.7582031389490529) < 1e-12);
    CHECK(std::abs(sine_integral(10.0) - 1.6583475942188739) < 1e-12);
    CHECK(std::abs(sine_integral(0.0)) == 0.0);
    CHECK(sine_integral(-1.0) == -sine_integral(1.0));
    // large-argument limit
    CHECK(std::abs(sine_integral(300.0) - 2.0 * std::atan(1.0)) < 1e-2);
}

TEST_CASE("cosine integral reference values") {
    CHECK(std::abs(cosine_integral(1.0) - 0.3374039229009682) < 1e-12);
    CHECK(std::abs(cosine_integral(4.0) - (-0.1409816978869305)) < 1e-12);
    CHECK(std::abs(cosine_integral(10.0) - (-0.0454564330044554)) < 1e-12);
}

TEST_CASE("exponential integral reference values") {
    CHECK(std::abs(expint_e1(0.5) - 0.5597735947761608) < 1e-12);
    CHECK(std::abs(expint_e1(1.0) - 0.2193839343955205) < 1e-12);
    CHECK(std::abs(expint_e1(4.0) - 0.0037793524098489) < 1e-12);
}

TEST_CASE("log cancellation of Ci + E1 near zero") {
    CHECK(std::abs(ci_plus_e1(0.01) - 0.0099500555557217) < 1e-10);
    CHECK(std::abs(ci_plus_e1(1e-12)) < 1e-10);
    CHECK(ci_plus_e1(0.0) == 0.0);
}
