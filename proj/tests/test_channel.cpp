#include <doctest.h>

#include <cmath>

#include "pncsim/channel.hpp"

using namespace pncsim;

TEST_SUITE("channel") {

TEST_CASE("snr to noise variance") {
  CHECK(snr_db_to_n0(0.0).n0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snr_db_to_n0(10.0).n0 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(snr_db_to_n0(30.0).n0 == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(snr_db_to_n0(-10.0).n0 == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("same stream key reproduces the channel set exactly") {
  RandomStream a(99, 1000), b(99, 1000);
  const auto ca = draw_channels(a, 2, 3, 2);
  const auto cb = draw_channels(b, 2, 3, 2);
  CHECK(ca.a_coeff == cb.a_coeff);
  CHECK(ca.b_coeff == cb.b_coeff);
  CHECK(ca.n_a == 2);
  CHECK(ca.n_b == 3);
  CHECK(ca.n_r == 2);
  CHECK(ca.a_coeff.size() == 4);
  CHECK(ca.b_coeff.size() == 6);
}

TEST_CASE("column views are contiguous per transmit antenna") {
  RandomStream rs(1, 1);
  const auto ch = draw_channels(rs, 2, 2, 3);
  for (unsigned i = 0; i < 2; ++i) {
    const auto col = ch.a_column(i);
    REQUIRE(col.size() == 3);
    for (unsigned j = 0; j < 3; ++j) CHECK(col[j] == ch.a(i, j));
  }
}

TEST_CASE("channel coefficients are CN(0,1) to within 3 standard errors") {
  RandomStream rs(5, 0);
  const int n = 250000;  // x4 coefficients per draw = 1e6 samples
  Complex mean = 0.0;
  double power = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto ch = draw_channels(rs, 2, 2, 1);
    for (const auto& h : ch.a_coeff) {
      mean += h;
      power += std::norm(h);
    }
    for (const auto& h : ch.b_coeff) {
      mean += h;
      power += std::norm(h);
    }
  }
  const double samples = 4.0 * n;
  mean /= samples;
  power /= samples;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(samples));
  CHECK(std::abs(power - 1.0) < 3.0 / std::sqrt(samples));
}

TEST_CASE("noise variance tracks the requested value") {
  RandomStream rs(6, 0);
  const int n = 500000;
  const NoiseSpec ns{2.0};
  double power = 0.0;
  for (int k = 0; k < n; ++k) {
    for (const auto& z : draw_noise(rs, ns, 2)) power += std::norm(z);
  }
  power /= 2.0 * n;
  CHECK(std::abs(power - 2.0) < 3.0 * 2.0 / std::sqrt(2.0 * n));
  CHECK(power == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("noise magnitude collapses as n0 -> 0") {
  RandomStream rs(7, 0);
  const auto v = draw_noise(rs, {1e-30}, 8);
  for (const auto& z : v) CHECK(std::abs(z) < 1e-13);
}

TEST_CASE("input validation") {
  RandomStream rs(0, 0);
  CHECK_THROWS_AS(draw_channels(rs, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(draw_noise(rs, {1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(draw_noise(rs, {0.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(draw_noise(rs, {-1.0}, 1), std::invalid_argument);
}

}  // TEST_SUITE
