#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pncsim/transceiver.hpp"

using namespace pncsim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// A channel kept away from every pairwise collision of the superposed
// constellation so that noiseless ML is unambiguous.
ChannelMatrix generic_channel(const Constellation& c, std::uint64_t seed,
                              double margin = 1e-3) {
  RandomStream rs(seed, 0);
  const unsigned order = c.order();
  for (;;) {
    const Complex ha = rs.next_cgauss(1.0);
    const Complex hb = rs.next_cgauss(1.0);
    double min_gap = 1e300;
    for (unsigned sa = 0; sa < order; ++sa)
      for (unsigned sb = 0; sb < order; ++sb)
        for (unsigned ta = 0; ta < order; ++ta)
          for (unsigned tb = 0; tb < order; ++tb) {
            if (sa == ta && sb == tb) continue;
            const Complex gap = ha * (c.map_symbol(sa) - c.map_symbol(ta)) +
                                hb * (c.map_symbol(sb) - c.map_symbol(tb));
            min_gap = std::min(min_gap, std::abs(gap));
          }
    if (min_gap > margin) return ChannelMatrix::siso(ha, hb);
  }
}

}  // namespace

TEST_SUITE("transceiver") {

TEST_CASE("ma_transmit forms the superposition") {
  const auto c = Constellation::qpsk();
  const std::vector<Complex> zero{Complex{0, 0}};
  const auto obs = ma_transmit(ChannelMatrix::siso(1.0, 1.0), 0, 0, zero, c);
  REQUIRE(obs.y.size() == 1);
  // Superposed flat-channel symbol: 2 * (1+i)/sqrt(2) = sqrt(2) * (1+i).
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(obs.y[0] - Complex{s2, s2}) < 1e-12);

  // Zero channel: the observation is exactly the noise.
  const std::vector<Complex> n{Complex{0.3, -0.4}};
  const auto noisy = ma_transmit(ChannelMatrix::siso(0.0, 0.0), 2, 3, n, c);
  CHECK(noisy.y[0] == n[0]);

  // Additivity in the noise term.
  const auto clean = ma_transmit(ChannelMatrix::siso(0.7, -0.2), 1, 2, zero, c);
  const auto shifted = ma_transmit(ChannelMatrix::siso(0.7, -0.2), 1, 2, n, c);
  CHECK(std::abs(shifted.y[0] - (clean.y[0] + n[0])) < 1e-15);

  CHECK_THROWS_AS(ma_transmit(ChannelMatrix::siso(1.0, 1.0), 0, 0,
                              std::vector<Complex>{}, c),
                  std::invalid_argument);
}

TEST_CASE("noiseless joint detection recovers every pair at generic channels") {
  for (unsigned order : {2u, 4u}) {
    const auto c = Constellation::psk(order);
    const auto m = NetworkMap::xor_map(order);
    const auto h = generic_channel(c, 17, 1e-3);
    const std::vector<Complex> zero{Complex{0, 0}};
    for (unsigned sa = 0; sa < order; ++sa) {
      for (unsigned sb = 0; sb < order; ++sb) {
        const auto est = ml_joint_detect(ma_transmit(h, sa, sb, zero, c), c, m);
        CHECK(est.s_a == sa);
        CHECK(est.s_b == sb);
        CHECK(est.ncs == (sa ^ sb));
        CHECK(est.residual_sq < 1e-18);
      }
    }
  }
}

TEST_CASE("tie at a same-cluster collision keeps the NCS correct") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  // h = [1, 1]: (0,1) and (1,0) superpose identically and share cluster 1.
  const auto h = ChannelMatrix::siso(1.0, 1.0);
  const std::vector<Complex> zero{Complex{0, 0}};
  const auto est = ml_joint_detect(ma_transmit(h, 1, 0, zero, c), c, m);
  CHECK(est.s_a == 0);  // lexicographically smaller zero-residual pair
  CHECK(est.s_b == 1);
  CHECK(est.ncs == 1);  // pair is wrong, NCS is right
}

TEST_CASE("tie at a singular fade state resolves lexicographically") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  // gamma = i collides (0,3) with (1,0): clusters 3 vs 1.
  const auto h = ChannelMatrix::siso(Complex{0, 1}, 1.0);
  const std::vector<Complex> zero{Complex{0, 0}};
  const auto est = ml_joint_detect(ma_transmit(h, 1, 0, zero, c), c, m);
  CHECK(est.s_a == 0);
  CHECK(est.s_b == 3);
  CHECK(est.ncs == 3);  // the NCS of the lexicographic winner
}

TEST_CASE("noise below half the collision gap never flips the estimate") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const auto h = generic_channel(c, 23, 5e-2);
  // Exact half-gap for this channel.
  double min_gap = 1e300;
  for (unsigned sa = 0; sa < 4; ++sa)
    for (unsigned sb = 0; sb < 4; ++sb)
      for (unsigned ta = 0; ta < 4; ++ta)
        for (unsigned tb = 0; tb < 4; ++tb) {
          if (sa == ta && sb == tb) continue;
          min_gap = std::min(min_gap,
                             std::abs(h.a[0] * (c.map_symbol(sa) - c.map_symbol(ta)) +
                                      h.b[0] * (c.map_symbol(sb) - c.map_symbol(tb))));
        }
  RandomStream rs(5, 5);
  for (int k = 0; k < 200; ++k) {
    const unsigned sa = rs.next_symbol(4), sb = rs.next_symbol(4);
    const double mag = 0.49 * min_gap * rs.next_unit_double();
    const Complex dir = std::polar(mag, 2.0 * M_PI * rs.next_unit_double());
    const auto est = ml_joint_detect(
        ma_transmit(h, sa, sb, std::vector<Complex>{dir}, c), c, m);
    CHECK(est.s_a == sa);
    CHECK(est.s_b == sb);
  }
}

TEST_CASE("detector matches the brute-force reference under noise") {
  const auto c = Constellation::psk(8);
  const auto m = NetworkMap::xor_map(8);
  RandomStream rs(77, 0);
  for (int k = 0; k < 200; ++k) {
    const std::vector<Complex> col_a{rs.next_cgauss(1.0), rs.next_cgauss(1.0)};
    const std::vector<Complex> col_b{rs.next_cgauss(1.0), rs.next_cgauss(1.0)};
    const std::vector<Complex> y{rs.next_cgauss(2.0), rs.next_cgauss(2.0)};
    const auto est = ml_joint_detect(y, col_a, col_b, c, m);
    const auto ref = oracles::brute_ml_detect(y, col_a, col_b, c);
    CHECK(est.s_a == ref.first);
    CHECK(est.s_b == ref.second);
  }
}

TEST_CASE("winner residual never exceeds the true pair's residual") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  RandomStream rs(99, 0);
  for (int k = 0; k < 300; ++k) {
    const Complex ha = rs.next_cgauss(1.0), hb = rs.next_cgauss(1.0);
    const unsigned sa = rs.next_symbol(4), sb = rs.next_symbol(4);
    const Complex noise = rs.next_cgauss(0.5);
    const auto h = ChannelMatrix::siso(ha, hb);
    const auto obs = ma_transmit(h, sa, sb, std::vector<Complex>{noise}, c);
    const auto est = ml_joint_detect(obs, c, m);
    const double truth_residual =
        std::norm(obs.y[0] - ha * c.map_symbol(sa) - hb * c.map_symbol(sb));
    CHECK(est.residual_sq <= truth_residual + 1e-15);
  }
}

TEST_CASE("form_ncs modulates the map output") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  JointEstimate est;
  est.s_a = 1;
  est.s_b = 3;
  CHECK(std::abs(form_ncs(est, m, c) - Complex{-kInvSqrt2, -kInvSqrt2}) < 1e-15);
  est.s_a = 0;
  est.s_b = 0;
  CHECK(std::abs(form_ncs(est, m, c) - Complex{kInvSqrt2, kInvSqrt2}) < 1e-15);
}

TEST_CASE("noiseless bc decoding inverts the map for every pair") {
  for (unsigned order : {2u, 4u, 8u}) {
    const auto c = Constellation::psk(order);
    const auto m = NetworkMap::xor_map(order);
    const Complex h_prime{0.8, -0.6};
    for (unsigned sa = 0; sa < order; ++sa) {
      for (unsigned sb = 0; sb < order; ++sb) {
        const Complex y = h_prime * c.map_symbol(m.map(sa, sb));
        CHECK(bc_decode(y, h_prime, sa, c, m) == sb);
      }
    }
  }
}

TEST_CASE("bc decoding with zero own message reduces to demapping the NCS") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const Complex h_prime{1.1, 0.4};
  for (unsigned r = 0; r < 4; ++r) {
    const Complex y = h_prime * c.map_symbol(r);
    CHECK(bc_decode(y, h_prime, 0, c, m) == r);  // s XOR 0 = s
  }
}

TEST_CASE("noiseless end-to-end round trip recovers both messages") {
  for (unsigned order : {2u, 4u}) {
    const auto c = Constellation::psk(order);
    const auto m = NetworkMap::xor_map(order);
    const auto h = generic_channel(c, 31, 1e-3);
    const std::vector<Complex> zero{Complex{0, 0}};
    const Complex hpa{0.9, 0.2}, hpb{-0.3, 1.1};
    for (unsigned sa = 0; sa < order; ++sa) {
      for (unsigned sb = 0; sb < order; ++sb) {
        const auto est = ml_joint_detect(ma_transmit(h, sa, sb, zero, c), c, m);
        const Complex x_r = form_ncs(est, m, c);
        // User A recovers s_B; user B exploits XOR symmetry to recover s_A.
        CHECK(bc_decode(hpa * x_r, hpa, sa, c, m) == sb);
        CHECK(bc_decode(hpb * x_r, hpb, sb, c, m) == sa);
      }
    }
  }
}

}  // TEST_SUITE
