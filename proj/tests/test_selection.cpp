#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pncsim/selection.hpp"

using namespace pncsim;

namespace {

ChannelSet make_set(unsigned n_a, unsigned n_b, unsigned n_r,
                    std::vector<Complex> a, std::vector<Complex> b) {
  ChannelSet ch;
  ch.n_a = n_a;
  ch.n_b = n_b;
  ch.n_r = n_r;
  ch.a_coeff = std::move(a);
  ch.b_coeff = std::move(b);
  return ch;
}

ChannelSet random_set(unsigned n_a, unsigned n_b, unsigned n_r, std::uint64_t id) {
  RandomStream rs(2024, id);
  return draw_channels(rs, n_a, n_b, n_r);
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("tas1 picks the strongest antenna per user") {
  // |h_{A,1}|^2 = 0.5, |h_{A,2}|^2 = 1.3 -> second antenna (index 1).
  const auto ch = make_set(2, 1, 1,
                           {Complex{std::sqrt(0.5), 0}, Complex{0, std::sqrt(1.3)}},
                           {Complex{1, 0}});
  const auto sel = tas1_select(ch);
  CHECK(sel.a_idx == 1);
  CHECK(sel.b_idx == 0);
  CHECK_FALSE(sel.r_idx.has_value());
  CHECK(sel.metric == doctest::Approx(1.3 + 1.0).epsilon(1e-12));
}

TEST_CASE("tas1 sums power across relay antennas and breaks ties low") {
  // Antenna 0: powers (1, 1); antenna 1: (2, 0) -> exact tie at 2, pick 0.
  const auto ch = make_set(2, 1, 2,
                           {Complex{1, 0}, Complex{0, 1}, Complex{1, 1}, Complex{0, 0}},
                           {Complex{1, 0}, Complex{0, 0}});
  CHECK(tas1_select(ch).a_idx == 0);
}

TEST_CASE("singleton antenna arrays always select index 0") {
  const auto ch = random_set(1, 1, 1, 5);
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  CHECK(tas1_select(ch).a_idx == 0);
  CHECK(tas1_select(ch).b_idx == 0);
  const auto t2 = tas2_select(ch, c, m);
  CHECK(t2.a_idx == 0);
  CHECK(t2.b_idx == 0);
  const auto rep = min_intercluster_distance(effective_channel(ch, t2), c, m);
  CHECK(t2.metric == doctest::Approx(rep.d_min * rep.d_min).epsilon(1e-12));
}

TEST_CASE("tas2 avoids a singular-fade antenna") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const Complex gamma{0, 1};  // singular ratio against h_B = 1
  const auto ch = make_set(2, 1, 1, {gamma, Complex{1, 0}}, {Complex{1, 0}});
  const auto sel = tas2_select(ch, c, m);
  CHECK(sel.a_idx == 1);
  CHECK(sel.metric == doctest::Approx(2.0).epsilon(1e-9));  // sqrt(2)^2
}

TEST_CASE("tas2 equals the brute-force argmax over antenna pairs") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  for (std::uint64_t id = 0; id < 30; ++id) {
    const auto ch = random_set(2, 2, 1 + id % 2, id);
    const auto sel = tas2_select(ch, c, m);
    double best = -1.0;
    unsigned bi = 0, bj = 0;
    for (unsigned i = 0; i < 2; ++i) {
      for (unsigned j = 0; j < 2; ++j) {
        const auto a = ch.a_column(i);
        const auto b = ch.b_column(j);
        const auto rep = oracles::brute_min_distance(
            std::vector<Complex>(a.begin(), a.end()),
            std::vector<Complex>(b.begin(), b.end()), c, m);
        const double sq = rep.d_min * rep.d_min;
        if (sq > best) {
          best = sq;
          bi = i;
          bj = j;
        }
      }
    }
    CHECK(sel.a_idx == bi);
    CHECK(sel.b_idx == bj);
    CHECK(sel.metric == doctest::Approx(best).epsilon(1e-9));
    // Metric dominance over every candidate.
    for (unsigned i = 0; i < 2; ++i) {
      for (unsigned j = 0; j < 2; ++j) {
        const auto a = ch.a_column(i);
        const auto b = ch.b_column(j);
        const auto rep = oracles::brute_min_distance(
            std::vector<Complex>(a.begin(), a.end()),
            std::vector<Complex>(b.begin(), b.end()), c, m);
        CHECK(sel.metric >= rep.d_min * rep.d_min - 1e-12);
      }
    }
  }
}

TEST_CASE("jas equals the brute-force argmax over triples") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  for (std::uint64_t id = 100; id < 120; ++id) {
    const auto ch = random_set(2, 2, 2, id);
    const auto sel = jas_select(ch, c, m);
    REQUIRE(sel.r_idx.has_value());
    double best = -1.0;
    unsigned bi = 0, bj = 0, bk = 0;
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j)
        for (unsigned k = 0; k < 2; ++k) {
          const auto rep = oracles::brute_min_distance(ch.a(i, k), ch.b(j, k), c, m);
          const double sq = rep.d_min * rep.d_min;
          if (sq > best) {
            best = sq;
            bi = i;
            bj = j;
            bk = k;
          }
        }
    CHECK(sel.a_idx == bi);
    CHECK(sel.b_idx == bj);
    CHECK(*sel.r_idx == bk);
    CHECK(sel.metric == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("jas reduces to per-relay-antenna argmax when users have one antenna") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const auto ch = random_set(1, 1, 2, 999);
  const auto sel = jas_select(ch, c, m);
  const double d0 = oracles::brute_min_distance(ch.a(0, 0), ch.b(0, 0), c, m).d_min;
  const double d1 = oracles::brute_min_distance(ch.a(0, 1), ch.b(0, 1), c, m).d_min;
  CHECK(*sel.r_idx == (d1 * d1 > d0 * d0 ? 1 : 0));
}

TEST_CASE("jas and tas2 coincide bit-for-bit when the relay has one antenna") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const ClusterDifferenceProfile profile(c, m);
  for (std::uint64_t id = 200; id < 240; ++id) {
    const auto ch = random_set(2, 2, 1, id);
    const auto t2 = tas2_select(ch, profile);
    const auto j = jas_select(ch, profile);
    CHECK(t2.a_idx == j.a_idx);
    CHECK(t2.b_idx == j.b_idx);
    CHECK(t2.metric == j.metric);  // exact: same arithmetic path
    REQUIRE(j.r_idx.has_value());
    CHECK(*j.r_idx == 0);
  }
}

TEST_CASE("global phase rotation never changes the selected indices") {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const ClusterDifferenceProfile profile(c, m);
  const Complex phase = std::polar(1.0, 1.234);
  for (std::uint64_t id = 300; id < 320; ++id) {
    auto ch = random_set(2, 2, 2, id);
    const auto t1 = tas1_select(ch);
    const auto t2 = tas2_select(ch, profile);
    const auto j = jas_select(ch, profile);
    for (auto& h : ch.a_coeff) h *= phase;
    for (auto& h : ch.b_coeff) h *= phase;
    CHECK(tas1_select(ch).a_idx == t1.a_idx);
    CHECK(tas1_select(ch).b_idx == t1.b_idx);
    CHECK(tas2_select(ch, profile).a_idx == t2.a_idx);
    CHECK(tas2_select(ch, profile).b_idx == t2.b_idx);
    const auto j2 = jas_select(ch, profile);
    CHECK(j2.a_idx == j.a_idx);
    CHECK(j2.b_idx == j.b_idx);
    CHECK(*j2.r_idx == *j.r_idx);
  }
}

TEST_CASE("tas1 treats the users independently and ignores positive scaling") {
  for (std::uint64_t id = 400; id < 420; ++id) {
    auto ch = random_set(3, 3, 2, id);
    const auto before = tas1_select(ch);
    // Perturb user B only: A's winner is untouched.
    RandomStream rs(31, id);
    for (auto& h : ch.b_coeff) h = rs.next_cgauss(1.0);
    const auto after = tas1_select(ch);
    CHECK(after.a_idx == before.a_idx);
    // Scale user A's channels by a positive real: indices unchanged.
    for (auto& h : ch.a_coeff) h *= 3.5;
    const auto scaled = tas1_select(ch);
    CHECK(scaled.a_idx == after.a_idx);
    CHECK(scaled.b_idx == after.b_idx);
  }
}

TEST_CASE("effective channel extraction") {
  const auto ch = random_set(2, 2, 2, 777);
  SelectionResult sel;
  sel.a_idx = 1;
  sel.b_idx = 0;
  auto h = effective_channel(ch, sel);
  REQUIRE(h.rows() == 2);
  CHECK(h.a[0] == ch.a(1, 0));
  CHECK(h.a[1] == ch.a(1, 1));
  CHECK(h.b[0] == ch.b(0, 0));

  sel.r_idx = 1;
  h = effective_channel(ch, sel);
  REQUIRE(h.rows() == 1);
  CHECK(h.a[0] == ch.a(1, 1));
  CHECK(h.b[0] == ch.b(0, 1));

  sel.r_idx = 5;
  CHECK_THROWS_AS(effective_channel(ch, sel), std::invalid_argument);
}

TEST_CASE("scheme tokens") {
  CHECK(scheme_from_token("none") == Scheme::none);
  CHECK(scheme_from_token("tas1") == Scheme::tas1);
  CHECK(scheme_from_token("tas2") == Scheme::tas2);
  CHECK(scheme_from_token("jas") == Scheme::jas);
  CHECK_THROWS_AS(scheme_from_token("best"), std::invalid_argument);
  CHECK(scheme_token(Scheme::jas) == "jas");
}

}  // TEST_SUITE
