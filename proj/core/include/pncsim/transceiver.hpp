// MA-phase relay processing (superposition receive, joint ML detection,
// network-coded symbol formation) and BC-phase user-side decoding.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pncsim/channel.hpp"
#include "pncsim/constellation.hpp"
#include "pncsim/network_map.hpp"

namespace pncsim {

struct MaObservation {
  std::vector<Complex> y;  // one sample per relay antenna
  ChannelMatrix h;         // effective channel the samples were formed with
};

struct JointEstimate {
  unsigned s_a = 0;
  unsigned s_b = 0;
  unsigned ncs = 0;        // map output of the winning pair
  double residual_sq = 0.0;
};

// y = H (F(s_a), F(s_b)) + noise with Es = 1. noise length must equal the
// matrix row count.
MaObservation ma_transmit(const ChannelMatrix& h, unsigned s_a, unsigned s_b,
                          std::span<const Complex> noise, const Constellation& c);

// Writes the received vector into y_out (same length as the columns).
void ma_transmit_into(std::span<const Complex> col_a, std::span<const Complex> col_b,
                      unsigned s_a, unsigned s_b, std::span<const Complex> noise,
                      const Constellation& c, std::span<Complex> y_out);

// Exhaustive minimization of ||y - H (F(s_a), F(s_b))||^2 over all M^2
// joint hypotheses; ties break toward the lexicographically smallest
// (s_a, s_b).
JointEstimate ml_joint_detect(const MaObservation& obs, const Constellation& c,
                              const NetworkMap& m);
JointEstimate ml_joint_detect(std::span<const Complex> y, std::span<const Complex> col_a,
                              std::span<const Complex> col_b, const Constellation& c,
                              const NetworkMap& m);

// x_R = F(M(s_a, s_b)) for the estimated pair.
Complex form_ncs(const JointEstimate& est, const NetworkMap& m, const Constellation& c);

// User-side BC decode: argmin over s of |y - h' F(M(own_msg, s))|; ties
// break toward the smaller s.
unsigned bc_decode(Complex y, Complex h_prime, unsigned own_msg,
                   const Constellation& c, const NetworkMap& m);

}  // namespace pncsim
