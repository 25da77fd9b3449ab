#include "pncsim/transceiver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pncsim {

void ma_transmit_into(std::span<const Complex> col_a, std::span<const Complex> col_b,
                      unsigned s_a, unsigned s_b, std::span<const Complex> noise,
                      const Constellation& c, std::span<Complex> y_out) {
  if (col_a.size() != col_b.size() || noise.size() != col_a.size() ||
      y_out.size() != col_a.size()) {
    throw std::invalid_argument("ma_transmit: dimension mismatch");
  }
  const Complex xa = c.map_symbol(s_a);
  const Complex xb = c.map_symbol(s_b);
  for (std::size_t r = 0; r < y_out.size(); ++r) {
    y_out[r] = col_a[r] * xa + col_b[r] * xb + noise[r];
  }
}

MaObservation ma_transmit(const ChannelMatrix& h, unsigned s_a, unsigned s_b,
                          std::span<const Complex> noise, const Constellation& c) {
  MaObservation obs;
  obs.h = h;
  obs.y.resize(h.rows());
  ma_transmit_into(h.a, h.b, s_a, s_b, noise, c, obs.y);
  return obs;
}

JointEstimate ml_joint_detect(std::span<const Complex> y, std::span<const Complex> col_a,
                              std::span<const Complex> col_b, const Constellation& c,
                              const NetworkMap& m) {
  if (col_a.size() != col_b.size() || y.size() != col_a.size() || y.empty()) {
    throw std::invalid_argument("ml_joint_detect: dimension mismatch");
  }
  if (c.order() != m.order()) {
    throw std::invalid_argument("constellation and map order mismatch");
  }
  const unsigned order = c.order();
  const auto pts = c.points();
  const std::size_t rows = y.size();

  JointEstimate best;
  double best_sq = std::numeric_limits<double>::infinity();
  for (unsigned sa = 0; sa < order; ++sa) {
    const double xar = pts[sa].real(), xai = pts[sa].imag();
    for (unsigned sb = 0; sb < order; ++sb) {
      const double xbr = pts[sb].real(), xbi = pts[sb].imag();
      double sq = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        const double ar = col_a[r].real(), ai = col_a[r].imag();
        const double br = col_b[r].real(), bi = col_b[r].imag();
        const double re = y[r].real() - (ar * xar - ai * xai + br * xbr - bi * xbi);
        const double im = y[r].imag() - (ar * xai + ai * xar + br * xbi + bi * xbr);
        sq += re * re + im * im;
      }
      if (sq < best_sq) {
        best_sq = sq;
        best.s_a = sa;
        best.s_b = sb;
      }
    }
  }
  best.residual_sq = best_sq;
  best.ncs = m.map(best.s_a, best.s_b);
  return best;
}

JointEstimate ml_joint_detect(const MaObservation& obs, const Constellation& c,
                              const NetworkMap& m) {
  return ml_joint_detect(obs.y, obs.h.a, obs.h.b, c, m);
}

Complex form_ncs(const JointEstimate& est, const NetworkMap& m, const Constellation& c) {
  return c.map_symbol(m.map(est.s_a, est.s_b));
}

unsigned bc_decode(Complex y, Complex h_prime, unsigned own_msg,
                   const Constellation& c, const NetworkMap& m) {
  if (c.order() != m.order()) {
    throw std::invalid_argument("constellation and map order mismatch");
  }
  const unsigned order = c.order();
  unsigned best_s = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (unsigned s = 0; s < order; ++s) {
    const Complex cand = y - h_prime * c.map_symbol(m.map(own_msg, s));
    const double sq = std::norm(cand);
    if (sq < best_sq) {
      best_sq = sq;
      best_s = s;
    }
  }
  return best_s;
}

}  // namespace pncsim
