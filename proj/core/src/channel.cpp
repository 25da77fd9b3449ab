#include "pncsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace pncsim {

NoiseSpec snr_db_to_n0(double es_over_n0_db) {
  return {std::pow(10.0, -es_over_n0_db / 10.0)};
}

ChannelSet draw_channels(RandomStream& rs, unsigned n_a, unsigned n_b, unsigned n_r) {
  if (n_a < 1 || n_b < 1 || n_r < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
  ChannelSet out;
  out.n_a = n_a;
  out.n_b = n_b;
  out.n_r = n_r;
  out.a_coeff.resize(std::size_t{n_a} * n_r);
  out.b_coeff.resize(std::size_t{n_b} * n_r);
  draw_channels_into(rs, out);
  return out;
}

void draw_channels_into(RandomStream& rs, ChannelSet& out) {
  for (auto& h : out.a_coeff) h = rs.next_cgauss(1.0);
  for (auto& h : out.b_coeff) h = rs.next_cgauss(1.0);
}

std::vector<Complex> draw_noise(RandomStream& rs, NoiseSpec ns, unsigned dim) {
  if (dim < 1) throw std::invalid_argument("noise dimension must be >= 1");
  std::vector<Complex> out(dim);
  draw_noise_into(rs, ns, out);
  return out;
}

void draw_noise_into(RandomStream& rs, NoiseSpec ns, std::span<Complex> out) {
  if (!(ns.n0 > 0.0)) throw std::invalid_argument("noise variance must be > 0");
  for (auto& n : out) n = rs.next_cgauss(ns.n0);
}

}  // namespace pncsim
