// Rayleigh block-fading coefficient generation for every user/relay
// antenna pair, complex Gaussian noise, and the Es/N0 <-> N0 conversion
// (Es is fixed to 1 throughout the library).
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pncsim/random.hpp"

namespace pncsim {

struct NoiseSpec {
  double n0;  // linear noise variance; > 0
};

// N0 for a given Es/N0 in dB with Es = 1.
NoiseSpec snr_db_to_n0(double es_over_n0_db);

// Fading coefficients h[user][antenna i][relay antenna j] for one trial.
// Per-user storage is row-major in (i, j), so the N_R coefficients of one
// transmit antenna are contiguous.
struct ChannelSet {
  unsigned n_a = 0, n_b = 0, n_r = 0;
  std::vector<Complex> a_coeff;  // n_a * n_r
  std::vector<Complex> b_coeff;  // n_b * n_r

  Complex a(unsigned i, unsigned j) const { return a_coeff[i * n_r + j]; }
  Complex b(unsigned i, unsigned j) const { return b_coeff[i * n_r + j]; }

  // Column of all relay antennas seen from one transmit antenna.
  std::span<const Complex> a_column(unsigned i) const {
    return {a_coeff.data() + i * n_r, n_r};
  }
  std::span<const Complex> b_column(unsigned j) const {
    return {b_coeff.data() + j * n_r, n_r};
  }
};

// Effective N_R x 2 channel after antenna selection: one column per user.
struct ChannelMatrix {
  std::vector<Complex> a;  // column of user A, length = rows
  std::vector<Complex> b;  // column of user B, same length

  std::size_t rows() const { return a.size(); }

  static ChannelMatrix siso(Complex h_a, Complex h_b) { return {{h_a}, {h_b}}; }
};

// Draw order is fixed: user A antennas in (i, j) lexicographic order, then
// user B. Coefficients are i.i.d. CN(0, 1).
ChannelSet draw_channels(RandomStream& rs, unsigned n_a, unsigned n_b, unsigned n_r);

// Allocation-free variant; out must carry the desired dimensions.
void draw_channels_into(RandomStream& rs, ChannelSet& out);

// dim i.i.d. CN(0, ns.n0) samples.
std::vector<Complex> draw_noise(RandomStream& rs, NoiseSpec ns, unsigned dim);
void draw_noise_into(RandomStream& rs, NoiseSpec ns, std::span<Complex> out);

}  // namespace pncsim
