#include "pncsim/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace pncsim {

namespace {

bool is_power_of_two(unsigned v) { return v >= 1 && (v & (v - 1)) == 0; }

std::string psk_name(unsigned order) {
  switch (order) {
    case 2: return "bpsk";
    case 4: return "qpsk";
    default: return std::to_string(order) + "psk";
  }
}

}  // namespace

Constellation::Constellation(std::string name, std::vector<Complex> points)
    : name_(std::move(name)), points_(std::move(points)) {
  const auto order = points_.size();
  if (order < 2 || !is_power_of_two(static_cast<unsigned>(order))) {
    throw std::invalid_argument("constellation order must be a power of two >= 2");
  }
  double energy = 0.0;
  for (const auto& p : points_) energy += std::norm(p);
  energy /= static_cast<double>(order);
  if (std::abs(energy - 1.0) > 1e-12) {
    throw std::invalid_argument("constellation average energy must be 1");
  }
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      if (points_[i] == points_[j]) {
        throw std::invalid_argument("constellation points must be distinct");
      }
    }
  }
}

Constellation Constellation::psk(unsigned order) {
  if (order < 2 || !is_power_of_two(order)) {
    throw std::invalid_argument("M-PSK order must be a power of two >= 2");
  }
  std::vector<Complex> pts(order);
  if (order == 2) {
    pts[0] = {0.0, 1.0};
    pts[1] = {0.0, -1.0};
  } else {
    // First quadrant from cos/sin, the rest by quarter-turn rotation
    // (re, im) -> (-im, re), which is exact in floating point. Symmetric
    // point pairs then cancel bit-exactly in distance computations.
    const unsigned quarter = order / 4;
    for (unsigned s = 0; s < quarter; ++s) {
      const double phi = M_PI / order + 2.0 * M_PI * s / order;
      pts[s] = {std::cos(phi), std::sin(phi)};
    }
    for (unsigned s = quarter; s < order; ++s) {
      pts[s] = {-pts[s - quarter].imag(), pts[s - quarter].real()};
    }
  }
  return Constellation(psk_name(order), std::move(pts));
}

Constellation Constellation::qpsk() { return psk(4); }

Constellation Constellation::from_token(std::string_view token) {
  if (token == "bpsk") return psk(2);
  if (token == "qpsk") return psk(4);
  if (token == "8psk") return psk(8);
  if (token == "16psk") return psk(16);
  throw std::invalid_argument("unknown modulation token: " + std::string(token));
}

Complex Constellation::map_symbol(unsigned s) const {
  if (s >= order()) throw std::out_of_range("message outside Z_M");
  return points_[s];
}

unsigned Constellation::demap_symbol(Complex x) const {
  for (unsigned s = 0; s < order(); ++s) {
    if (points_[s] == x) return s;
  }
  throw std::invalid_argument("value is not a constellation point");
}

}  // namespace pncsim
