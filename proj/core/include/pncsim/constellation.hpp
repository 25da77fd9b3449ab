// M-ary complex constellations with unit average symbol energy and the
// mapper between integer messages in Z_M and modulated symbols.
#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pncsim {

using Complex = std::complex<double>;

class Constellation {
 public:
  // Table-order QPSK: {(1+i), (-1+i), (-1-i), (1-i)} / sqrt(2).
  static Constellation qpsk();

  // M-PSK with points exp(i*(pi/M + 2*pi*s/M)), s = 0..M-1. psk(4) is
  // point-for-point identical to qpsk(). M must be a power of two >= 2.
  static Constellation psk(unsigned order);

  // CLI tokens: "bpsk", "qpsk", "8psk", "16psk".
  static Constellation from_token(std::string_view token);

  unsigned order() const { return static_cast<unsigned>(points_.size()); }
  const std::string& name() const { return name_; }
  std::span<const Complex> points() const { return points_; }

  // F(s). Throws std::out_of_range for s >= order().
  Complex map_symbol(unsigned s) const;

  // Exact table inversion of F: x must be one of the stored points
  // (bit-exact), otherwise std::invalid_argument. Not a slicer.
  unsigned demap_symbol(Complex x) const;

 private:
  Constellation(std::string name, std::vector<Complex> points);

  std::string name_;
  std::vector<Complex> points_;
};

}  // namespace pncsim
