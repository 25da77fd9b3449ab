// The relay's denoising map M: Z_M x Z_M -> Z_M, its exclusive-law
// validation, and the cluster partition of joint symbol pairs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pncsim {

struct Cluster {
  unsigned ncs;                                         // shared map output
  std::vector<std::pair<unsigned, unsigned>> members;   // (s_a, s_b), lex order
};

class NetworkMap {
 public:
  // table[s_a][s_b] = s_a XOR s_b. order must be a power of two >= 2.
  static NetworkMap xor_map(unsigned order);

  // Arbitrary table, row-major with row index s_a. Entries must lie in
  // Z_order; the exclusive law is *not* required here so that invalid
  // maps can be constructed and then rejected by validation.
  static NetworkMap from_table(unsigned order, std::vector<unsigned> table);

  // Plain-text format: first line M, then M lines of M integers (row = s_a).
  // Throws std::runtime_error on malformed input or an exclusive-law
  // violation (the message cites the offending row or column).
  static NetworkMap load(std::istream& in);
  static NetworkMap load_file(const std::string& path);

  unsigned order() const { return order_; }
  unsigned map(unsigned s_a, unsigned s_b) const {
    return table_[s_a * order_ + s_b];
  }

  // True iff every row and every column is a permutation of Z_M (Latin
  // square).
  bool exclusive_law_holds() const { return !violation().has_value(); }

  // Human-readable description of the first exclusive-law violation, or
  // nullopt for a valid map.
  std::optional<std::string> violation() const;

  // Cluster partition ordered by ncs; members in lexicographic (s_a, s_b)
  // order. Requires a valid map.
  std::vector<Cluster> clusters() const;

  // The unique s_b with map(s_a, s_b) == ncs. Requires a valid map.
  unsigned invert_second(unsigned s_a, unsigned ncs) const;

 private:
  NetworkMap(unsigned order, std::vector<unsigned> table);
  void build_inverse();

  unsigned order_;
  std::vector<unsigned> table_;       // order_ x order_, row-major
  std::vector<unsigned> inv_second_;  // [s_a * order_ + ncs] -> s_b; empty if invalid
};

}  // namespace pncsim
