// Intercluster distance geometry of the superposed constellation seen by
// the relay: the minimum Euclidean distance between joint symbols in
// different clusters, and the singular fade states at which it collapses
// to zero.
#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "pncsim/channel.hpp"
#include "pncsim/constellation.hpp"
#include "pncsim/network_map.hpp"

namespace pncsim {

struct DistanceReport {
  double d_min = 0.0;
  // Lexicographically smallest minimizing pair-of-pairs; the two joint
  // symbols lie in different clusters.
  std::pair<unsigned, unsigned> first;   // (s_a, s_b)
  std::pair<unsigned, unsigned> second;  // (s_a', s_b')
};

struct SingularStateList {
  // Finite nonzero ratios h_A/h_B that collapse some pair of clusters,
  // deduplicated to 1e-9 and sorted by (re, im).
  std::vector<Complex> ratios;
  // A vanished user channel always collapses clusters, so the degenerate
  // states gamma = 0 and gamma = infinity are flagged rather than listed.
  bool zero = false;
  bool infinity = false;
};

// Exhaustive minimum over every ordered pair of joint symbols that map to
// different clusters of ||H (F(s_a) - F(s_a'), F(s_b) - F(s_b'))||.
// Oracle-grade: O(M^4) with no pruning.
DistanceReport min_intercluster_distance(const ChannelMatrix& h,
                                         const Constellation& c,
                                         const NetworkMap& m);

// All ratios -(F(s_b) - F(s_b')) / (F(s_a) - F(s_a')) over different-cluster
// pair-of-pairs with both differences nonzero.
SingularStateList singular_fade_states(const Constellation& c, const NetworkMap& m);

// Precomputed set of distinct symbol-difference pairs (dA, dB) across
// clusters, canonicalized up to global sign. d_min evaluation through the
// profile is exact and allocation-free; selection and the Monte Carlo
// engine use it instead of the O(M^4) enumeration.
class ClusterDifferenceProfile {
 public:
  ClusterDifferenceProfile(const Constellation& c, const NetworkMap& m);

  // min over the profile of sum_r |a_r * dA + b_r * dB|^2.
  double min_distance_sq(std::span<const Complex> col_a,
                         std::span<const Complex> col_b) const;

  double min_distance_sq(Complex h_a, Complex h_b) const {
    return min_distance_sq({&h_a, 1}, {&h_b, 1});
  }

  std::size_t size() const { return diffs_.size(); }

 private:
  struct Diff {
    double a_re, a_im, b_re, b_im;
  };
  std::vector<Diff> diffs_;
};

}  // namespace pncsim
