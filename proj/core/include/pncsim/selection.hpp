// The three antenna-selection schemes: strongest-channel TAS1,
// Euclidean-distance TAS2 (all relay antennas active), and joint
// user-and-relay selection JAS (a single relay antenna active).
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pncsim/channel.hpp"
#include "pncsim/geometry.hpp"

namespace pncsim {

enum class Scheme { none, tas1, tas2, jas };

Scheme scheme_from_token(std::string_view token);
std::string_view scheme_token(Scheme s);

struct SelectionResult {
  unsigned a_idx = 0;                 // selected antenna of user A, 0-based
  unsigned b_idx = 0;                 // selected antenna of user B, 0-based
  std::optional<unsigned> r_idx;      // selected relay antenna (JAS only)
  // Sum of the two winning received powers for TAS1; squared minimum
  // intercluster distance for TAS2/JAS; 0 for the pass-through scheme.
  double metric = 0.0;

  bool operator==(const SelectionResult&) const = default;
};

// Per user, the antenna with the highest total received power at the
// relay. Ties break toward the smaller index.
SelectionResult tas1_select(const ChannelSet& ch);

// Over all user antenna pairs (i, j), maximize the minimum intercluster
// distance of the N_R x 2 matrix [h_{A,i} h_{B,j}]. Ties break toward
// lexicographically smallest (i, j).
SelectionResult tas2_select(const ChannelSet& ch, const ClusterDifferenceProfile& profile);
SelectionResult tas2_select(const ChannelSet& ch, const Constellation& c, const NetworkMap& m);

// Over all triples (i, j, k), maximize the minimum intercluster distance
// of the 1 x 2 vector [h_{A,i,k} h_{B,j,k}]. Ties break lexicographically.
SelectionResult jas_select(const ChannelSet& ch, const ClusterDifferenceProfile& profile);
SelectionResult jas_select(const ChannelSet& ch, const Constellation& c, const NetworkMap& m);

// Antenna 0 everywhere, no relay restriction, metric 0.
SelectionResult no_selection(const ChannelSet& ch);

// Dispatch on scheme.
SelectionResult select_antennas(Scheme scheme, const ChannelSet& ch,
                                const ClusterDifferenceProfile& profile);

// Effective N_R x 2 (or 1 x 2 when a relay antenna was selected) channel
// matrix for the chosen indices.
ChannelMatrix effective_channel(const ChannelSet& ch, const SelectionResult& sel);

}  // namespace pncsim
