#include "pncsim/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace pncsim {

Scheme scheme_from_token(std::string_view token) {
  if (token == "none") return Scheme::none;
  if (token == "tas1") return Scheme::tas1;
  if (token == "tas2") return Scheme::tas2;
  if (token == "jas") return Scheme::jas;
  throw std::invalid_argument("unknown scheme token: " + std::string(token));
}

std::string_view scheme_token(Scheme s) {
  switch (s) {
    case Scheme::none: return "none";
    case Scheme::tas1: return "tas1";
    case Scheme::tas2: return "tas2";
    case Scheme::jas: return "jas";
  }
  return "?";
}

namespace {

unsigned strongest_antenna(const ChannelSet& ch, bool user_a, double& power_out) {
  const unsigned n = user_a ? ch.n_a : ch.n_b;
  unsigned best_i = 0;
  double best_p = -1.0;
  for (unsigned i = 0; i < n; ++i) {
    const auto col = user_a ? ch.a_column(i) : ch.b_column(i);
    double p = 0.0;
    for (const Complex& h : col) p += std::norm(h);
    if (p > best_p) {
      best_p = p;
      best_i = i;
    }
  }
  power_out = best_p;
  return best_i;
}

}  // namespace

SelectionResult tas1_select(const ChannelSet& ch) {
  SelectionResult out;
  double pa = 0.0, pb = 0.0;
  out.a_idx = strongest_antenna(ch, true, pa);
  out.b_idx = strongest_antenna(ch, false, pb);
  out.metric = pa + pb;
  return out;
}

SelectionResult tas2_select(const ChannelSet& ch, const ClusterDifferenceProfile& profile) {
  SelectionResult out;
  double best = -1.0;
  for (unsigned i = 0; i < ch.n_a; ++i) {
    for (unsigned j = 0; j < ch.n_b; ++j) {
      const double sq = profile.min_distance_sq(ch.a_column(i), ch.b_column(j));
      if (sq > best) {
        best = sq;
        out.a_idx = i;
        out.b_idx = j;
      }
    }
  }
  out.metric = best;
  return out;
}

SelectionResult tas2_select(const ChannelSet& ch, const Constellation& c,
                            const NetworkMap& m) {
  return tas2_select(ch, ClusterDifferenceProfile(c, m));
}

SelectionResult jas_select(const ChannelSet& ch, const ClusterDifferenceProfile& profile) {
  SelectionResult out;
  double best = -1.0;
  for (unsigned i = 0; i < ch.n_a; ++i) {
    for (unsigned j = 0; j < ch.n_b; ++j) {
      for (unsigned k = 0; k < ch.n_r; ++k) {
        const double sq = profile.min_distance_sq(ch.a(i, k), ch.b(j, k));
        if (sq > best) {
          best = sq;
          out.a_idx = i;
          out.b_idx = j;
          out.r_idx = k;
        }
      }
    }
  }
  out.metric = best;
  return out;
}

SelectionResult jas_select(const ChannelSet& ch, const Constellation& c,
                           const NetworkMap& m) {
  return jas_select(ch, ClusterDifferenceProfile(c, m));
}

SelectionResult no_selection(const ChannelSet&) { return {}; }

SelectionResult select_antennas(Scheme scheme, const ChannelSet& ch,
                                const ClusterDifferenceProfile& profile) {
  switch (scheme) {
    case Scheme::none: return no_selection(ch);
    case Scheme::tas1: return tas1_select(ch);
    case Scheme::tas2: return tas2_select(ch, profile);
    case Scheme::jas: return jas_select(ch, profile);
  }
  throw std::logic_error("unreachable scheme");
}

ChannelMatrix effective_channel(const ChannelSet& ch, const SelectionResult& sel) {
  if (sel.a_idx >= ch.n_a || sel.b_idx >= ch.n_b ||
      (sel.r_idx && *sel.r_idx >= ch.n_r)) {
    throw std::invalid_argument("selection indices out of range");
  }
  ChannelMatrix h;
  if (sel.r_idx) {
    h.a = {ch.a(sel.a_idx, *sel.r_idx)};
    h.b = {ch.b(sel.b_idx, *sel.r_idx)};
  } else {
    const auto a = ch.a_column(sel.a_idx);
    const auto b = ch.b_column(sel.b_idx);
    h.a.assign(a.begin(), a.end());
    h.b.assign(b.begin(), b.end());
  }
  return h;
}

}  // namespace pncsim
