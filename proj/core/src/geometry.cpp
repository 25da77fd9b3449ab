#include "pncsim/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pncsim {

namespace {

void check_inputs(const ChannelMatrix& h, const Constellation& c, const NetworkMap& m) {
  if (h.a.size() != h.b.size() || h.rows() == 0) {
    throw std::invalid_argument("channel matrix columns must be nonempty and equal length");
  }
  if (c.order() != m.order()) {
    throw std::invalid_argument("constellation and map order mismatch");
  }
}

}  // namespace

DistanceReport min_intercluster_distance(const ChannelMatrix& h,
                                         const Constellation& c,
                                         const NetworkMap& m) {
  check_inputs(h, c, m);
  if (auto why = m.violation()) {
    throw std::invalid_argument("map violates the exclusive law: " + *why);
  }
  const unsigned order = c.order();
  const auto pts = c.points();
  const std::size_t rows = h.rows();

  DistanceReport best;
  double best_sq = -1.0;
  for (unsigned sa = 0; sa < order; ++sa) {
    for (unsigned sb = 0; sb < order; ++sb) {
      const unsigned ncs = m.map(sa, sb);
      for (unsigned sa2 = 0; sa2 < order; ++sa2) {
        const Complex da = pts[sa] - pts[sa2];
        for (unsigned sb2 = 0; sb2 < order; ++sb2) {
          if (m.map(sa2, sb2) == ncs) continue;
          const Complex db = pts[sb] - pts[sb2];
          double sq = 0.0;
          for (std::size_t r = 0; r < rows; ++r) {
            const Complex e = h.a[r] * da + h.b[r] * db;
            sq += std::norm(e);
          }
          if (best_sq < 0.0 || sq < best_sq) {
            best_sq = sq;
            best.first = {sa, sb};
            best.second = {sa2, sb2};
          }
        }
      }
    }
  }
  best.d_min = std::sqrt(best_sq);
  return best;
}

SingularStateList singular_fade_states(const Constellation& c, const NetworkMap& m) {
  if (c.order() != m.order()) {
    throw std::invalid_argument("constellation and map order mismatch");
  }
  if (auto why = m.violation()) {
    throw std::invalid_argument("map violates the exclusive law: " + *why);
  }
  const unsigned order = c.order();
  const auto pts = c.points();
  constexpr double kDedupTol = 1e-9;

  SingularStateList out;
  out.zero = true;
  out.infinity = true;
  for (unsigned sa = 0; sa < order; ++sa) {
    for (unsigned sb = 0; sb < order; ++sb) {
      const unsigned ncs = m.map(sa, sb);
      for (unsigned sa2 = 0; sa2 < order; ++sa2) {
        const Complex da = pts[sa] - pts[sa2];
        for (unsigned sb2 = 0; sb2 < order; ++sb2) {
          if (m.map(sa2, sb2) == ncs) continue;
          const Complex db = pts[sb] - pts[sb2];
          if (std::abs(da) < kDedupTol || std::abs(db) < kDedupTol) continue;
          const Complex gamma = -db / da;
          const bool dup = std::any_of(out.ratios.begin(), out.ratios.end(),
                                       [&](Complex r) { return std::abs(r - gamma) < kDedupTol; });
          if (!dup) out.ratios.push_back(gamma);
        }
      }
    }
  }
  std::sort(out.ratios.begin(), out.ratios.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

ClusterDifferenceProfile::ClusterDifferenceProfile(const Constellation& c,
                                                   const NetworkMap& m) {
  if (c.order() != m.order()) {
    throw std::invalid_argument("constellation and map order mismatch");
  }
  if (auto why = m.violation()) {
    throw std::invalid_argument("map violates the exclusive law: " + *why);
  }
  const unsigned order = c.order();
  const auto pts = c.points();

  for (unsigned sa = 0; sa < order; ++sa) {
    for (unsigned sb = 0; sb < order; ++sb) {
      const unsigned ncs = m.map(sa, sb);
      for (unsigned sa2 = 0; sa2 < order; ++sa2) {
        const Complex da = pts[sa] - pts[sa2];
        for (unsigned sb2 = 0; sb2 < order; ++sb2) {
          if (m.map(sa2, sb2) == ncs) continue;
          Complex db = pts[sb] - pts[sb2];
          Complex ca = da, cb = db;
          // Canonical global sign: first nonzero of (re a, im a, re b, im b)
          // positive. Negation is exact, so duplicates collide bit-for-bit.
          double lead = ca.real() != 0.0 ? ca.real()
                        : ca.imag() != 0.0 ? ca.imag()
                        : cb.real() != 0.0 ? cb.real()
                                           : cb.imag();
          if (lead < 0.0) {
            ca = -ca;
            cb = -cb;
          }
          diffs_.push_back({ca.real(), ca.imag(), cb.real(), cb.imag()});
        }
      }
    }
  }
  auto key = [](const Diff& d) {
    return std::array<double, 4>{d.a_re, d.a_im, d.b_re, d.b_im};
  };
  std::sort(diffs_.begin(), diffs_.end(),
            [&](const Diff& x, const Diff& y) { return key(x) < key(y); });
  diffs_.erase(std::unique(diffs_.begin(), diffs_.end(),
                           [&](const Diff& x, const Diff& y) { return key(x) == key(y); }),
               diffs_.end());
}

double ClusterDifferenceProfile::min_distance_sq(std::span<const Complex> col_a,
                                                 std::span<const Complex> col_b) const {
  const std::size_t rows = col_a.size();
  double best = std::numeric_limits<double>::infinity();
  for (const Diff& d : diffs_) {
    double sq = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double ar = col_a[r].real(), ai = col_a[r].imag();
      const double br = col_b[r].real(), bi = col_b[r].imag();
      const double re = ar * d.a_re - ai * d.a_im + br * d.b_re - bi * d.b_im;
      const double im = ar * d.a_im + ai * d.a_re + br * d.b_im + bi * d.b_re;
      sq += re * re + im * im;
    }
    if (sq < best) best = sq;
  }
  return best;
}

}  // namespace pncsim
