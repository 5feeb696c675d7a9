#pragma once

// Growth-constant estimates from exact c~_n and the honeycomb cross-check at
// theta = pi/3.

#include <cstdint>
#include <vector>

#include "rhombsaw/enumerate.hpp"
#include "rhombsaw/geometry.hpp"
#include "rhombsaw/weights.hpp"

namespace rhombsaw {

struct SeriesReport {
  double theta = 0;
  LengthRule rule;
  int n_max = 0;
  std::vector<double> c_tilde;          // n = 0 .. n_max
  std::vector<double> root_estimates;   // [n] = c~_n^{1/n}, n >= 1; [0] unused
  std::vector<double> ratio_estimates;  // [n] = c~_n / c~_{n-1}, n >= 1; [0] unused
  // Walks built from theta-arcs and straights only: b_n = b_{n-1} + r b_{n-s}
  // with s the straight length and r = v / u1^s. For the default rule
  // b_n = ((u1 + v)/u1)^n.
  std::vector<double> lower_sequence;
  std::vector<double> lower_bracket;    // [n] = b_n^{1/n}
  double upper_bracket = 0;             // c~_1
  double target = 0;                    // 1 / u1

  bool positive() const;
  bool lower_bound_holds() const;       // c~_n >= b_n
  bool bracket_holds() const;           // b_n^{1/n} <= c~_n^{1/n} <= c~_1
  // c~_{n+m} <= c~_n c~_m for 1 <= n, m and n + m <= max_sum.
  bool submultiplicative(int max_sum) const;
  // Last three ratio estimates closer to the target than the first one.
  bool ratios_approach_target() const;
};

SeriesReport series_report(const LatticeAngle& theta, const LengthRule& rule, int n_max,
                           MidEdge origin = H(0, 0), EnumerateOptions options = {});

// Honeycomb walks from the midpoint of a fixed edge: counts[n] is the number
// of vertex-self-avoiding walks visiting n vertices and ending at the midpoint
// of an edge outside one fixed class different from the start edge's class.
// The start edge's own midpoint is not a valid end. Own adjacency code, no
// shared geometry with the rhombic engine.
std::vector<std::uint64_t> honeycomb_mid_edge_counts(int n_max);

// Triangles of the pi/3 split visited by a walk, in order. A triangle is
// (rhombus, 0) for the half holding corner 0 and (rhombus, 1) for the other.
std::vector<std::pair<Rhombus, int>> triangle_image(const Walk& walk);

struct HoneycombRow {
  int n = 0;
  double weighted_sum = 0;      // sum of walk weights at exact rule-length n
  std::uint64_t oracle_count = 0;
  double expected = 0;          // u1^n * oracle_count
  double rel_error = 0;
};

struct HoneycombReport {
  double u1 = 0;
  std::vector<HoneycombRow> rows;
  std::uint64_t walks_checked = 0;   // images checked (walks without w2 states)
  std::uint64_t image_failures = 0;  // images that repeat a triangle or miss the rule length
  std::uint64_t w2_walks = 0;        // walks holding a double (pi - theta)-arc
  double w2_max_weight = 0;          // their largest |weight|, zero up to rounding

  double max_rel_error() const;
  bool ok(double tol = 1e-12) const;
};

HoneycombReport honeycomb_crosscheck(int n_max, EnumerateOptions options = {});

}  // namespace rhombsaw
