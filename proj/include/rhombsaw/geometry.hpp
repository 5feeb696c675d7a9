#pragma once

// Skewed square lattice with rhombic plaquettes of angles theta and pi-theta.
//
// Vertices sit at i*e1 + j*e2 with e1 = (1, 0) and e2 = (cos theta, sin theta).
// Rhombus R(i,j) has corners, counter-clockwise,
//   c0 = (i,j)     angle theta      ("SW")
//   c1 = (i+1,j)   angle pi-theta   ("SE")
//   c2 = (i+1,j+1) angle theta      ("NE")
//   c3 = (i,j+1)   angle pi-theta   ("NW")
// and sides s0 = H(i,j) (bottom), s1 = V(i+1,j) (right), s2 = H(i,j+1) (top),
// s3 = V(i,j) (left). Corner c_k sits between sides s_{k-1} and s_k.
//
// Walks live on mid-edges and cross every edge at a right angle. Turning is
// counter-clockwise positive.

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rhombsaw {

using Point = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

class LatticeAngle {
 public:
  // Throws DomainError unless pi/3 <= theta <= 2pi/3.
  explicit LatticeAngle(double theta);

  // Any rhombus angle in (0, pi). Used for hexagon rhombi and for evaluating
  // closed forms outside the admissible range.
  static LatticeAngle unrestricted(double theta);

  double radians() const { return theta_; }
  bool admissible() const;

 private:
  struct Unchecked {};
  LatticeAngle(double theta, Unchecked) : theta_(theta) {}
  double theta_;
};

enum class Orient : std::uint8_t { H, V };

struct MidEdge {
  int i = 0;
  int j = 0;
  Orient orient = Orient::H;

  friend auto operator<=>(const MidEdge&, const MidEdge&) = default;
};

inline MidEdge H(int i, int j) { return {i, j, Orient::H}; }
inline MidEdge V(int i, int j) { return {i, j, Orient::V}; }

std::string to_string(const MidEdge& m);

struct Rhombus {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const Rhombus&, const Rhombus&) = default;

  MidEdge side(int k) const;
  std::array<MidEdge, 4> sides() const;
  // Index of m among the sides, if it is one.
  std::optional<int> side_index(const MidEdge& m) const;
};

// The two rhombi sharing a mid-edge, in canonical (i, j) order.
std::array<Rhombus, 2> rhombi_of(const MidEdge& m);

enum class StepKind : std::uint8_t { ArcTheta, ArcPiMinusTheta, Straight };

const char* to_string(StepKind kind);

// Winding as an exact integer combination theta_units*theta + pi_units*pi.
struct Winding {
  int theta_units = 0;
  int pi_units = 0;

  double radians(double theta) const { return theta_units * theta + pi_units * kPi; }
  Winding& operator+=(const Winding& o) {
    theta_units += o.theta_units;
    pi_units += o.pi_units;
    return *this;
  }
  Winding& operator-=(const Winding& o) {
    theta_units -= o.theta_units;
    pi_units -= o.pi_units;
    return *this;
  }
  friend Winding operator+(Winding a, const Winding& b) { return a += b; }
  friend bool operator==(const Winding&, const Winding&) = default;
};

// Passage through one rhombus between two of its sides.
struct SidePassage {
  StepKind kind = StepKind::Straight;
  int corner = -1;  // surrounded corner for arcs, -1 for straight
  Winding turn;
};

// Classifies the passage entering through side `from_side` and leaving through
// `to_side` (distinct, 0..3). Even corners carry the theta angle.
SidePassage classify_passage(int from_side, int to_side);

struct Step {
  Rhombus rhombus;
  MidEdge from;
  MidEdge to;
  StepKind kind = StepKind::Straight;

  int from_side() const { return *rhombus.side_index(from); }
  int to_side() const { return *rhombus.side_index(to); }
  Winding turn() const { return classify_passage(from_side(), to_side()).turn; }

  friend bool operator==(const Step&, const Step&) = default;
};

// Builds the step from `from` to `to` through their common rhombus. Throws
// GeometryError when the two mid-edges do not share a rhombus or coincide.
Step make_step(const MidEdge& from, const MidEdge& to);

// ---- embedding --------------------------------------------------------

Point lattice_point(double x, double y, const LatticeAngle& theta);
Point embed(const MidEdge& m, const LatticeAngle& theta);
MidEdge nearest_mid_edge(Point p, const LatticeAngle& theta);

// Unit normal of side k of r pointing into r.
Point inward_normal(const Rhombus& r, int k, const LatticeAngle& theta);

// Direction of a walk leaving `m` into rhombus r (r must contain m).
Point entry_direction(const MidEdge& m, const Rhombus& r, const LatticeAngle& theta);

// Signed turn made by `step` for a walk currently crossing step.from with
// direction prev_direction. Computed from the embedding and checked against the
// admissible values {0, +-theta, +-(pi-theta)}; throws GeometryError otherwise.
double winding_increment(Point prev_direction, const Step& step,
                         const LatticeAngle& theta);

// ---- finite domains ---------------------------------------------------

enum class Side : std::uint8_t { Interior, Alpha, Beta, Delta, Epsilon };

const char* to_string(Side side);

// Parallelogram of (2L+1) x T rhombi R(i,j), 0 <= i < T, -L <= j <= L.
// alpha is the left side (x = 0, along e2) and carries the origin a = V(0,0)
// in its middle; beta is the right side; delta the bottom side (along e1);
// epsilon the top side. Walks from a start perpendicular to alpha.
class ParallelogramDomain {
 public:
  ParallelogramDomain(int T, int L, LatticeAngle theta);

  int T() const { return T_; }
  int L() const { return L_; }
  const LatticeAngle& theta() const { return theta_; }
  MidEdge origin() const { return V(0, 0); }
  Rhombus origin_rhombus() const { return {0, 0}; }

  bool contains(const Rhombus& r) const;
  bool contains(const MidEdge& m) const;
  // Side of a mid-edge of V(Omega); Interior for non-boundary mid-edges.
  Side side_of(const MidEdge& m) const;

  std::vector<Rhombus> rhombi() const;
  std::vector<MidEdge> mid_edges() const;

 private:
  int T_;
  int L_;
  LatticeAngle theta_;
};

std::vector<Step> step_candidates(const MidEdge& from);
std::vector<Step> step_candidates(const MidEdge& from, const ParallelogramDomain& domain);

}  // namespace rhombsaw
