#include "rhombsaw/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "rhombsaw/error.hpp"

namespace rhombsaw {

namespace {
constexpr double kAngleSlack = 1e-12;
constexpr double kTurnTolerance = 1e-9;
}  // namespace

LatticeAngle::LatticeAngle(double theta) : theta_(theta) {
  if (!(theta >= kPi / 3 - kAngleSlack && theta <= 2 * kPi / 3 + kAngleSlack)) {
    throw DomainError("theta must lie in [pi/3, 2pi/3], got " + std::to_string(theta));
  }
}

LatticeAngle LatticeAngle::unrestricted(double theta) {
  if (!(theta > 0 && theta < kPi)) {
    throw DomainError("rhombus angle must lie in (0, pi), got " + std::to_string(theta));
  }
  return LatticeAngle(theta, Unchecked{});
}

bool LatticeAngle::admissible() const {
  return theta_ >= kPi / 3 - kAngleSlack && theta_ <= 2 * kPi / 3 + kAngleSlack;
}

std::string to_string(const MidEdge& m) {
  return std::to_string(m.i) + "," + std::to_string(m.j) + "," +
         (m.orient == Orient::H ? "H" : "V");
}

MidEdge Rhombus::side(int k) const {
  switch (k & 3) {
    case 0: return H(i, j);
    case 1: return V(i + 1, j);
    case 2: return H(i, j + 1);
    default: return V(i, j);
  }
}

std::array<MidEdge, 4> Rhombus::sides() const { return {side(0), side(1), side(2), side(3)}; }

std::optional<int> Rhombus::side_index(const MidEdge& m) const {
  for (int k = 0; k < 4; ++k) {
    if (side(k) == m) return k;
  }
  return std::nullopt;
}

std::array<Rhombus, 2> rhombi_of(const MidEdge& m) {
  if (m.orient == Orient::H) return {Rhombus{m.i, m.j - 1}, Rhombus{m.i, m.j}};
  return {Rhombus{m.i - 1, m.j}, Rhombus{m.i, m.j}};
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::ArcTheta: return "arc-theta";
    case StepKind::ArcPiMinusTheta: return "arc-pi-minus-theta";
    case StepKind::Straight: return "straight";
  }
  return "?";
}

SidePassage classify_passage(int from_side, int to_side) {
  if (from_side == to_side || from_side < 0 || from_side > 3 || to_side < 0 || to_side > 3) {
    throw GeometryError("invalid side pair");
  }
  SidePassage p;
  if ((from_side + 2) % 4 == to_side) return p;

  // s_k -> s_{k+1} goes around c_{k+1} clockwise; the reverse is counter-clockwise.
  int sign = 0;
  if ((from_side + 1) % 4 == to_side) {
    p.corner = to_side;
    sign = -1;
  } else {
    p.corner = from_side;
    sign = +1;
  }
  if (p.corner % 2 == 0) {
    p.kind = StepKind::ArcTheta;
    p.turn = {sign, 0};
  } else {
    p.kind = StepKind::ArcPiMinusTheta;
    p.turn = {-sign, sign};
  }
  return p;
}

Step make_step(const MidEdge& from, const MidEdge& to) {
  if (from == to) throw GeometryError("step endpoints coincide: " + to_string(from));
  for (const Rhombus& r : rhombi_of(from)) {
    auto a = r.side_index(from);
    auto b = r.side_index(to);
    if (a && b) return Step{r, from, to, classify_passage(*a, *b).kind};
  }
  throw GeometryError("no common rhombus for " + to_string(from) + " > " + to_string(to));
}

Point lattice_point(double x, double y, const LatticeAngle& theta) {
  const double t = theta.radians();
  return {x + y * std::cos(t), y * std::sin(t)};
}

Point embed(const MidEdge& m, const LatticeAngle& theta) {
  if (m.orient == Orient::H) return lattice_point(m.i + 0.5, m.j, theta);
  return lattice_point(m.i, m.j + 0.5, theta);
}

MidEdge nearest_mid_edge(Point p, const LatticeAngle& theta) {
  const double t = theta.radians();
  const double y = p.imag() / std::sin(t);
  const double x = p.real() - y * std::cos(t);
  const MidEdge h = H(static_cast<int>(std::floor(x)), static_cast<int>(std::lround(y)));
  const MidEdge v = V(static_cast<int>(std::lround(x)), static_cast<int>(std::floor(y)));
  return std::abs(embed(h, theta) - p) <= std::abs(embed(v, theta) - p) ? h : v;
}

Point inward_normal(const Rhombus& r, int k, const LatticeAngle& theta) {
  const std::array<Point, 4> c = {
      lattice_point(r.i, r.j, theta), lattice_point(r.i + 1, r.j, theta),
      lattice_point(r.i + 1, r.j + 1, theta), lattice_point(r.i, r.j + 1, theta)};
  const Point along = c[(k + 1) & 3] - c[k & 3];
  return along * Point(0, 1) / std::abs(along);
}

Point entry_direction(const MidEdge& m, const Rhombus& r, const LatticeAngle& theta) {
  auto k = r.side_index(m);
  if (!k) throw GeometryError(to_string(m) + " is not a side of the rhombus");
  return inward_normal(r, *k, theta);
}

double winding_increment(Point prev_direction, const Step& step, const LatticeAngle& theta) {
  auto from = step.rhombus.side_index(step.from);
  auto to = step.rhombus.side_index(step.to);
  if (!from || !to || *from == *to) throw GeometryError("step does not pass a single rhombus");
  const Point in = inward_normal(step.rhombus, *from, theta);
  if (std::real(prev_direction * std::conj(in)) <= 0) {
    throw GeometryError("step does not continue the crossing direction at " +
                        to_string(step.from));
  }
  const Point out = -inward_normal(step.rhombus, *to, theta);
  const double turn = std::arg(out / prev_direction);

  const double t = theta.radians();
  for (double admissible : {0.0, t, -t, kPi - t, t - kPi}) {
    if (std::abs(turn - admissible) < kTurnTolerance) return admissible;
  }
  throw GeometryError("inadmissible turn " + std::to_string(turn));
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Interior: return "interior";
    case Side::Alpha: return "alpha";
    case Side::Beta: return "beta";
    case Side::Delta: return "delta";
    case Side::Epsilon: return "epsilon";
  }
  return "?";
}

ParallelogramDomain::ParallelogramDomain(int T, int L, LatticeAngle theta)
    : T_(T), L_(L), theta_(theta) {
  if (T < 1) throw DomainError("parallelogram width T must be positive");
  if (L < 0) throw DomainError("parallelogram half-length L must be non-negative");
}

bool ParallelogramDomain::contains(const Rhombus& r) const {
  return r.i >= 0 && r.i < T_ && r.j >= -L_ && r.j <= L_;
}

bool ParallelogramDomain::contains(const MidEdge& m) const {
  const auto rs = rhombi_of(m);
  return contains(rs[0]) || contains(rs[1]);
}

Side ParallelogramDomain::side_of(const MidEdge& m) const {
  const auto rs = rhombi_of(m);
  const bool lo = contains(rs[0]);
  const bool hi = contains(rs[1]);
  if (lo == hi) return Side::Interior;  // both inside (or outside the domain)
  if (m.orient == Orient::V) return hi ? Side::Alpha : Side::Beta;
  return hi ? Side::Delta : Side::Epsilon;
}

std::vector<Rhombus> ParallelogramDomain::rhombi() const {
  std::vector<Rhombus> out;
  out.reserve(static_cast<std::size_t>(T_) * (2 * L_ + 1));
  for (int i = 0; i < T_; ++i) {
    for (int j = -L_; j <= L_; ++j) out.push_back({i, j});
  }
  return out;
}

std::vector<MidEdge> ParallelogramDomain::mid_edges() const {
  std::vector<MidEdge> out;
  for (const Rhombus& r : rhombi()) {
    for (const MidEdge& m : r.sides()) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {
std::vector<Step> candidates_filtered(const MidEdge& from, const ParallelogramDomain* domain) {
  std::vector<Step> out;
  for (const Rhombus& r : rhombi_of(from)) {
    if (domain && !domain->contains(r)) continue;
    const int k = *r.side_index(from);
    for (int d = 1; d <= 3; ++d) {
      const int exit = (k + d) & 3;
      out.push_back(Step{r, from, r.side(exit), classify_passage(k, exit).kind});
    }
  }
  std::sort(out.begin(), out.end(), [](const Step& a, const Step& b) {
    if (a.rhombus != b.rhombus) return a.rhombus < b.rhombus;
    return a.to < b.to;
  });
  return out;
}
}  // namespace

std::vector<Step> step_candidates(const MidEdge& from) { return candidates_filtered(from, nullptr); }

std::vector<Step> step_candidates(const MidEdge& from, const ParallelogramDomain& domain) {
  return candidates_filtered(from, &domain);
}

}  // namespace rhombsaw
