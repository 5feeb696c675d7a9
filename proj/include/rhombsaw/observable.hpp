#pragma once

// Parafermionic observable on parallelogram domains and the identities it
// implies: the rhombus relation, the parallelogram identity, strip limits and
// the bridge bounds.

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "rhombsaw/enumerate.hpp"
#include "rhombsaw/geometry.hpp"
#include "rhombsaw/graph.hpp"
#include "rhombsaw/weights.hpp"

namespace rhombsaw {

// F_a(z) = sum over walks a -> z inside the domain of weight * exp(-i sigma W).
class ObservableTable {
 public:
  ObservableTable(ParallelogramDomain domain, double sigma, std::vector<Complex> values,
                  std::shared_ptr<const LatticeGraph> graph);

  const ParallelogramDomain& domain() const { return domain_; }
  MidEdge origin() const { return domain_.origin(); }
  double sigma() const { return sigma_; }

  // Throws std::out_of_range for mid-edges outside V(Omega).
  Complex at(const MidEdge& z) const;
  std::vector<std::pair<MidEdge, Complex>> entries() const;

 private:
  ParallelogramDomain domain_;
  double sigma_;
  std::vector<Complex> values_;
  std::shared_ptr<const LatticeGraph> graph_;
};

ObservableTable observable(const ParallelogramDomain& domain, double sigma, const WeightSet& w,
                           EnumerateOptions options = {});

// F(z_SE) + e^{i theta} F(z_NE) - F(z_NW) - e^{i theta} F(z_SW) with
// z_SE, z_NE, z_NW, z_SW the bottom, right, top and left sides of r: the
// counter-clockwise contour sum of F around r. Throws std::out_of_range when r
// is not inside the domain.
Complex cr_residual(const ObservableTable& table, const Rhombus& r);
double max_cr_residual(const ObservableTable& table);

// Contour sum of F along the boundary of the domain, divided by i times the
// initial direction of the walks. It equals the sum of all rhombus residuals
// (up to that factor). At sigma = 5/8 its real part is
//   c_alpha A + B + c_delta D + c_epsilon E - 1;
// the imaginary part is reported as a diagnostic only.
Complex boundary_relation(const ObservableTable& table);

struct ParallelogramCoefficients {
  double alpha;
  double delta;
  double epsilon;
};
ParallelogramCoefficients parallelogram_coefficients(const LatticeAngle& theta);

// Weight sums of non-empty walks from a to each side. The empty walk is not
// part of A; it is the 1 on the right-hand side of the parallelogram identity.
struct StripSums {
  int T = 0;
  int L = 0;
  double theta = 0;
  double x = 0;
  double A = 0;
  double B = 0;
  double D = 0;
  double E = 0;
};

StripSums strip_sums(int T, int L, double x, const LatticeAngle& theta,
                     EnumerateOptions options = {});

// c_alpha A + B + c_delta D + c_epsilon E.
double parallelogram_lhs(const StripSums& s, const LatticeAngle& theta);

// |c_alpha A + B + c_delta D + c_epsilon E - 1| at x = x_c = u1.
double parallelogram_identity_residual(int T, int L, const LatticeAngle& theta,
                                       EnumerateOptions options = {});

struct StripLimits {
  int T = 0;
  double x = 0;
  double c_T = 0;                 // v^{T-1} min(u1, u2) at fugacity x
  std::vector<StripSums> by_L;    // L = 0 .. L_max
  std::vector<double> tail;       // E_{T,L} + D_{T,L}
  std::vector<double> growth_margin;  // A_{T,L+1} - A_{T,L} - c_T (E_{T,L} + D_{T,L})
  double A_T = 0;                 // A_{T,L_max}, a lower bound of the limit
  double B_T = 0;                 // B_{T,L_max}, a lower bound of the limit
  // c_alpha A_T + B_T - 1 = -(c_delta D + c_epsilon E) at L_max (x = x_c only)
  double strip_relation_defect = 0;

  bool tail_strictly_decreasing() const;
  bool growth_holds() const;
  bool monotone_in_L() const;
};

StripLimits strip_limits(int T, double x, const LatticeAngle& theta, int L_max,
                         EnumerateOptions options = {});

struct BridgeReport {
  double theta = 0;
  double c = 0;                  // x_c u2 / c_alpha
  std::vector<int> L_used;       // per T
  std::vector<double> B;         // B_T(x_c) approximations, T = 1 .. T_max
  std::vector<double> harmonic_bound;   // min(B_1, c) / T
  std::vector<double> recursion_bound;  // lower bound on B_{T+1} from B_T; [0] unused
  double subcritical_ratio = 0;  // x / x_c used for the decay check
  std::vector<double> B_subcritical;  // B_T(x) at x = ratio * x_c

  bool harmonic_holds() const;
  bool recursion_holds() const;
  bool decay_holds() const;
};

// B_T is approximated by B_{T,L} with L = L_max[T-1].
BridgeReport bridge_chain_check(const LatticeAngle& theta, const std::vector<int>& L_max,
                                double subcritical_ratio = 0.8, EnumerateOptions options = {});

}  // namespace rhombsaw
