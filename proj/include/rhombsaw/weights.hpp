#pragma once

// Integrable plaquette weights: the critical family, the sigma = l/8 family,
// the v = 0 family at sigma = 1, and the O(n) family; plus the local linear
// relations that make the observable satisfy the rhombus relation.

#include <array>
#include <complex>
#include <optional>
#include <variant>

#include "rhombsaw/geometry.hpp"

namespace rhombsaw {

using Complex = std::complex<double>;

struct SigmaFamily {
  double sigma;
};
struct SigmaOneFamily {
  double u1;
};
struct OnFamily {
  double s;
};
struct CustomWeights {};

using WeightFamily = std::variant<SigmaFamily, SigmaOneFamily, OnFamily, CustomWeights>;

struct WeightSet {
  double u1 = 0;  // one theta-arc
  double u2 = 0;  // one (pi - theta)-arc
  double v = 0;   // straight crossing
  double w1 = 0;  // two theta-arcs
  double w2 = 0;  // two (pi - theta)-arcs
  LatticeAngle theta = LatticeAngle(kPi / 2);
  WeightFamily family = CustomWeights{};

  std::array<double, 5> as_array() const { return {u1, u2, v, w1, w2}; }
  double max_abs_difference(const WeightSet& other) const;
};

// Closed-form critical weights for self-avoiding walks (spin 5/8).
WeightSet critical_weights(const LatticeAngle& theta);

// Weights for spin sigma = l/8, l odd. Throws DomainError for other sigma or
// a vanishing denominator.
WeightSet sigma_weights(const LatticeAngle& theta, double sigma);

// v = 0 family at sigma = 1: u2 = 1 - u1, w1 = u1, w2 = u2.
WeightSet sigma_one_family(double u1, const LatticeAngle& theta = LatticeAngle(kPi / 2));

struct OnWeights {
  WeightSet weights;
  double n = 0;  // loop fugacity -2 cos(4 pi s / 3)
};

// O(n) weights for parameter s; the matching spin is sigma = s + 1.
OnWeights on_weights(const LatticeAngle& theta, double s);

double loop_fugacity(double s);

// Weights at fugacity x with x_c = u1: u1 -> x, u2, v scale by x/x_c and
// w1, w2 by (x/x_c)^2.
WeightSet at_fugacity(const WeightSet& critical, double x);

// Same weights with one entry (0..4 in u1, u2, v, w1, w2 order) shifted.
WeightSet perturbed(const WeightSet& w, int which, double delta);

struct LocalResiduals {
  std::array<Complex, 4> direct;      // the four local equations
  std::array<Complex, 4> conjugate;   // the same with all phases conjugated

  double max_abs() const;
};

LocalResiduals local_residuals(const WeightSet& w, double sigma, const LatticeAngle& theta);

struct LocalSystemSolution {
  std::optional<WeightSet> solution;   // present when the system is consistent
  std::array<double, 5> least_squares{};  // minimum-norm least-squares point
  double residual_norm = 0;
  int rank = 0;
  int nullity = 0;
  std::array<double, 5> null_direction{};  // first null vector when nullity > 0
};

// Solves the eight local equations (sixteen real rows) for the five weights.
LocalSystemSolution solve_local_system(double sigma, const LatticeAngle& theta,
                                       double consistency_tol = 1e-9);

}  // namespace rhombsaw
