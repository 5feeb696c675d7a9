#include "rhombsaw/weights.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rhombsaw/error.hpp"

namespace rhombsaw {

namespace {

constexpr double kDegenerate = 1e-14;

// One local equation as  constant + sum_k coeff[k] * weight[k].
struct LinearForm {
  Complex constant{0, 0};
  std::array<Complex, 5> coeff{};

  Complex eval(const std::array<double, 5>& x) const {
    Complex r = constant;
    for (int k = 0; k < 5; ++k) r += coeff[k] * x[k];
    return r;
  }
};

enum { kU1 = 0, kU2, kV, kW1, kW2 };

// The four rhombus equations with lambda = e^{-i sigma theta},
// mu = e^{-i sigma pi}. `conj` flips every phase but leaves the weights alone.
std::array<LinearForm, 4> local_forms(double sigma, double theta, bool conj) {
  const double sgn = conj ? -1.0 : 1.0;
  const Complex lambda = std::polar(1.0, -sgn * sigma * theta);
  const Complex mu = std::polar(1.0, -sgn * sigma * kPi);
  const Complex e = std::polar(1.0, sgn * theta);
  const Complex mub = std::conj(mu);

  std::array<LinearForm, 4> f{};
  f[0].constant = 1.0;
  f[0].coeff[kU2] = lambda * mub * e;
  f[0].coeff[kV] = -1.0;
  f[0].coeff[kU1] = -lambda * e;

  f[1].coeff[kV] = lambda * mub * mub * e;
  f[1].coeff[kU2] = -mu;
  f[1].coeff[kW2] = -lambda * e;

  f[2].coeff[kV] = -lambda * mu * e;
  f[2].coeff[kU1] = -mub;
  f[2].coeff[kW1] = lambda * mub * e;

  f[3].coeff[kU2] = -lambda * mu * e;
  f[3].coeff[kW2] = -mu * mu;
  f[3].coeff[kU1] = lambda * mub * mub * e;
  f[3].coeff[kW1] = -mub * mub;
  return f;
}

WeightSet make(std::array<double, 5> x, const LatticeAngle& theta, WeightFamily family) {
  WeightSet w;
  w.u1 = x[kU1];
  w.u2 = x[kU2];
  w.v = x[kV];
  w.w1 = x[kW1];
  w.w2 = x[kW2];
  w.theta = theta;
  w.family = family;
  return w;
}

}  // namespace

double WeightSet::max_abs_difference(const WeightSet& other) const {
  const auto a = as_array();
  const auto b = other.as_array();
  double d = 0;
  for (int k = 0; k < 5; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

WeightSet critical_weights(const LatticeAngle& theta) {
  const double q = 3 * theta.radians() / 8;
  const double s54 = std::sin(5 * kPi / 4);
  const double den = std::sin(5 * kPi / 4 + q) * std::sin(5 * kPi / 8 - q);
  if (std::abs(den) < kDegenerate) throw DomainError("critical weights: vanishing denominator");
  return make({s54 * std::sin(5 * kPi / 8 + q) / den,
               s54 * std::sin(q) / den,
               std::sin(5 * kPi / 8 + q) * std::sin(-q) / den,
               std::sin(5 * kPi / 8 + q) * std::sin(5 * kPi / 4 - q) / den,
               std::sin(15 * kPi / 8 + q) * std::sin(-q) / den},
              theta, SigmaFamily{5.0 / 8});
}

WeightSet sigma_weights(const LatticeAngle& theta, double sigma) {
  const double ell = 8 * sigma;
  const double rounded = std::round(ell);
  if (std::abs(ell - rounded) > 1e-12 || std::fmod(std::abs(rounded), 2.0) != 1.0) {
    throw DomainError("sigma must be l/8 with l odd, got " + std::to_string(sigma));
  }
  const double th = theta.radians();
  const double a = sigma - 1;
  const double t = std::sin(a * (kPi + th)) * std::sin(a * (2 * kPi - th));
  if (std::abs(t) < kDegenerate) throw DomainError("sigma weights: t vanishes");
  const double s2 = std::sin(2 * sigma * kPi);
  return make({s2 * std::sin(a * (kPi - th)) / t,
               s2 * std::sin(a * th) / t,
               std::sin(a * th) * std::sin(a * (kPi - th)) / t,
               std::sin(a * (kPi - th)) * std::sin(a * (2 * kPi + th)) / t,
               std::sin(a * th) * std::sin(a * (3 * kPi - th)) / t},
              theta, SigmaFamily{sigma});
}

WeightSet sigma_one_family(double u1, const LatticeAngle& theta) {
  return make({u1, 1 - u1, 0, u1, 1 - u1}, theta, SigmaOneFamily{u1});
}

double loop_fugacity(double s) {
  const double n = -2 * std::cos(4 * kPi * s / 3);
  // cos leaves ~1e-16 where n vanishes exactly
  return std::abs(n) < 1e-14 ? 0.0 : n;
}

OnWeights on_weights(const LatticeAngle& theta, double s) {
  const double th = theta.radians();
  const double sin_third = std::sin(kPi * s / 3);
  if (std::abs(sin_third) < kDegenerate) throw DomainError("O(n) weights: sin(pi s/3) vanishes");
  const double s23 = std::sin(2 * kPi * s / 3);
  const double t = s23 * s23 * s23 / sin_third +
                   std::sin((th - kPi / 3) * s) * std::sin((2 * kPi / 3 - th) * s);
  if (std::abs(t) < kDegenerate) throw DomainError("O(n) weights: t vanishes");
  const double a = std::sin((kPi - th) * s);
  const double b = std::sin(th * s);
  OnWeights out;
  out.weights = make({a * s23 / t,
                      b * s23 / t,
                      b * a / t,
                      std::sin((2 * kPi / 3 - th) * s) * a / t,
                      std::sin((th - kPi / 3) * s) * b / t},
                     theta, OnFamily{s});
  out.n = loop_fugacity(s);
  return out;
}

WeightSet at_fugacity(const WeightSet& critical, double x) {
  if (critical.u1 == 0) throw DomainError("fugacity scaling needs u1 != 0");
  const double r = x / critical.u1;
  WeightSet w = critical;
  w.u1 = x;
  w.u2 *= r;
  w.v *= r;
  w.w1 *= r * r;
  w.w2 *= r * r;
  w.family = CustomWeights{};
  return w;
}

WeightSet perturbed(const WeightSet& w, int which, double delta) {
  auto x = w.as_array();
  x.at(which) += delta;
  return make(x, w.theta, CustomWeights{});
}

double LocalResiduals::max_abs() const {
  double m = 0;
  for (const Complex& r : direct) m = std::max(m, std::abs(r));
  for (const Complex& r : conjugate) m = std::max(m, std::abs(r));
  return m;
}

LocalResiduals local_residuals(const WeightSet& w, double sigma, const LatticeAngle& theta) {
  const auto x = w.as_array();
  LocalResiduals r;
  const auto direct = local_forms(sigma, theta.radians(), false);
  const auto conj = local_forms(sigma, theta.radians(), true);
  for (int k = 0; k < 4; ++k) {
    r.direct[k] = direct[k].eval(x);
    r.conjugate[k] = conj[k].eval(x);
  }
  return r;
}

LocalSystemSolution solve_local_system(double sigma, const LatticeAngle& theta,
                                       double consistency_tol) {
  Eigen::Matrix<double, 16, 5> a;
  Eigen::Matrix<double, 16, 1> b;
  int row = 0;
  for (bool conj : {false, true}) {
    for (const LinearForm& f : local_forms(sigma, theta.radians(), conj)) {
      for (int k = 0; k < 5; ++k) {
        a(row, k) = f.coeff[k].real();
        a(row + 1, k) = f.coeff[k].imag();
      }
      b(row) = -f.constant.real();
      b(row + 1) = -f.constant.imag();
      row += 2;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd x = svd.solve(b);

  LocalSystemSolution out;
  out.rank = static_cast<int>(svd.rank());
  out.nullity = 5 - out.rank;
  out.residual_norm = (a * x - b).norm();
  for (int k = 0; k < 5; ++k) out.least_squares[k] = x(k);
  if (out.nullity > 0) {
    const Eigen::VectorXd n = svd.matrixV().col(out.rank);
    for (int k = 0; k < 5; ++k) out.null_direction[k] = n(k);
  }
  if (out.residual_norm < consistency_tol) {
    out.solution = make(out.least_squares, theta, SigmaFamily{sigma});
  }
  return out;
}

}  // namespace rhombsaw
