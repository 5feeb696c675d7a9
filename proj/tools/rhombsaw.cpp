// rhombsaw: command-line front end for the rhombic-lattice walk library.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_util.hpp"
#include "rhombsaw/enumerate.hpp"
#include "rhombsaw/error.hpp"
#include "rhombsaw/geometry.hpp"
#include "rhombsaw/loops.hpp"
#include "rhombsaw/observable.hpp"
#include "rhombsaw/series.hpp"
#include "rhombsaw/version.hpp"
#include "rhombsaw/weights.hpp"

using namespace rhombsaw;
using cli::Cell;
using cli::Table;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

const char* kExitHelp =
    "Exit codes: 0 success, 1 a verification check failed, 2 invalid configuration,\n"
    "3 enumeration budget exceeded. Default thread count comes from RHOMBSAW_THREADS.";

struct Common {
  std::string theta = "pi/2";
  std::string format = "csv";
  std::string output = "-";
  int threads = 1;
  std::uint64_t max_walks = 0;
  bool timestamp = false;
};

int default_threads() {
  if (const char* env = std::getenv("RHOMBSAW_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_angles(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(cli::parse_angle(t));
  return out;
}

LengthRule parse_rule(const std::string& text) {
  if (text == "arcs") return LengthRule::arcs();
  if (text == "honeycomb") return LengthRule::honeycomb();
  LengthRule r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.theta_arc >> c1 >> r.pi_minus_theta_arc >> c2 >> r.straight) || c1 != ',' ||
      c2 != ',' || !in.eof()) {
    throw ConfigError("rule must be 'arcs', 'honeycomb' or 'a,b,c', got '" + text + "'");
  }
  r.validate();
  return r;
}

std::string rule_text(const LengthRule& r) {
  return std::to_string(r.theta_arc) + "," + std::to_string(r.pi_minus_theta_arc) + "," +
         std::to_string(r.straight);
}

bool is_odd_eighth(double sigma) {
  const double l = sigma * 8;
  const double r = std::round(l);
  return std::abs(l - r) < 1e-12 && static_cast<long long>(std::abs(r)) % 2 == 1;
}

// One subcommand: fills the table and meta, returns whether all checks passed.
struct Command {
  CLI::App* app = nullptr;
  Common common;
  std::function<bool(Table&, json&)> run;
  std::vector<std::string> summary;  // lines echoed to stderr
};

void add_common(Command& c, bool with_theta = true) {
  if (with_theta) {
    c.app->add_option("--theta", c.common.theta, "Lattice angle, radians or e.g. pi/3, 2pi/3")
        ->capture_default_str();
  }
  c.app->add_option("--format", c.common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c.app->add_option("-o,--output", c.common.output, "Output path, - for stdout")
      ->capture_default_str();
  c.common.threads = default_threads();
  c.app->add_option("--threads", c.common.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c.app->add_option("--max-walks", c.common.max_walks, "Walk budget per enumeration, 0 for none")
      ->capture_default_str();
  c.app->add_flag("--timestamp", c.common.timestamp, "Stamp the output with the run time");
}

EnumerateOptions options_of(const Common& c) {
  EnumerateOptions o;
  o.threads = c.threads;
  o.max_walks = c.max_walks;
  return o;
}

LatticeAngle lattice_angle(const std::string& text) {
  const double t = cli::parse_angle(text);
  try {
    return LatticeAngle(t);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("theta: ") + e.what());
  }
}

void weight_row(Table& t, const std::string& family, double theta, Cell param, const WeightSet& w,
                Cell residual) {
  t.add({family, theta, param, w.u1, w.u2, w.v, w.w1, w.w2, 1 / w.u1, w.u1 * w.u1 - w.w1,
         w.u2 * w.u2 - w.w2, residual});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted self-avoiding walks on the rhombic lattice."};
  app.footer(kExitHelp);
  app.require_subcommand(1);
  std::map<std::string, Command> commands;

  // ---- weights ------------------------------------------------------------
  {
    Command& c = commands["weights"];
    c.app = app.add_subcommand("weights", "Plaquette weights of every family and their local residuals");
    c.app->footer(
        "Columns: family,theta,param,u1,u2,v,w1,w2,inv_u1,u1sq_minus_w1,u2sq_minus_w2,local_residual\n"
        "param is sigma (critical, sigma), u1 (sigma-one) or s (on). The residual is the largest\n"
        "local relation residual at the family's spin; it is blank for O(n) weights with n != 0.");
    add_common(c);
    auto family = std::make_shared<std::string>("all");
    auto sigma = std::make_shared<double>(0.625);
    auto u1 = std::make_shared<double>(0.3);
    auto s = std::make_shared<double>(-0.375);
    c.app->add_option("--family", *family, "Weight family")
        ->check(CLI::IsMember({"all", "critical", "sigma", "sigma-one", "on"}))
        ->capture_default_str();
    c.app->add_option("--sigma", *sigma, "Spin for the sigma family (odd multiple of 1/8)")
        ->capture_default_str();
    c.app->add_option("--u1", *u1, "u1 for the sigma-one family")->capture_default_str();
    c.app->add_option("--s", *s, "Parameter of the O(n) family")->capture_default_str();
    c.run = [&c, family, sigma, u1, s](Table& t, json&) {
      t.columns = {"family", "theta", "param", "u1", "u2", "v", "w1", "w2", "inv_u1",
                   "u1sq_minus_w1", "u2sq_minus_w2", "local_residual"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      const double r = th.radians();
      bool ok = true;
      auto want = [&](const char* f) { return *family == "all" || *family == f; };
      auto check = [&](double res) {
        ok = ok && res < 1e-12;
        return res;
      };
      if (want("critical")) {
        const WeightSet w = critical_weights(th);
        weight_row(t, "critical", r, 0.625, w, check(local_residuals(w, 0.625, th).max_abs()));
      }
      if (want("sigma")) {
        WeightSet w;
        try {
          w = sigma_weights(th, *sigma);
        } catch (const DomainError& e) {
          throw ConfigError(e.what());
        }
        weight_row(t, "sigma", r, *sigma, w, check(local_residuals(w, *sigma, th).max_abs()));
      }
      if (want("sigma-one")) {
        const WeightSet w = sigma_one_family(*u1, th);
        weight_row(t, "sigma-one", r, *u1, w, check(local_residuals(w, 1.0, th).max_abs()));
      }
      if (want("on")) {
        OnWeights on;
        try {
          on = on_weights(th, *s);
        } catch (const DomainError& e) {
          throw ConfigError(e.what());
        }
        Cell res;
        if (on.n == 0) res = check(local_residuals(on.weights, *s + 1, th).max_abs());
        weight_row(t, "on", r, *s, on.weights, res);
      }
      return ok;
    };
  }

  // ---- verify-local -------------------------------------------------------
  {
    Command& c = commands["verify-local"];
    c.app = app.add_subcommand("verify-local", "Local relation residuals over a theta grid");
    c.app->footer("Columns: theta,family,sigma,param,max_residual");
    add_common(c, false);
    auto tmin = std::make_shared<std::string>("pi/3");
    auto tmax = std::make_shared<std::string>("2pi/3");
    auto points = std::make_shared<int>(13);
    auto sigmas = std::make_shared<std::vector<double>>(std::vector<double>{0.625});
    auto u1s = std::make_shared<std::vector<double>>(std::vector<double>{0.2, 0.3, 0.5});
    auto tol = std::make_shared<double>(1e-12);
    c.app->add_option("--theta-min", *tmin, "Smallest angle")->capture_default_str();
    c.app->add_option("--theta-max", *tmax, "Largest angle")->capture_default_str();
    c.app->add_option("--points", *points, "Grid points")->check(CLI::Range(1, 100000))->capture_default_str();
    c.app->add_option("--sigma", *sigmas, "Spins of the sigma family")->delimiter(',')->capture_default_str();
    c.app->add_option("--u1", *u1s, "u1 values of the sigma-one family")->delimiter(',')->capture_default_str();
    c.app->add_option("--tol", *tol, "Residual tolerance")->capture_default_str();
    c.run = [&c, tmin, tmax, points, sigmas, u1s, tol](Table& t, json&) {
      t.columns = {"theta", "family", "sigma", "param", "max_residual"};
      const double a = lattice_angle(*tmin).radians(), b = lattice_angle(*tmax).radians();
      bool ok = true;
      for (int k = 0; k < *points; ++k) {
        const double th = *points == 1 ? a : a + (b - a) * k / (*points - 1);
        const LatticeAngle angle(th);
        for (double sg : *sigmas) {
          WeightSet w;
          try {
            w = sigma_weights(angle, sg);
          } catch (const DomainError& e) {
            throw ConfigError(e.what());
          }
          const double res = local_residuals(w, sg, angle).max_abs();
          ok = ok && res < *tol;
          t.add({th, std::string("sigma"), sg, sg, res});
        }
        for (double u : *u1s) {
          const double res = local_residuals(sigma_one_family(u, angle), 1.0, angle).max_abs();
          ok = ok && res < *tol;
          t.add({th, std::string("sigma-one"), 1.0, u, res});
        }
      }
      return ok;
    };
  }

  // ---- solve-system -------------------------------------------------------
  {
    Command& c = commands["solve-system"];
    c.app = app.add_subcommand("solve-system", "Least-squares solve of the local relations for the weights");
    c.app->footer(
        "Columns: theta,sigma,rank,nullity,residual_norm,consistent,u1,u2,v,w1,w2,closed_form_error\n"
        "u1..w2 are the minimum-norm least-squares weights. closed_form_error compares them with\n"
        "the closed forms when sigma is an odd multiple of 1/8 and the system is consistent; a\n"
        "mismatch above 1e-9 fails the run.");
    add_common(c);
    auto sigmas = std::make_shared<std::vector<double>>(std::vector<double>{0.375, 0.625, 0.875, 1.0, 0.7});
    c.app->add_option("--sigma", *sigmas, "Spins to scan")->delimiter(',')->capture_default_str();
    c.run = [&c, sigmas](Table& t, json&) {
      t.columns = {"theta", "sigma", "rank", "nullity", "residual_norm", "consistent",
                   "u1", "u2", "v", "w1", "w2", "closed_form_error"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      bool ok = true;
      for (double sg : *sigmas) {
        const auto sol = solve_local_system(sg, th);
        Cell err;
        if (sol.solution && is_odd_eighth(sg)) {
          try {
            const double e = sol.solution->max_abs_difference(sigma_weights(th, sg));
            ok = ok && e < 1e-9;
            err = e;
          } catch (const DomainError&) {
          }
        }
        const auto& x = sol.least_squares;
        t.add({th.radians(), sg, static_cast<long long>(sol.rank), static_cast<long long>(sol.nullity),
               sol.residual_norm, static_cast<long long>(sol.solution ? 1 : 0), x[0], x[1], x[2], x[3],
               x[4], err});
      }
      return ok;
    };
  }

  // ---- verify-cr ----------------------------------------------------------
  {
    Command& c = commands["verify-cr"];
    c.app = app.add_subcommand("verify-cr", "Rhombus relation residuals of the observable on a domain");
    c.app->footer(
        "Columns: i,j,re,im,abs,scale\n"
        "scale is max |F| over the domain. A rhombus passes when abs <= tol * max(1, scale).");
    add_common(c);
    auto T = std::make_shared<int>(2);
    auto L = std::make_shared<int>(1);
    auto family = std::make_shared<std::string>("critical");
    auto sigma = std::make_shared<double>(0.625);
    auto u1 = std::make_shared<double>(0.3);
    auto tol = std::make_shared<double>(1e-10);
    c.app->add_option("--T", *T, "Domain width")->check(CLI::Range(1, 64))->capture_default_str();
    c.app->add_option("--L", *L, "Domain half height")->check(CLI::Range(0, 64))->capture_default_str();
    c.app->add_option("--family", *family, "Weight family")
        ->check(CLI::IsMember({"critical", "sigma", "sigma-one"}))
        ->capture_default_str();
    c.app->add_option("--sigma", *sigma, "Spin for the sigma family")->capture_default_str();
    c.app->add_option("--u1", *u1, "u1 for the sigma-one family")->capture_default_str();
    c.app->add_option("--tol", *tol, "Relative tolerance")->capture_default_str();
    c.run = [&c, T, L, family, sigma, u1, tol](Table& t, json& meta) {
      t.columns = {"i", "j", "re", "im", "abs", "scale"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      WeightSet w;
      double sg = 0.625;
      try {
        if (*family == "critical") {
          w = critical_weights(th);
        } else if (*family == "sigma") {
          w = sigma_weights(th, *sigma);
          sg = *sigma;
        } else {
          w = sigma_one_family(*u1, th);
          sg = 1.0;
        }
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
      const ParallelogramDomain d(*T, *L, th);
      const ObservableTable table = observable(d, sg, w, options_of(c.common));
      double scale = 0;
      for (const auto& [z, v] : table.entries()) scale = std::max(scale, std::abs(v));
      bool ok = true;
      double worst = 0;
      for (const Rhombus& r : d.rhombi()) {
        const Complex res = cr_residual(table, r);
        ok = ok && std::abs(res) <= *tol * std::max(1.0, scale);
        worst = std::max(worst, std::abs(res));
        t.add({static_cast<long long>(r.i), static_cast<long long>(r.j), res.real(), res.imag(),
               std::abs(res), scale});
      }
      meta["max_residual"] = worst;
      c.summary.push_back("max residual " + cli::format_double(worst) + ", scale " +
                          cli::format_double(scale));
      return ok;
    };
  }

  // ---- parallelogram ------------------------------------------------------
  {
    Command& c = commands["parallelogram"];
    c.app = app.add_subcommand("parallelogram", "Parallelogram identity residuals over a (T, L) grid");
    c.app->footer(
        "Columns: T,L,theta,x,A,B,D,E,residual\n"
        "A, B, D, E sum non-empty walks from the origin to the left, right, bottom and top sides;\n"
        "residual = |c_alpha A + B + c_delta D + c_epsilon E - 1|. Without --T/--L every (T, L)\n"
        "with (2L+1) T <= --cells is run. The tolerance applies only at x = x_c.");
    add_common(c);
    auto T = std::make_shared<int>(0);
    auto L = std::make_shared<int>(-1);
    auto cells = std::make_shared<int>(12);
    auto xr = std::make_shared<double>(1.0);
    auto tol = std::make_shared<double>(1e-10);
    c.app->add_option("--T", *T, "Domain width")->check(CLI::Range(1, 64));
    c.app->add_option("--L", *L, "Domain half height")->check(CLI::Range(0, 64));
    c.app->add_option("--cells", *cells, "Rhombus budget for the grid")->check(CLI::Range(1, 40))->capture_default_str();
    c.app->add_option("--x-over-xc", *xr, "Fugacity relative to x_c")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c.app->add_option("--tol", *tol, "Residual tolerance")->capture_default_str();
    c.run = [&c, T, L, cells, xr, tol](Table& t, json&) {
      t.columns = {"T", "L", "theta", "x", "A", "B", "D", "E", "residual"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      const double x = *xr * critical_weights(th).u1;
      std::vector<std::pair<int, int>> grid;
      if ((*T > 0) != (*L >= 0)) throw ConfigError("--T and --L go together");
      if (*T > 0) {
        grid.emplace_back(*T, *L);
      } else {
        for (int tt = 1; tt <= *cells; ++tt) {
          for (int ll = 0; (2 * ll + 1) * tt <= *cells; ++ll) grid.emplace_back(tt, ll);
        }
      }
      bool ok = true;
      for (const auto& [tt, ll] : grid) {
        const StripSums s = strip_sums(tt, ll, x, th, options_of(c.common));
        const double res = std::abs(parallelogram_lhs(s, th) - 1.0);
        if (*xr == 1.0) ok = ok && res < *tol;
        t.add({static_cast<long long>(tt), static_cast<long long>(ll), th.radians(), x, s.A, s.B,
               s.D, s.E, res});
      }
      return ok;
    };
  }

  // ---- strip --------------------------------------------------------------
  {
    Command& c = commands["strip"];
    c.app = app.add_subcommand("strip", "Strip sums, the tail inequality and the bridge bounds");
    c.app->footer(
        "Columns: T,L,theta,x,A,B,D,E,tail,growth_margin\n"
        "tail = D + E; growth_margin = A(L+1) - A(L) - c_T tail(L), blank at the last L.\n"
        "Checks: tail strictly decreasing, growth_margin >= 0, A and B non-decreasing in L; at\n"
        "x = x_c also B_T >= min(B_1, c)/T, the recursion bound on B_{T+1} and\n"
        "B_T(ratio x_c) <= ratio^T. Results of the bridge checks go to stderr and JSON meta.");
    add_common(c);
    auto Ts = std::make_shared<std::vector<int>>(std::vector<int>{1, 2, 3});
    auto Ls = std::make_shared<std::vector<int>>(std::vector<int>{8, 4, 3});
    auto xr = std::make_shared<double>(1.0);
    auto ratio = std::make_shared<double>(0.8);
    c.app->add_option("--T", *Ts, "Widths")->delimiter(',')->capture_default_str();
    c.app->add_option("--L-max", *Ls, "Height budget per width")->delimiter(',')->capture_default_str();
    c.app->add_option("--x-over-xc", *xr, "Fugacity relative to x_c")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c.app->add_option("--ratio", *ratio, "x / x_c for the decay check")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c.run = [&c, Ts, Ls, xr, ratio](Table& t, json& meta) {
      t.columns = {"T", "L", "theta", "x", "A", "B", "D", "E", "tail", "growth_margin"};
      if (Ts->size() != Ls->size()) throw ConfigError("--T and --L-max need the same length");
      for (int v : *Ts) if (v < 1) throw ConfigError("widths must be positive");
      for (int v : *Ls) if (v < 0) throw ConfigError("heights must be non-negative");
      const LatticeAngle th = lattice_angle(c.common.theta);
      const double x = *xr * critical_weights(th).u1;
      bool ok = true;
      json checks = json::array();
      for (std::size_t k = 0; k < Ts->size(); ++k) {
        const StripLimits lim = strip_limits((*Ts)[k], x, th, (*Ls)[k], options_of(c.common));
        for (std::size_t l = 0; l < lim.by_L.size(); ++l) {
          const StripSums& s = lim.by_L[l];
          Cell margin;
          if (l < lim.growth_margin.size()) margin = lim.growth_margin[l];
          t.add({static_cast<long long>(s.T), static_cast<long long>(s.L), s.theta, s.x, s.A, s.B,
                 s.D, s.E, lim.tail[l], margin});
        }
        const bool dec = lim.tail_strictly_decreasing(), eq = lim.growth_holds(), mono = lim.monotone_in_L();
        ok = ok && dec && eq && mono;
        checks.push_back({{"T", lim.T}, {"tail_decreasing", dec}, {"growth", eq}, {"monotone", mono}});
        c.summary.push_back("T=" + std::to_string(lim.T) + " tail decreasing " + (dec ? "yes" : "NO") +
                            ", growth " + (eq ? "yes" : "NO") + ", monotone " + (mono ? "yes" : "NO"));
      }
      meta["strip_checks"] = checks;
      if (*xr == 1.0) {
        std::vector<int> lmax(Ts->size());
        for (std::size_t k = 0; k < Ts->size(); ++k) {
          if ((*Ts)[k] != static_cast<int>(k) + 1) throw ConfigError("bridge checks need --T 1,2,...");
          lmax[k] = (*Ls)[k];
        }
        const BridgeReport b = bridge_chain_check(th, lmax, *ratio, options_of(c.common));
        ok = ok && b.harmonic_holds() && b.recursion_holds() && b.decay_holds();
        meta["bridge"] = {{"c", b.c},
                          {"B", b.B},
                          {"harmonic_bound", b.harmonic_bound},
                          {"recursion_bound", b.recursion_bound},
                          {"B_subcritical", b.B_subcritical},
                          {"harmonic_holds", b.harmonic_holds()},
                          {"recursion_holds", b.recursion_holds()},
                          {"decay_holds", b.decay_holds()}};
        c.summary.push_back(std::string("bridge: harmonic ") + (b.harmonic_holds() ? "yes" : "NO") +
                            ", recursion " + (b.recursion_holds() ? "yes" : "NO") + ", decay " +
                            (b.decay_holds() ? "yes" : "NO") + ", c = " + cli::format_double(b.c));
      }
      return ok;
    };
  }

  // ---- series -------------------------------------------------------------
  {
    Command& c = commands["series"];
    c.app = app.add_subcommand("series", "Exact c~_n and finite-n growth estimates");
    c.app->footer(
        "Columns: n,c_tilde,root_estimate,ratio_estimate,lower_bracket,upper_bracket,target\n"
        "root = c~_n^(1/n), ratio = c~_n / c~_{n-1} (blank at n = 0); lower_bracket = b_n^(1/n) for\n"
        "walks of theta-arcs and straights only; upper_bracket = c~_1; target = 1/u1.\n"
        "Fails when some c~_n <= 0 or c~_n < b_n, and, under the default rule, when a root\n"
        "estimate leaves the bracket.");
    add_common(c);
    auto n_max = std::make_shared<int>(12);
    auto rule = std::make_shared<std::string>("arcs");
    auto origin = std::make_shared<std::string>("H");
    c.app->add_option("--n-max", *n_max, "Largest length")->check(CLI::Range(0, 40))->capture_default_str();
    c.app->add_option("--rule", *rule, "Length rule: arcs, honeycomb or a,b,c")->capture_default_str();
    c.app->add_option("--origin", *origin, "Origin orientation")->check(CLI::IsMember({"H", "V"}))->capture_default_str();
    c.run = [&c, n_max, rule, origin](Table& t, json& meta) {
      t.columns = {"n", "c_tilde", "root_estimate", "ratio_estimate", "lower_bracket",
                   "upper_bracket", "target"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      const LengthRule r = parse_rule(*rule);
      const MidEdge o = *origin == "H" ? H(0, 0) : V(0, 0);
      const SeriesReport rep = series_report(th, r, *n_max, o, options_of(c.common));
      for (int n = 0; n <= *n_max; ++n) {
        Cell root, ratio, lower, upper;
        if (n >= 1) {
          root = rep.root_estimates[n];
          ratio = rep.ratio_estimates[n];
          lower = rep.lower_bracket[n];
          upper = rep.upper_bracket;
        }
        t.add({static_cast<long long>(n), rep.c_tilde[n], root, ratio, lower, upper, rep.target});
      }
      const bool default_rule = r.theta_arc == 1 && r.pi_minus_theta_arc == 1 && r.straight == 1;
      meta["rule"] = rule_text(r);
      meta["ratios_approach_target"] = rep.ratios_approach_target();
      return rep.positive() && rep.lower_bound_holds() && (!default_rule || rep.bracket_holds());
    };
  }

  // ---- honeycomb ----------------------------------------------------------
  {
    Command& c = commands["honeycomb"];
    c.app = app.add_subcommand("honeycomb", "Cross-check against honeycomb walk counts at theta = pi/3");
    c.app->footer(
        "Columns: n,weighted_sum,oracle_count,expected,rel_error\n"
        "weighted_sum uses rule 1,2,2 at theta = pi/3; expected = u1^n * oracle_count.");
    add_common(c, false);
    auto n_max = std::make_shared<int>(10);
    auto tol = std::make_shared<double>(1e-12);
    c.app->add_option("--n-max", *n_max, "Largest length")->check(CLI::Range(0, 30))->capture_default_str();
    c.app->add_option("--tol", *tol, "Relative tolerance")->capture_default_str();
    c.run = [&c, n_max, tol](Table& t, json& meta) {
      t.columns = {"n", "weighted_sum", "oracle_count", "expected", "rel_error"};
      const HoneycombReport rep = honeycomb_crosscheck(*n_max, options_of(c.common));
      for (const auto& r : rep.rows) {
        t.add({static_cast<long long>(r.n), r.weighted_sum, static_cast<long long>(r.oracle_count),
               r.expected, r.rel_error});
      }
      meta["walks_checked"] = rep.walks_checked;
      meta["image_failures"] = rep.image_failures;
      meta["w2_walks"] = rep.w2_walks;
      c.summary.push_back("images checked " + std::to_string(rep.walks_checked) + ", failures " +
                          std::to_string(rep.image_failures) + ", w2 walks " +
                          std::to_string(rep.w2_walks));
      return rep.ok(*tol);
    };
  }

  // ---- yangbaxter ---------------------------------------------------------
  {
    Command& c = commands["yangbaxter"];
    c.app = app.add_subcommand("yangbaxter", "Yang-Baxter residuals of the O(n) weights on the hexagon");
    c.app->footer(
        "Columns: alpha,s,n,pattern,sumT1,sumT2,diff\n"
        "pattern lists, for each of the six boundary mid-edges in cyclic order, the mid-edge it is\n"
        "joined to inside the hexagon, or '-' when unused.");
    add_common(c, false);
    auto alphas = std::make_shared<std::vector<std::string>>(
        std::vector<std::string>{"pi/6", "pi/4", "pi/3", "5pi/12", "4pi/9"});
    auto ss = std::make_shared<std::vector<double>>(std::vector<double>{-0.375, 0.5, 0.75});
    auto tol = std::make_shared<double>(1e-10);
    c.app->add_option("--alpha", *alphas, "Hexagon angles")->delimiter(',')->capture_default_str();
    c.app->add_option("--s", *ss, "O(n) parameters")->delimiter(',')->capture_default_str();
    c.app->add_option("--tol", *tol, "Residual tolerance")->capture_default_str();
    c.run = [&c, alphas, ss, tol](Table& t, json&) {
      t.columns = {"alpha", "s", "n", "pattern", "sumT1", "sumT2", "diff"};
      bool ok = true;
      for (double a : parse_angles(*alphas)) {
        for (double s : *ss) {
          YangBaxterReport rep;
          try {
            rep = yang_baxter_table(a, s);
          } catch (const DomainError& e) {
            throw ConfigError(e.what());
          }
          for (const auto& r : rep.rows) {
            const double d = std::abs(r.sum_t1 - r.sum_t2);
            ok = ok && d < *tol;
            t.add({a, s, rep.n, r.pattern, r.sum_t1, r.sum_t2, d});
          }
        }
      }
      return ok;
    };
  }

  // ---- enumerate ----------------------------------------------------------
  {
    Command& c = commands["enumerate"];
    c.app = app.add_subcommand("enumerate", "Dump every walk up to a length");
    c.app->footer(
        "Columns: length,weight,walk\n"
        "walk is 'start;from>to,...' with mid-edges written i,j,H or i,j,V. Critical weights.\n"
        "With --T and --L the walks stay inside that parallelogram.");
    add_common(c);
    auto start = std::make_shared<std::string>("0,0,H");
    auto max_length = std::make_shared<int>(2);
    auto rule = std::make_shared<std::string>("arcs");
    auto T = std::make_shared<int>(0);
    auto L = std::make_shared<int>(-1);
    c.app->add_option("--start", *start, "Start mid-edge i,j,H|V")->capture_default_str();
    c.app->add_option("--max-length", *max_length, "Largest length")->check(CLI::Range(0, 40))->capture_default_str();
    c.app->add_option("--rule", *rule, "Length rule: arcs, honeycomb or a,b,c")->capture_default_str();
    c.app->add_option("--T", *T, "Domain width")->check(CLI::Range(1, 64));
    c.app->add_option("--L", *L, "Domain half height")->check(CLI::Range(0, 64));
    c.run = [&c, start, max_length, rule, T, L](Table& t, json&) {
      t.columns = {"length", "weight", "walk"};
      const LatticeAngle th = lattice_angle(c.common.theta);
      const LengthRule r = parse_rule(*rule);
      MidEdge s;
      try {
        s = parse_walk(*start + ";").start();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--start: ") + e.what());
      }
      const WeightSet w = critical_weights(th);
      auto emit = [&](const WalkCursor& cur) {
        t.add({static_cast<long long>(cur.length()), cur.weight(), format_walk(cur.to_walk())});
      };
      if ((*T > 0) != (*L >= 0)) throw ConfigError("--T and --L go together");
      if (*T > 0) {
        const ParallelogramDomain d(*T, *L, th);
        if (!d.contains(s)) throw ConfigError("--start lies outside the domain");
        const LatticeGraph g = LatticeGraph::of(d);
        WalkEnumerator(g, s, r, {w}, *max_length, options_of(c.common)).run(emit);
      } else {
        WalkEnumerator::free_lattice(s, r, w, *max_length, options_of(c.common)).run(emit);
      }
      return true;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (auto& [name, cmd] : commands) {
    if (!cmd.app->parsed()) continue;
    Table table;
    json meta;
    meta["command"] = name;
    meta["version"] = kVersion;
    json config;
    for (const CLI::Option* opt : cmd.app->get_options()) {
      if (opt->get_name() == "--help" || opt->get_name() == "-h,--help") continue;
      const auto res = opt->reduced_results();
      if (!res.empty()) {
        config[opt->get_single_name()] = res.size() == 1 ? json(res[0]) : json(res);
      } else if (!opt->get_default_str().empty()) {
        config[opt->get_single_name()] = opt->get_default_str();
      }
    }
    meta["config"] = config;
    std::string stamp;
    if (cmd.common.timestamp) {
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      stamp = buf;
      meta["timestamp"] = stamp;
    }

    bool ok = false;
    try {
      ok = cmd.run(table, meta);
    } catch (const BudgetExceeded& e) {
      std::cerr << "rhombsaw " << name << ": " << e.what() << '\n';
      return kExitBudget;
    } catch (const ConfigError& e) {
      std::cerr << "rhombsaw " << name << ": " << e.what() << '\n';
      return kExitConfig;
    } catch (const DomainError& e) {
      std::cerr << "rhombsaw " << name << ": " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::invalid_argument& e) {
      std::cerr << "rhombsaw " << name << ": " << e.what() << '\n';
      return kExitConfig;
    }
    meta["passed"] = ok;

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (cmd.common.output != "-") {
      file.open(cmd.common.output);
      if (!file) {
        std::cerr << "rhombsaw: cannot write " << cmd.common.output << '\n';
        return kExitConfig;
      }
      out = &file;
    }
    if (cmd.common.format == "json") {
      table.write_json(*out, meta);
    } else {
      table.write_csv(*out, stamp.empty() ? std::string() : "generated " + stamp);
    }
    for (const auto& line : cmd.summary) std::cerr << name << ": " << line << '\n';
    if (!ok) {
      std::cerr << name << ": verification FAILED\n";
      return kExitVerification;
    }
    return kExitOk;
  }
  return kExitConfig;
}
