// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "satflux/errors.hpp"
#include "satflux/experiments.hpp"
#include "satflux/local_bifurcation.hpp"
#include "satflux/model.hpp"
#include "satflux/pde_solver.hpp"
#include "satflux/phase_plane.hpp"
#include "satflux/time_map.hpp"
#include "shooting.hpp"

using namespace satflux;

namespace {

// Collects sub-checks for one criterion and prints their outcome.
class Criterion {
 public:
  explicit Criterion(int id) : id_(id), t0_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) failed_.push_back(what);
    notes_.push_back((ok ? "" : "!") + what);
  }
  void close(double value, double expected, double tol, const std::string& name) {
    std::ostringstream os;
    os.precision(10);
    os << name << "=" << value << " (want " << expected << " +- " << tol << ")";
    check(std::abs(value - expected) <= tol, os.str());
  }
  void fail(const std::string& what) { check(false, what); }

  bool report() const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::printf("Criterion %d: %s [%.1fs]", id_, failed_.empty() ? "PASS" : "FAIL", secs);
    for (const auto& n : notes_) std::printf(" | %s", n.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return failed_.empty();
  }

 private:
  int id_;
  std::chrono::steady_clock::time_point t0_;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

bool guarded(Criterion& c, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  return c.report();
}

RunResult run_preset_run(const ExperimentPreset& p, const ExperimentRun& r, int cells) {
  SchemeConfig cfg;
  cfg.cells = cells;
  return run(preset_initial(r.initial, p.params, cells), cfg);
}

double sup_gap_to_profile(const GridState& s, const StationaryProfile& prof) {
  double gap = 0.0;
  for (int i = 0; i <= s.cells(); ++i) {
    gap = std::max(gap, std::abs(s.values[i] - prof.value_at(s.x(i))));
  }
  return gap;
}

// Maximal runs of cells whose slope exceeds `threshold`.
int steep_interfaces(const GridState& s, double threshold) {
  int count = 0;
  bool inside = false;
  for (int i = 0; i < s.cells(); ++i) {
    const bool steep = std::abs(s.values[i + 1] - s.values[i]) / s.dx > threshold;
    if (steep && !inside) ++count;
    inside = steep;
  }
  return count;
}

bool monotone(const std::vector<double>& v) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) up = false;
    if (v[i] > v[i - 1]) down = false;
  }
  return up || down;
}

bool criterion1() {
  Criterion c(1);
  return guarded(c, [&] {
    c.close(bifurcation_lambda(1, 1.0, 0.1), 10.1749, 1e-3, "lambda_1(1,0.1)");
    c.close(bifurcation_lambda(1, 1.7, 0.2), 3.8808, 1e-3, "lambda_1(1.7,0.2)");
    c.close(bifurcation_lambda(1, 2.5, 0.2), 1.7945, 1e-3, "lambda_1(2.5,0.2)");
    c.close(bifurcation_lambda(2, 2.5, 0.2), 7.1779, 1e-3, "lambda_2(2.5,0.2)");
    c.close(bifurcation_lambda(1, 2.5, 0.3), 2.1632, 1e-3, "lambda_1(2.5,0.3)");
  });
}

bool criterion2() {
  Criterion c(2);
  return guarded(c, [&] {
    c.close(critical_length(1, 0.2).value(), 2.1856, 1e-4, "L*(0.2)");
    c.close(critical_length(1, 0.0).value(), std::numbers::pi / std::numbers::sqrt2, 1e-12,
            "L*(0)");
    const double m = 1.0 / std::sqrt(15.0);
    c.close(critical_length(1, m).value(), 2.0 * std::sqrt(3.0) * std::numbers::pi / 5.0, 1e-4,
            "L*(1/sqrt15)");
    // It is the turning point of L*(M).
    double lo = 1e9;
    double arg = 0.0;
    for (int i = 1; i < 4000; ++i) {
      const double mm = kCriticalMass * i / 4000.0;
      const double v = critical_length(1, mm).value();
      if (v < lo) lo = v, arg = mm;
    }
    c.close(arg, m, 1e-3, "argmin_M L*");
  });
}

bool criterion3() {
  Criterion c(3);
  return guarded(c, [&] {
    struct K {
      int k;
      double L, M;
    };
    for (K k : {K{1, 1.7, 0.2}, K{1, 2.5, 0.2}, K{2, 2.5, 0.2}, K{1, 1.0, 0.0}}) {
      const ReductionReport r = verify_reduction(k.k, k.L, k.M);
      const std::string tag = "(" + std::to_string(k.k) + "," + num(k.L) + "," + num(k.M) + ")";
      c.check(r.closed_form_gap <= 1e-8, "gap" + tag + "=" + num(r.closed_form_gap));
      c.check(r.l_ode_residual <= 1e-8, "ode" + tag + "=" + num(r.l_ode_residual));
    }
  });
}

bool criterion4() {
  Criterion c(4);
  return guarded(c, [&] {
    c.close(homoclinic_lambda(0.1), 6.3426, 1e-3, "lambda_h(0.1)");
    c.close(heteroclinic_lambda(), 4.0, 1e-10, "lambda_het");
    bool sym = true;
    for (double a = 0.01; a < 0.38; a += 0.01) sym = sym && homoclinic_lambda(-a) == homoclinic_lambda(a);
    c.check(sym, "lambda_h(-a)==lambda_h(a)");
  });
}

bool criterion5() {
  Criterion c(5);
  return guarded(c, [&] {
    struct K {
      double L, M;
      int n;
      double lam;
      double a;  // NaN: not checked
      const char* tag;
    };
    const double nan = std::nan("");
    for (K k : {K{1.0, 0.1, 1, 5.6579, 0.0289, "(0.1,1)"}, K{2.5, 0.3, 1, 4.0860, 0.0051, "(0.3,2.5)"},
                K{1.7, 0.2, 1, 4.3032, nan, "(0.2,1.7)"}, K{2.5, 0.2, 1, 4.0433, nan, "(0.2,2.5)"}}) {
      const Branch b = trace_branch(k.L, k.M, k.n);
      c.check(b.termination == Termination::BlowUp,
              std::string("termination") + k.tag + "=" + to_string(b.termination));
      c.close(b.termination_lambda.value(), k.lam, 0.05, std::string("lambda_1") + k.tag);
      if (!std::isnan(k.a)) c.close(b.termination_a.value(), k.a, 0.002, std::string("a") + k.tag);
    }
    const Branch b2 = trace_branch(2.5, 0.2, 2);
    c.check(b2.folds.size() == 1, "mode-2 folds=" + std::to_string(b2.folds.size()));
    if (!b2.folds.empty()) c.close(b2.folds.front().lambda, 4.9714, 0.05, "lambda_sn");
    c.close(b2.termination_lambda.value(), 4.9872, 0.05, "lambda_2(0.2,2.5)");
  });
}

bool criterion6() {
  Criterion c(6);
  return guarded(c, [&] {
    const double l2 = trace_branch(2.5, 0.2, 2).termination_lambda.value();
    const double l1 = trace_branch(1.25, 0.2, 1).termination_lambda.value();
    c.check(std::abs(l2 - l1) <= 1e-3,
            "lambda_2(2.5)=" + num(l2) + " lambda_1(1.25)=" + num(l1) + " gap=" + num(std::abs(l2 - l1)));
  });
}

bool criterion7() {
  Criterion c(7);
  return guarded(c, [&] {
    std::mt19937 rng(20240611u);
    std::uniform_real_distribution<double> lam_d(4.5, 30.0), a_d(-0.3, 0.3), t_d(0.02, 0.98);
    int accepted = 0;
    double worst = 0.0;
    while (accepted < 20) {
      const double lam = lam_d(rng);
      const double a = a_d(rng);
      const EquilibriaTriple e = equilibria(a);
      const double w = e.u_l + t_d(rng) * (e.c - e.u_l);
      const auto pm = PieceMap::build(lam, a, w);
      if (!pm || !pm->classical() || pm->g_centre() < 0.2) continue;
      ++accepted;
      const StationaryProfile prof = make_profile(*pm, 1);
      std::vector<double> xs;
      for (const ProfileSample& s : prof.samples) xs.push_back(s.x);
      const std::vector<double> ref = oracle::shoot_profile(lam, a, w, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        worst = std::max(worst, std::abs(prof.samples[i].u - ref[i]));
      }
    }
    c.check(worst <= 1e-6, "triples=20 sup=" + num(worst));
  });
}

bool criterion8() {
  Criterion c(8);
  return guarded(c, [&] {
    const ExperimentPreset p = experiment_preset("exp1-left");
    const RunResult r = run_preset_run(p, p.runs.front(), 500);
    c.check(r.reason == StopReason::Equilibrium, std::string("stop=") + to_string(r.reason));
    const double rel = r.max_mass_drift / std::abs(r.initial_mass);
    c.check(rel <= 1e-10, "relative drift=" + num(rel) + " steps=" + std::to_string(r.steps));
  });
}

bool criterion9() {
  Criterion c(9);
  return guarded(c, [&] {
    const ExperimentPreset p = experiment_preset("exp1-left");
    const auto sol = solve_stationary(4.0, 1.7, 0.2, 1);
    c.check(sol.status == SolveStatus::Classical, std::string("stationary=") + to_string(sol.status));
    if (!sol.profile) return;
    const RunResult r500 = run_preset_run(p, p.runs.front(), 500);
    const RunResult r1000 = run_preset_run(p, p.runs.front(), 1000);
    const double g500 = sup_gap_to_profile(r500.final_state, *sol.profile);
    const double g1000 = sup_gap_to_profile(r1000.final_state, *sol.profile);
    c.check(r500.reason == StopReason::Equilibrium && r1000.reason == StopReason::Equilibrium,
            "both runs at equilibrium");
    c.check(g500 <= 1e-2, "sup(N=500)=" + num(g500));
    c.check(g1000 < g500, "sup(N=1000)=" + num(g1000));
  });
}

bool criterion10() {
  Criterion c(10);
  return guarded(c, [&] {
    const ExperimentPreset right = experiment_preset("exp1-right");
    std::vector<double> slopes;
    for (int n : {250, 500, 1000}) {
      const RunResult r = run_preset_run(right, right.runs.front(), n);
      c.check(r.reason == StopReason::Equilibrium,
              "exp1-right N=" + std::to_string(n) + " stop=" + to_string(r.reason));
      slopes.push_back(max_slope(r.final_state));
    }
    for (std::size_t i = 1; i < slopes.size(); ++i) {
      const double ratio = slopes[i] / slopes[i - 1];
      c.check(ratio >= 2.0, "slope ratio " + num(slopes[i - 1]) + "->" + num(slopes[i]) + " = " + num(ratio));
    }

    const ExperimentPreset f9 = experiment_preset("fig9");
    std::vector<GridState> eq;
    for (const ExperimentRun& run9 : f9.runs) {
      const RunResult r = run_preset_run(f9, run9, f9.cells);
      c.check(r.reason == StopReason::Equilibrium, run9.label + " stop=" + to_string(r.reason));
      const double m = discrete_mass(r.final_state.values);
      c.check(std::abs(m - 0.2) <= 1e-3, run9.label + " mass=" + num(m));
      eq.push_back(r.final_state);
    }
    double min_gap = 1e9;
    for (std::size_t i = 0; i < eq.size(); ++i) {
      for (std::size_t j = i + 1; j < eq.size(); ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < eq[i].values.size(); ++k) {
          g = std::max(g, std::abs(eq[i].values[k] - eq[j].values[k]));
        }
        min_gap = std::min(min_gap, g);
      }
    }
    c.check(eq.size() == 3 && min_gap >= 0.05, "fig9 min pairwise sup gap=" + num(min_gap));

    const ExperimentPreset f11 = experiment_preset("fig11");
    const RunResult r11 = run_preset_run(f11, f11.runs.front(), f11.cells);
    c.check(r11.reason == StopReason::Equilibrium, std::string("fig11 stop=") + to_string(r11.reason));
    const int fronts = steep_interfaces(r11.final_state, 10.0);
    c.check(fronts == 2, "fig11 steep interfaces=" + std::to_string(fronts));
    c.check(!monotone(r11.final_state.values), "fig11 non-monotone");
  });
}

bool criterion11() {
  Criterion c(11);
  return guarded(c, [&] {
    int checked = 0;
    bool all_nb = true;
    for (double M : {kSpinodalMass, -kSpinodalMass, 0.6, -0.75, 1.0, -1.0, 1.5}) {
      for (double L : {0.5, 1.7, 2.5, 10.0}) {
        for (int k : {1, 2, 3}) {
          all_nb = all_nb && classify(k, L, M).kind == PitchforkKind::NoBifurcation;
          ++checked;
        }
      }
    }
    c.check(all_nb, "NoBifurcation for |M|>=1/sqrt3 (" + std::to_string(checked) + " cases)");

    // Unseeded and seeded solves for |M| >= 1.
    int solves = 0;
    int classical = 0;
    for (double M : {1.0, -1.0, 1.25, -2.0}) {
      for (double lam : {2.0, 5.0, 12.0, 40.0}) {
        for (double L : {1.0, 2.5}) {
          if (solve_stationary(lam, L, M, 1).status == SolveStatus::Classical) ++classical;
          ++solves;
          for (double a : {-0.3, -0.1, 0.0, 0.1, 0.3}) {
            const EquilibriaTriple e = equilibria(a);
            const double w = 0.5 * (e.u_l + e.c);
            if (solve_stationary(lam, L, M, 1, StationarySeed{a, w}).status == SolveStatus::Classical) {
              ++classical;
            }
            ++solves;
          }
        }
      }
    }
    c.check(classical == 0, "classical solutions with |M|>=1: " + std::to_string(classical) + " of " +
                                std::to_string(solves) + " solves");

    // Every classical piece in a dense (lambda, a, u_min) sweep has |mean| < 1.
    double worst = 0.0;
    for (double lam : {4.2, 6.0, 10.0, 25.0, 80.0}) {
      for (int ia = -38; ia <= 38; ++ia) {
        const double a = 0.01 * ia;
        const EquilibriaTriple e = equilibria(a);
        for (int j = 1; j < 60; ++j) {
          const double w = e.u_l + (e.c - e.u_l) * j / 60.0;
          const PieceLengthMass p = piece_length_and_mass(lam, a, w);
          if (p.kind == TurnKind::Turning) worst = std::max(worst, std::abs(p.mass));
        }
      }
    }
    c.check(worst < 1.0, "sweep max |mean|=" + num(worst));
  });
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> all = {criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7, criterion8,
                                                  criterion9, criterion10, criterion11};
  int failures = 0;
  for (const auto& c : all) failures += c() ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
