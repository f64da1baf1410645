#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cli/output.hpp"
#include "json.hpp"
#include "satflux/cli.hpp"
#include "satflux/errors.hpp"
#include "satflux/experiments.hpp"
#include "satflux/local_bifurcation.hpp"
#include "satflux/pde_solver.hpp"
#include "satflux/phase_plane.hpp"
#include "satflux/time_map.hpp"

namespace satflux::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string opt_str(const std::optional<double>& v) { return v ? fmt(*v) : "none"; }

// classify ------------------------------------------------------------------

Command make_classify(CLI::App& app) {
  struct Opts {
    int k = 1;
    double L = 0.0;
    double M = 0.0;
    bool json = false;
    double tol = 1e-4;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("classify", "Direction of the k-th pitchfork from u = M");
  sub->add_option("--k", o->k, "mode number")->check(CLI::PositiveNumber);
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--M", o->M, "prescribed mean")->required();
  sub->add_flag("--json", o->json, "machine-readable output");
  sub->add_option("--degenerate-tol", o->tol,
                  "relative cancellation in h_yyy below which the pitchfork is flagged degenerate");
  return {sub, [o](Context& ctx) {
            const PitchforkClass c = classify(o->k, o->L, o->M, o->tol);
            std::ostream& os = *ctx.out;
            if (o->json) {
              nlohmann::ordered_json j;
              j["kind"] = to_string(c.kind);
              j["mode"] = c.mode;
              j["L"] = o->L;
              j["M"] = o->M;
              j["lambda_k"] = c.lambda_k ? nlohmann::json(*c.lambda_k) : nlohmann::json();
              j["critical_length"] =
                  c.critical_length ? nlohmann::json(*c.critical_length) : nlohmann::json();
              if (c.kind == PitchforkKind::NoBifurcation) {
                j["h_yyy"] = nullptr;
                j["h_lambda_y"] = nullptr;
              } else {
                j["h_yyy"] = c.h_yyy;
                j["h_lambda_y"] = c.h_lambda_y;
              }
              j["degenerate"] = c.degenerate;
              os << j.dump(2) << '\n';
              return kOk;
            }
            os << "kind: " << to_string(c.kind) << '\n';
            os << "mode: " << c.mode << '\n';
            if (c.kind == PitchforkKind::NoBifurcation) {
              os << "regime: f'(M) <= 0 (|M| >= 1/sqrt(3)); u = M admits no bifurcation\n";
              os << "critical_length: " << opt_str(c.critical_length) << '\n';
              return kOk;
            }
            os << "lambda_k: " << fmt(*c.lambda_k) << '\n';
            os << "critical_length: " << opt_str(c.critical_length) << '\n';
            os << "h_yyy: " << fmt(c.h_yyy) << '\n';
            os << "h_lambda_y: " << fmt(c.h_lambda_y) << '\n';
            os << "degenerate: " << (c.degenerate ? "true" : "false") << '\n';
            return kOk;
          }};
}

// phase ---------------------------------------------------------------------

Command make_phase(CLI::App& app) {
  struct Opts {
    double a = 0.0;
    double lambda = 0.0;
    std::string orbits;
    CLI::Option* lambda_opt = nullptr;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("phase", "Equilibria and loop thresholds of the ancillary system");
  sub->add_option("--a", o->a, "nonlocal constant")->required();
  o->lambda_opt = sub->add_option("--lambda", o->lambda, "lambda")->check(CLI::PositiveNumber);
  sub->add_option("--orbits", o->orbits, "CSV of sample orbits (needs --lambda)");
  return {sub, [o](Context& ctx) {
            std::ostream& os = *ctx.out;
            const EquilibriaTriple e = equilibria(o->a);
            os << "u_l: " << fmt(e.u_l) << "\nc: " << fmt(e.c) << "\nu_r: " << fmt(e.u_r) << '\n';
            if (o->a == 0.0) {
              os << "heteroclinic_lambda: " << fmt(heteroclinic_lambda()) << '\n';
            } else {
              os << "lambda_h: " << fmt(homoclinic_lambda(o->a)) << '\n';
            }
            if (o->lambda_opt->count() == 0) {
              if (!o->orbits.empty()) {
                *ctx.err << "--orbits needs --lambda\n";
                return kUsage;
              }
              return kOk;
            }
            const double lam = o->lambda;
            os << "linearized_period: " << fmt(linearized_period(lam, o->a)) << '\n';
            if (lam > loop_breaking_lambda(o->a)) {
              const ConfinementValues cv = confinement_values(lam, o->a);
              os << "u_star: " << fmt(cv.u_star) << "\nu_star_star: " << fmt(cv.u_star_star) << '\n';
            } else {
              os << "confinement: none (lambda does not exceed the loop-breaking value)\n";
            }
            if (!o->orbits.empty()) {
              CsvTable t;
              t.comments = {"a=" + fmt(o->a), "lambda=" + fmt(lam)};
              t.columns = {"orbit", "x", "u", "v"};
              for (int k = 1; k <= 5; ++k) {
                const double u0 = e.u_l + (e.c - e.u_l) * k / 6.0;
                const Orbit orb = trace_orbit({u0, 0.0}, lam, o->a, 1e-3, 20.0);
                for (std::size_t i = 0; i < orb.samples.size(); i += 10) {
                  const OrbitSample& s = orb.samples[i];
                  t.rows.push_back({double(k), s.x, s.u, s.v});
                }
              }
              const auto path = resolve_output(ctx.out_dir, o->orbits);
              write_csv(path, t);
              os << "orbits: " << path.string() << '\n';
            }
            return kOk;
          }};
}

// branch --------------------------------------------------------------------

CsvTable branch_table(const Branch& b) {
  CsvTable t;
  t.comments = {"L=" + fmt(b.length), "M=" + fmt(b.mass), "n=" + std::to_string(b.mode)};
  t.columns = {"lambda", "a", "u_min", "u_at_0", "amplitude"};
  for (const BranchPoint& p : b.points) t.rows.push_back({p.lambda, p.a, p.u_min, p.u_at_0, p.amplitude});
  for (const BranchFold& f : b.folds) {
    t.footer.push_back("fold,lambda=" + fmt(f.lambda) + ",a=" + fmt(f.a) + ",u_min=" + fmt(f.u_min));
  }
  std::string term = std::string("termination,") + to_string(b.termination);
  if (b.termination_lambda) term += ",lambda_n=" + fmt(*b.termination_lambda);
  if (b.termination_a) term += ",a=" + fmt(*b.termination_a);
  t.footer.push_back(term);
  return t;
}

void print_branch_summary(std::ostream& os, const Branch& b) {
  os << "points: " << b.points.size() << '\n';
  os << "termination: " << to_string(b.termination) << '\n';
  if (b.termination_lambda) os << "lambda_n: " << fmt(*b.termination_lambda) << '\n';
  if (b.termination_a) os << "a_end: " << fmt(*b.termination_a) << '\n';
  if (b.bracket_width) os << "bracket_width: " << fmt(*b.bracket_width) << '\n';
  for (const BranchFold& f : b.folds) os << "fold: lambda=" << fmt(f.lambda) << " a=" << fmt(f.a) << '\n';
}

Command make_branch(CLI::App& app) {
  struct Opts {
    double L = 0.0;
    double M = 0.0;
    int n = 1;
    double lambda_max = 200.0;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("branch", "Trace the branch of classical solutions with n inflections");
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--M", o->M, "prescribed mean")->required();
  sub->add_option("--n", o->n, "inflection count")->check(CLI::PositiveNumber);
  sub->add_option("--lambda-max", o->lambda_max, "stop beyond this lambda");
  sub->add_option("--out", o->out, "CSV output");
  return {sub, [o](Context& ctx) {
            ContinuationOptions opts;
            opts.lambda_max = o->lambda_max;
            const Branch b = trace_branch(o->L, o->M, o->n, opts);
            print_branch_summary(*ctx.out, b);
            if (!o->out.empty()) {
              const auto path = resolve_output(ctx.out_dir, o->out);
              write_csv(path, branch_table(b));
              *ctx.out << "csv: " << path.string() << '\n';
            }
            return kOk;
          }};
}

// curves --------------------------------------------------------------------

Command make_curves(CLI::App& app) {
  struct Opts {
    double L = 0.0;
    double M = 0.0;
    std::string which;
    double lambda_min = 0.0;
    double lambda_max = 40.0;
    int points = 200;
    std::string out;
    CLI::Option* m_opt = nullptr;
    CLI::Option* min_opt = nullptr;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("curves", "Curves a_b, a* or the traced branch in the (lambda, a) plane");
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  o->m_opt = sub->add_option("--M", o->M, "prescribed mean (atilde only)");
  sub->add_option("--which", o->which, "ab, astar or atilde")
      ->required()
      ->check(CLI::IsMember({"ab", "astar", "atilde"}));
  o->min_opt = sub->add_option("--lambda-min", o->lambda_min, "grid start");
  sub->add_option("--lambda-max", o->lambda_max, "grid end");
  sub->add_option("--points", o->points, "grid size")->check(CLI::Range(2, 100000));
  sub->add_option("--out", o->out, "CSV output");
  return {sub, [o](Context& ctx) {
            CsvTable t;
            t.comments = {"curve=" + o->which, "L=" + fmt(o->L)};
            t.columns = {"lambda", "a"};
            if (o->which == "atilde") {
              if (o->m_opt->count() == 0) {
                *ctx.err << "curves --which atilde needs --M\n";
                return kUsage;
              }
              ContinuationOptions opts;
              opts.lambda_max = o->lambda_max;
              const Branch b = trace_branch(o->L, o->M, 1, opts);
              t.comments.push_back("M=" + fmt(o->M));
              for (const BranchPoint& p : b.points) t.rows.push_back({p.lambda, p.a});
              // Diagnostic only: reversals of a along the branch.
              int reversals = 0;
              double prev = 0.0;
              for (std::size_t i = 1; i < b.points.size(); ++i) {
                const double d = b.points[i].a - b.points[i - 1].a;
                if (d == 0.0) continue;
                if (prev != 0.0 && (d > 0.0) != (prev > 0.0)) ++reversals;
                prev = d;
              }
              t.footer.push_back("monotone_a," + std::string(reversals == 0 ? "yes" : "no") +
                                 ",reversals=" + std::to_string(reversals) +
                                 ",folds=" + std::to_string(b.folds.size()));
              if (b.termination_lambda && b.termination_a) {
                t.footer.push_back("endpoint,lambda=" + fmt(*b.termination_lambda) +
                                   ",a=" + fmt(*b.termination_a));
              }
            } else {
              double lo = o->lambda_min;
              if (o->min_opt->count() == 0) {
                lo = o->which == "ab" ? std::numbers::pi * std::numbers::pi / (o->L * o->L)
                                      : blowup_lambda(0.0, o->L);
              }
              for (int i = 0; i < o->points; ++i) {
                const double lam = lo + (o->lambda_max - lo) * i / (o->points - 1);
                try {
                  const double a = o->which == "ab" ? bifurcation_point_curve(lam, o->L)
                                                    : blowup_boundary_a(lam, o->L);
                  t.rows.push_back({lam, a});
                } catch (const Error& e) {
                  t.footer.push_back("skipped,lambda=" + fmt(lam) + "," + e.what());
                }
              }
            }
            *ctx.out << "rows: " << t.rows.size() << '\n';
            if (!t.rows.empty()) {
              *ctx.out << "first: " << fmt(t.rows.front()[0]) << ',' << fmt(t.rows.front()[1]) << '\n';
              *ctx.out << "last: " << fmt(t.rows.back()[0]) << ',' << fmt(t.rows.back()[1]) << '\n';
            }
            for (const auto& f : t.footer) {
              if (f.rfind("endpoint", 0) == 0 || f.rfind("monotone_a", 0) == 0) *ctx.out << f << '\n';
            }
            if (!o->out.empty()) {
              const auto path = resolve_output(ctx.out_dir, o->out);
              write_csv(path, t);
              *ctx.out << "csv: " << path.string() << '\n';
            }
            return kOk;
          }};
}

// stationary ----------------------------------------------------------------

Command make_stationary(CLI::App& app) {
  struct Opts {
    double L = 0.0;
    double M = 0.0;
    double lambda = 0.0;
    int n = 1;
    int samples = 401;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("stationary", "Classical stationary solution at fixed lambda");
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--M", o->M, "prescribed mean")->required();
  sub->add_option("--lambda", o->lambda, "lambda")->required()->check(CLI::PositiveNumber);
  sub->add_option("--n", o->n, "inflection count")->check(CLI::PositiveNumber);
  sub->add_option("--samples", o->samples, "samples per monotone piece")->check(CLI::Range(3, 1000000));
  sub->add_option("--out", o->out, "CSV output");
  return {sub, [o](Context& ctx) {
            SolveOptions so;
            so.samples = o->samples;
            const StationaryOutcome r = solve_stationary(o->lambda, o->L, o->M, o->n, std::nullopt, so);
            std::ostream& os = *ctx.out;
            os << "status: " << to_string(r.status) << '\n';
            if (r.termination_lambda) os << "lambda_n: " << fmt(*r.termination_lambda) << '\n';
            if (r.status != SolveStatus::Classical) {
              *ctx.err << r.message << '\n';
              return kNoClassicalSolution;
            }
            const StationaryProfile& p = *r.profile;
            os << "a: " << fmt(p.a) << "\nu_min: " << fmt(p.u_min) << "\nu_max: " << fmt(p.u_max)
               << "\nenergy_C: " << fmt(p.energy_c) << "\nresidual: " << fmt(p.residual) << '\n';
            if (!o->out.empty()) {
              CsvTable t;
              t.comments = {"L=" + fmt(o->L), "M=" + fmt(o->M), "lambda=" + fmt(o->lambda),
                            "n=" + std::to_string(o->n), "a=" + fmt(p.a), "u_min=" + fmt(p.u_min),
                            "u_max=" + fmt(p.u_max), "energy_C=" + fmt(p.energy_c),
                            "piece_length=" + fmt(p.length), "residual=" + fmt(p.residual)};
              t.columns = {"x", "u", "v"};
              for (const ProfileSample& s : p.tiled()) t.rows.push_back({s.x, s.u, s.v});
              const auto path = resolve_output(ctx.out_dir, o->out);
              write_csv(path, t);
              os << "csv: " << path.string() << '\n';
            }
            return kOk;
          }};
}

// simulate / experiment -----------------------------------------------------

struct SchemeOpts {
  int cells = 500;
  double dt = 0.0;
  double t_end = 1e3;
  double tol = 1e-8;
};

void add_scheme_options(CLI::App* sub, SchemeOpts& s) {
  sub->add_option("--cells", s.cells, "grid cells N")->check(CLI::Range(4, 10000000));
  sub->add_option("--dt", s.dt, "time step (default: automatic)");
  sub->add_option("--t-end", s.t_end, "time horizon");
  sub->add_option("--tol", s.tol, "equilibrium threshold on max |du|/dt");
}

CsvTable profile_table(const GridState& s, const std::vector<std::string>& comments) {
  CsvTable t;
  t.comments = comments;
  t.comments.push_back("t=" + fmt(s.time));
  t.columns = {"x", "u"};
  for (int i = 0; i <= s.cells(); ++i) t.rows.push_back({s.x(i), s.values[i]});
  return t;
}

// Runs one simulation and writes <stem>_initial.csv and <stem>_final.csv.
int simulate_one(Context& ctx, const std::string& stem, const GridState& init,
                 const SchemeConfig& cfg, const std::vector<std::string>& comments, Manifest& man) {
  const RunResult r = run(init, cfg);
  const auto p0 = resolve_output(ctx.out_dir, stem + "_initial.csv");
  const auto p1 = resolve_output(ctx.out_dir, stem + "_final.csv");
  write_csv(p0, profile_table(init, comments));
  write_csv(p1, profile_table(r.final_state, comments));
  man.outputs.push_back(p0.string());
  man.outputs.push_back(p1.string());
  const std::string k = stem + ".";
  man.results[k + "stop_reason"] = to_string(r.reason);
  man.results[k + "steps"] = std::to_string(r.steps);
  man.results[k + "dt"] = fmt(r.dt);
  man.results[k + "final_time"] = fmt(r.final_state.time);
  man.results[k + "initial_mass"] = fmt(r.initial_mass);
  man.results[k + "final_mass"] = fmt(r.final_mass);
  man.results[k + "mass_drift"] = fmt(r.max_mass_drift);
  man.results[k + "max_slope"] = fmt(max_slope(r.final_state));
  std::ostream& os = *ctx.out;
  os << stem << ": " << to_string(r.reason) << " t=" << fmt(r.final_state.time)
     << " steps=" << r.steps << " initial_mass=" << fmt(r.initial_mass)
     << " mass_drift=" << fmt(r.max_mass_drift) << " max_slope=" << fmt(max_slope(r.final_state))
     << " u(0)=" << fmt(r.final_state.values.front())
     << " u(L)=" << fmt(r.final_state.values.back()) << '\n';
  return r.reason == StopReason::NonFinite ? kInstability : kOk;
}

Command make_simulate(CLI::App& app) {
  struct Opts {
    double L = 0.0;
    double M = 0.0;
    double lambda = 0.0;
    std::string init = "tanh_step";
    double base = 0.3;
    double jump = -0.5;
    double gamma = 0.4;
    double sharpness = 1000.0;
    double amplitude = 1e-3;
    int k = 1;
    std::string prefix = "simulate";
    SchemeOpts scheme;
    CLI::Option* base_opt = nullptr;
    CLI::Option* jump_opt = nullptr;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("simulate", "Run the explicit scheme from chosen initial data");
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--M", o->M, "prescribed mean (constant/cosine data)")->required();
  sub->add_option("--lambda", o->lambda, "lambda")->required()->check(CLI::PositiveNumber);
  sub->add_option("--init", o->init, "tanh_step, two_interface, constant or cosine")
      ->check(CLI::IsMember({"tanh_step", "two_interface", "constant", "cosine"}));
  o->base_opt = sub->add_option("--base", o->base, "tanh_step / two_interface offset");
  o->jump_opt = sub->add_option("--jump", o->jump, "tanh_step / two_interface jump");
  sub->add_option("--gamma", o->gamma, "tanh_step interface position as a fraction of L");
  sub->add_option("--sharpness", o->sharpness, "tanh steepness");
  sub->add_option("--amplitude", o->amplitude, "cosine amplitude");
  sub->add_option("--k", o->k, "cosine mode");
  sub->add_option("--prefix", o->prefix, "output file stem");
  add_scheme_options(sub, o->scheme);
  return {sub, [o](Context& ctx) {
            const auto t0 = Clock::now();
            const ModelParams params(o->L, o->M, o->lambda);
            InitialData data;
            if (o->init == "tanh_step") {
              data = TanhStep{o->base, o->jump, o->gamma, o->sharpness};
            } else if (o->init == "two_interface") {
              TwoInterface d;
              if (o->base_opt->count()) d.base = o->base;
              if (o->jump_opt->count()) d.jump = o->jump;
              d.sharpness = o->sharpness;
              data = d;
            } else if (o->init == "constant") {
              data = Constant{o->M};
            } else {
              data = CosinePerturbation{o->M, o->amplitude, o->k};
            }
            const GridState init = preset_initial(data, params, o->scheme.cells);
            SchemeConfig cfg;
            cfg.cells = o->scheme.cells;
            cfg.dt = o->scheme.dt;
            cfg.t_end = o->scheme.t_end;
            cfg.equilibrium_tol = o->scheme.tol;
            Manifest man;
            man.command = "simulate";
            man.parameters = {{"L", fmt(o->L)}, {"M", fmt(o->M)}, {"lambda", fmt(o->lambda)},
                              {"cells", std::to_string(cfg.cells)}, {"dt", fmt(resolve_dt(cfg, init.dx, o->lambda))},
                              {"t_end", fmt(cfg.t_end)}, {"equilibrium_tol", fmt(cfg.equilibrium_tol)},
                              {"initial_data", describe(data)}};
            const std::vector<std::string> comments = {
                "L=" + fmt(o->L), "M=" + fmt(o->M), "lambda=" + fmt(o->lambda),
                "cells=" + std::to_string(cfg.cells), "initial_data=" + describe(data)};
            const int code = simulate_one(ctx, o->prefix, init, cfg, comments, man);
            if (std::abs(init.recorded_mass - o->M) > 1e-3) {
              *ctx.err << "warning: initial discrete mass " << fmt(init.recorded_mass)
                       << " differs from M = " << fmt(o->M) << '\n';
            }
            man.wall_time = seconds_since(t0);
            const auto mp = resolve_output(ctx.out_dir, o->prefix + "_manifest.json");
            write_manifest(mp, man);
            *ctx.out << "manifest: " << mp.string() << '\n';
            return code;
          }};
}

Command make_experiment(CLI::App& app) {
  struct Opts {
    std::string preset;
    SchemeOpts scheme;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("experiment", "Run a hard-coded experiment preset");
  sub->add_option("--preset", o->preset, "exp1-left, exp1-right, fig9 or fig11")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  add_scheme_options(sub, o->scheme);
  return {sub, [o](Context& ctx) {
            const auto t0 = Clock::now();
            ExperimentPreset p = experiment_preset(o->preset);
            SchemeConfig cfg;
            cfg.cells = o->scheme.cells;
            cfg.dt = o->scheme.dt;
            cfg.t_end = o->scheme.t_end;
            cfg.equilibrium_tol = o->scheme.tol;
            const ModelParams& mp = p.params;
            Manifest man;
            man.command = "experiment";
            man.parameters = {{"preset", p.name}, {"L", fmt(mp.length())}, {"M", fmt(mp.mass())},
                              {"lambda", fmt(mp.lambda())}, {"cells", std::to_string(cfg.cells)},
                              {"dt", fmt(resolve_dt(cfg, mp.length() / cfg.cells, mp.lambda()))},
                              {"t_end", fmt(cfg.t_end)},
                              {"equilibrium_tol", fmt(cfg.equilibrium_tol)}};
            *ctx.out << p.name << ": " << p.description << '\n';
            int code = kOk;
            for (const ExperimentRun& r : p.runs) {
              const GridState init = preset_initial(r.initial, mp, cfg.cells);
              man.parameters["initial_data." + r.label] = describe(r.initial);
              man.results[p.name + "_" + r.label + ".preset_mass"] = fmt(init.recorded_mass);
              const std::vector<std::string> comments = {
                  "preset=" + p.name, "run=" + r.label, "L=" + fmt(mp.length()),
                  "M=" + fmt(mp.mass()), "lambda=" + fmt(mp.lambda()),
                  "cells=" + std::to_string(cfg.cells), "initial_data=" + describe(r.initial)};
              const int c = simulate_one(ctx, p.name + "_" + r.label, init, cfg, comments, man);
              if (c != kOk) code = c;
            }
            man.wall_time = seconds_since(t0);
            const auto path = resolve_output(ctx.out_dir, p.name + "_manifest.json");
            write_manifest(path, man);
            *ctx.out << "manifest: " << path.string() << '\n';
            return code;
          }};
}

// boundary-curve ------------------------------------------------------------

Command make_boundary(CLI::App& app) {
  struct Opts {
    double L = 0.0;
    double a_max = 0.3;
    int points = 31;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  CLI::App* sub = app.add_subcommand("boundary-curve", "Blow-up boundary lambda*(a, L) on an a-grid");
  sub->add_option("--L", o->L, "interval length")->required()->check(CLI::PositiveNumber);
  sub->add_option("--a-max", o->a_max, "largest a sample (< 2/(3 sqrt 3))");
  sub->add_option("--points", o->points, "number of a samples")->check(CLI::Range(2, 100000));
  sub->add_option("--out", o->out, "CSV output");
  return {sub, [o](Context& ctx) {
            if (!(o->a_max >= 0.0 && o->a_max < kBistableBound)) {
              *ctx.err << "--a-max must lie in [0, 2/(3 sqrt 3))\n";
              return kUsage;
            }
            CsvTable t;
            t.comments = {"L=" + fmt(o->L)};
            t.columns = {"a", "lambda", "lambda_h"};
            for (int i = 0; i < o->points; ++i) {
              const double a = o->a_max * i / (o->points - 1);
              try {
                t.rows.push_back({a, blowup_lambda(a, o->L), loop_breaking_lambda(a)});
              } catch (const NoRoot& e) {
                t.footer.push_back("no_root,a=" + fmt(a) + "," + e.what());
              }
            }
            *ctx.out << "rows: " << t.rows.size() << '\n';
            for (const auto& r : t.rows) *ctx.out << fmt(r[0]) << ',' << fmt(r[1]) << '\n';
            if (!o->out.empty()) {
              const auto path = resolve_output(ctx.out_dir, o->out);
              write_csv(path, t);
              *ctx.out << "csv: " << path.string() << '\n';
            }
            return kOk;
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {make_classify(app),   make_phase(app),    make_branch(app),
          make_curves(app),     make_stationary(app), make_simulate(app),
          make_experiment(app), make_boundary(app)};
}

}  // namespace satflux::cli
