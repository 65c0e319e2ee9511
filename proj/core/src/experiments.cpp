#include "gnplate/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "gnplate/backward.hpp"
#include "gnplate/csv.hpp"
#include "gnplate/decay.hpp"
#include "gnplate/dynamics.hpp"
#include "gnplate/errors.hpp"
#include "gnplate/mms.hpp"

namespace gnplate {

namespace fs = std::filesystem;

bool ExperimentResult::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CriterionRow& r) { return r.pass; });
}

void write_summary_csv(const std::string& path, const std::vector<CriterionRow>& rows) {
  CsvWriter csv(path, {"criterion", "value", "threshold", "pass"});
  for (const auto& r : rows) {
    csv.cell(r.criterion).cell(r.value).cell(r.threshold).cell(r.pass ? "pass" : "fail");
    csv.end_row();
  }
}

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr unsigned kIdentitySeed = 20240917u;

CriterionRow at_most(std::string name, double value, double limit) {
  return {std::move(name), value, format_double(limit), value <= limit};
}

CriterionRow at_least(std::string name, double value, double limit) {
  return {std::move(name), value, ">=" + format_double(limit), value >= limit};
}

CriterionRow above(std::string name, double value, double limit) {
  return {std::move(name), value, ">" + format_double(limit), value > limit};
}

struct Context {
  const Config& cfg;
  fs::path dir;
  Grid grid;
  State U0;
  std::vector<CriterionRow>& rows;
};

void require_model(const MaterialParams& p, ModelType t, ExperimentKind kind) {
  if (p.model_type != t) {
    fail(ErrorCode::TypeMismatch,
         std::string(to_string(kind)) + " needs model_type " + to_string(t));
  }
}

// Writes one CSV per field when snapshots are enabled and the step is due.
void maybe_snapshot(const Context& ctx, const State& U, long step) {
  if (!ctx.cfg.output.write_snapshots || step % ctx.cfg.time.snapshot_every != 0) return;
  for (Component c : kAllComponents) {
    const fs::path file = ctx.dir / (std::string(component_name(c)) + "_" + std::to_string(step) + ".csv");
    write_field_csv(file.string(), U.field(c));
  }
}

double relative_drift(const EnergyReport& r) {
  const double e0 = r.E0.front();
  double worst = 0.0;
  for (double e : r.E0) worst = std::max(worst, std::abs(e - e0));
  return e0 > 0.0 ? worst / e0 : worst;
}

RunResult run_with_snapshots(const Context& ctx, const OperatorMatrices& m, const StepObserver& extra = {}) {
  long step = 0;
  maybe_snapshot(ctx, ctx.U0, 0);
  return run(ctx.U0, m, Sources{}, ctx.cfg.time.dt, ctx.cfg.time.t_end,
             [&](const State& before, const State& after) {
               ++step;
               maybe_snapshot(ctx, after, step);
               if (extra) extra(before, after);
             });
}

void type2_conservation(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  require_model(p, ModelType::TypeII, ExperimentKind::type2_conservation);
  const OperatorMatrices m = assemble(p, ctx.grid);
  ctx.rows.push_back(at_most("identity_residual", dissipation_identity_residual(m, 100, kIdentitySeed),
                             kIdentityTol));
  const RunResult r = run_with_snapshots(ctx, m);
  write_energy_csv((ctx.dir / "energy.csv").string(), r.report);
  ctx.rows.push_back(at_most("energy_drift", relative_drift(r.report), 1e-9));
}

void type3_decay(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  const ExperimentConfig& ex = ctx.cfg.experiment;
  require_model(p, ModelType::TypeIII, ExperimentKind::type3_decay);
  const OperatorMatrices m = assemble(p, ctx.grid);
  ctx.rows.push_back(at_most("identity_residual", dissipation_identity_residual(m, 100, kIdentitySeed),
                             kIdentityTol));

  double peak = thermal_energy_norm(ctx.U0.vector(), m);
  double last = peak;
  const RunResult r = run_with_snapshots(ctx, m, [&](const State&, const State& after) {
    last = thermal_energy_norm(after.vector(), m);
    peak = std::max(peak, last);
  });
  const EnergyReport& rep = r.report;
  write_energy_csv((ctx.dir / "energy.csv").string(), rep);

  const double scale = rep.E0.front() > 0.0 ? rep.E0.front() : 1.0;
  double balance = 0.0;
  double increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rep.size(); ++k) {
    balance = std::max(balance, rep.balance_residual[k] / scale);
    increase = std::max(increase, (rep.E0[k] - rep.E0[k - 1]) / scale);
  }
  ctx.rows.push_back(at_most("balance_residual", balance, 1e-10));
  ctx.rows.push_back(at_most("energy_increase", rep.size() > 1 ? increase : 0.0, 0.0));
  if (!ex.asymptotic) return;

  ctx.rows.push_back(at_least("thermal_decay_factor", last > 0.0 ? peak / last : 0.0, ex.decay_factor));
  const ModeCheckResult modes = overdetermined_mode_check(p, ctx.grid, 20);
  ctx.rows.push_back(above("min_div_ratio",
                           modes.applicable ? modes.min_div_ratio() : std::numeric_limits<double>::quiet_NaN(),
                           0.0));
  const LocalizationReport loc = localization_impossibility_check(rep);
  ctx.rows.push_back(above("min_E0", loc.min_E0, 0.0));
  CriterionRow curv = at_most("log_curvature", loc.relative_curvature, loc.threshold);
  curv.pass = loc.passed();
  ctx.rows.push_back(curv);
}

void spatial_decay(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  require_model(p, ModelType::TypeIII, ExperimentKind::spatial_decay);
  const OperatorMatrices m = assemble(p, ctx.grid);
  DecayAccumulator acc(p, ctx.U0);
  acc.record(ctx.U0);
  long step = 0;
  const RunResult r = run_with_snapshots(ctx, m, [&](const State& before, const State& after) {
    acc.observe(before, after);
    if (++step % ctx.cfg.time.snapshot_every == 0) acc.record(after);
  });
  if (step % ctx.cfg.time.snapshot_every != 0) acc.record(r.final_state);
  write_energy_csv((ctx.dir / "energy.csv").string(), r.report);

  const DecayProfile& prof = acc.profile();
  const double xi = xi_estimate(p);
  const double ze = zeta(p);
  write_decay_csv((ctx.dir / "decay.csv").string(), prof, xi, ze);

  // Flux form against volume form wherever the volume form is not negligible.
  double vol_scale = 0.0;
  for (const auto& s : prof.samples) vol_scale = std::max(vol_scale, s.J_volume.cwiseAbs().maxCoeff());
  double agreement = 0.0;
  for (const auto& s : prof.samples) {
    for (Eigen::Index k = 0; k < s.J.size(); ++k) {
      if (std::abs(s.J_volume[k]) > 1e-8 * vol_scale) {
        agreement = std::max(agreement, std::abs(s.J[k] - s.J_volume[k]) / std::abs(s.J_volume[k]));
      }
    }
  }
  ctx.rows.push_back(at_most("flux_volume_agreement", agreement, 1e-4));

  const LemmaReport lemma = check_lemma_margin(prof, p);
  const double normalized = lemma.scale > 0.0 ? lemma.min_margin / lemma.scale : lemma.min_margin;
  ctx.rows.push_back(at_least("lemma_margin", normalized, -1e-10));

  const EnvelopeReport env = envelope_check(prof, xi, ze, ctx.cfg.experiment.t_min);
  ctx.rows.push_back(at_most("envelope_ratio", env.worst_ratio, 1.0));
}

void backward_uniqueness(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  const double dt = ctx.cfg.time.dt;
  const double t_end = ctx.cfg.time.t_end;
  const UniquenessReport u = backward_uniqueness_check(p, ctx.grid, dt, t_end, ctx.cfg.experiment.epsilon);
  ctx.rows.push_back(at_most("zero_data_norm", u.zero_data_max_norm, 1e-12));
  CriterionRow growth{"growth_rate", u.fitted_rate, format_double(u.rate_bound), u.growth_bounded};
  ctx.rows.push_back(growth);

  // Trajectory of the configured data for the functionals.
  const BackwardMatrices bm = assemble_backward(p, ctx.grid);
  const BackwardRun b = run_backward(ctx.U0, bm, dt, t_end);
  write_backward_csv((ctx.dir / "backward.csv").string(), b.report);
  const auto& E1 = b.report.E1;
  const double scale = std::max(*std::max_element(E1.begin(), E1.end()), std::numeric_limits<double>::min());
  double worst_drop = 0.0;
  for (std::size_t k = 1; k < E1.size(); ++k) worst_drop = std::min(worst_drop, (E1[k] - E1[k - 1]) / scale);
  ctx.rows.push_back(at_least("E1_nondecreasing", worst_drop, -1e-12));
}

void forward_backward_roundtrip(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  require_model(p, ModelType::TypeII, ExperimentKind::forward_backward_roundtrip);
  const BackwardMatrices bm = assemble_backward(p, ctx.grid);
  const RoundTripReport rt = forward_backward_roundtrip(ctx.U0, bm, ctx.cfg.time.dt, ctx.cfg.time.t_end);
  write_energy_csv((ctx.dir / "energy.csv").string(), rt.forward);
  write_backward_csv((ctx.dir / "backward.csv").string(), rt.backward);
  ctx.rows.push_back(at_most("roundtrip_error", rt.relative_error, 1e-6));
}

void mms_convergence(Context& ctx) {
  const Config& c = ctx.cfg;
  MmsOptions opt;
  opt.Lx = c.grid.Lx;
  opt.Ly = c.grid.Ly;
  opt.grid_sizes = {c.grid.nx, 2 * c.grid.nx, 4 * c.grid.nx};
  opt.time_grid = c.grid.nx;
  opt.dts = {c.time.dt, c.time.dt / 2, c.time.dt / 4, c.time.dt / 8};
  opt.time_t_end = c.time.t_end;
  const MmsResult r = mms_verify(c.material, opt);

  CsvWriter csv(ctx.dir / "mms.csv", {"kind", "step", "error"});
  for (std::size_t k = 0; k < r.h.size(); ++k) csv.cell("space").cell(r.h[k]).cell(r.space_errors[k]).end_row();
  for (std::size_t k = 0; k < r.time_differences.size(); ++k) {
    csv.cell("time").cell(r.dts[k]).cell(r.time_differences[k]).end_row();
  }
  for (const auto& [name, order] : {std::pair{"space_order", r.space_order}, {"time_order", r.time_order}}) {
    ctx.rows.push_back({name, order, "[1.8,2.2]", order >= 1.8 && order <= 2.2});
  }
}

double resolvent_roundtrip(const MaterialParams& p, const Grid& g) {
  const OperatorMatrices m = assemble(p, g);
  std::mt19937_64 rng(20240917u);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd U(m.A_op.rows());
  for (Eigen::Index k = 0; k < U.size(); ++k) U[k] = normal(rng);
  const State Ustar(g, U - m.A_op * U, 0.0);
  const State back = resolvent_solve(Ustar, m);
  return (back.vector() - U).norm() / U.norm();
}

void resolvent_check(Context& ctx) {
  const MaterialParams& p = ctx.cfg.material;
  ctx.rows.push_back(at_most("resolvent_roundtrip", resolvent_roundtrip(p, ctx.grid), 1e-10));
  if (p.model_type == ModelType::TypeIII) {
    MaterialParams reduced = p;
    reduced.k2 = reduced.h2 = reduced.hbar2 = 0.0;
    reduced.model_type = ModelType::TypeII;
    ctx.rows.push_back(at_most("resolvent_roundtrip_type2", resolvent_roundtrip(reduced, ctx.grid), 1e-10));
  }
}

}  // namespace

ExperimentResult run_experiment(const Config& cfg, const std::string& out_dir) {
  ExperimentResult result;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  try {
    if (!cfg.experiment.kind) fail(ErrorCode::MissingRequired, "missing key 'name' in [experiment]");
    const Grid grid(cfg.grid.Lx, cfg.grid.Ly, cfg.grid.nx, cfg.grid.ny);
    Context ctx{cfg, dir, grid, make_initial_state(grid, cfg.ic), result.rows};
    switch (*cfg.experiment.kind) {
      case ExperimentKind::type2_conservation: type2_conservation(ctx); break;
      case ExperimentKind::type3_decay: type3_decay(ctx); break;
      case ExperimentKind::spatial_decay: spatial_decay(ctx); break;
      case ExperimentKind::backward_uniqueness: backward_uniqueness(ctx); break;
      case ExperimentKind::forward_backward_roundtrip: forward_backward_roundtrip(ctx); break;
      case ExperimentKind::mms_convergence: mms_convergence(ctx); break;
      case ExperimentKind::resolvent_check: resolvent_check(ctx); break;
    }
  } catch (const Error& e) {
    result.rows.push_back({"error", std::numeric_limits<double>::quiet_NaN(), std::string(to_string(e.code())), false});
  }
  write_summary_csv((dir / "summary.csv").string(), result.rows);
  return result;
}

}  // namespace gnplate
