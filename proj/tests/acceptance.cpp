// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails. Pass a criterion number to run only that one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "gnplate/backward.hpp"
#include "gnplate/decay.hpp"
#include "gnplate/dynamics.hpp"
#include "gnplate/errors.hpp"
#include "gnplate/mms.hpp"

using namespace gnplate;
using gnplate::testing::mat_a;
using gnplate::testing::mat_a_type2;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

State gaussian(const Grid& g, Component c, double cx, double cy, double width, double cutoff = 0.0) {
  InitialCondition ic;
  ic.preset = IcPreset::gaussian_bump;
  ic.target = c;
  ic.center_x = cx;
  ic.center_y = cy;
  ic.width = width;
  ic.cutoff = cutoff;
  return make_initial_state(g, ic);
}

// Worst |U'E(AU) + U'DU| / U'EU over 100 random states.
Outcome criterion1() {
  const Grid g(1.0, 1.0, 16, 16);
  const double r3 = dissipation_identity_residual(assemble(mat_a(), g), 100, 20240917u);
  const double r2 = dissipation_identity_residual(assemble(mat_a_type2(), g), 100, 20240917u);
  return {r3 <= 1e-12 && r2 <= 1e-12, "TypeIII " + fmt(r3) + ", TypeII " + fmt(r2) + " (<= 1e-12)"};
}

RunResult bump_run(const MaterialParams& p) {
  const Grid g(1.0, 1.0, 32, 32);
  return run(gaussian(g, Component::w, 0.5, 0.5, 0.1), assemble(p, g), Sources{}, 1e-3, 1.0);
}

Outcome criterion2() {
  const RunResult r = bump_run(mat_a_type2());
  const auto& E = r.report.E0;
  double drift = 0.0;
  for (double e : E) drift = std::max(drift, std::abs(e - E.front()) / E.front());
  return {drift <= 1e-9 && r.report.size() == 1001, "max relative drift " + fmt(drift) + " (<= 1e-9)"};
}

Outcome criterion3() {
  const RunResult r = bump_run(mat_a());
  const auto& rep = r.report;
  double balance = 0.0;
  bool monotone = true;
  for (std::size_t k = 1; k < rep.size(); ++k) {
    balance = std::max(balance, std::abs(rep.balance_residual[k]) / rep.E0[k - 1]);
    if (!(rep.E0[k] <= rep.E0[k - 1])) monotone = false;
  }
  return {balance <= 1e-10 && monotone,
          "balance " + fmt(balance) + " (<= 1e-10), nonincreasing " + (monotone ? "yes" : "no")};
}

Outcome criterion4() {
  const Grid g(1.0, 1.0, 16, 16);
  double worst = 0.0;
  for (const MaterialParams& p : {mat_a(), mat_a_type2()}) {
    const OperatorMatrices m = assemble(p, g);
    testing::Gen gen(20240917u);
    const State U = gen.state(g);
    const State Ustar(g, U.vector() - m.A_op * U.vector());
    const State back = resolvent_solve(Ustar, m);
    const Eigen::VectorXd res = back.vector() - m.A_op * back.vector() - Ustar.vector();
    worst = std::max({worst, res.norm() / Ustar.vector().norm(),
                      (back.vector() - U.vector()).norm() / U.vector().norm()});
  }
  return {worst <= 1e-10, "worst residual " + fmt(worst) + " (<= 1e-10)"};
}

// Flux-time J against the energy-volume form at 5 (z, t) points.
Outcome criterion5() {
  const MaterialParams p = mat_a();
  const Grid g(1.0, 1.0, 64, 64);
  const State U0 = gaussian(g, Component::w, 0.5, 0.2, 0.05, 0.15);
  DecayAccumulator acc(p, U0);
  int step = 0;
  run(U0, assemble(p, g), Sources{}, 0.005, 0.25, [&](const State& a, const State& b) {
    acc.observe(a, b);
    if (++step % 10 == 0) acc.record(b);
  });
  const DecayProfile& prof = acc.profile();
  const int rows[5] = {prof.support_row - 4, prof.support_row - 1, prof.support_row + 2,
                       prof.support_row + 6, prof.support_row + 12};
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const DecaySample& s = prof.samples[static_cast<std::size_t>(k)];
    const double Jv = s.J_volume[rows[k]];
    if (Jv == 0.0) return {false, "zero volume form at sampled point"};
    worst = std::max(worst, std::abs(s.J[rows[k]] - Jv) / std::abs(Jv));
  }
  return {worst <= 1e-4, "worst relative gap " + fmt(worst) + " over 5 points (<= 1e-4)"};
}

// The 32 x 256 strip shared by criteria 6 and 7.
const DecayProfile& strip_profile() {
  static const DecayProfile profile = [] {
    const MaterialParams p = mat_a();
    const Grid g(1.0, 8.0, 32, 256);
    const State U0 = gaussian(g, Component::w, 0.5, 0.4, 0.1, 0.3);
    DecayAccumulator acc(p, U0);
    acc.record(U0);
    int step = 0;
    run(U0, assemble(p, g), Sources{}, 0.01, 1.0, [&](const State& a, const State& b) {
      acc.observe(a, b);
      if (++step % 10 == 0) acc.record(b);
    });
    return acc.profile();
  }();
  return profile;
}

Outcome criterion6() {
  const LemmaReport r = check_lemma_margin(strip_profile(), mat_a());
  return {r.passed && r.points > 0, "min margin " + fmt(r.min_margin) + ", scale " + fmt(r.scale) + ", " +
                                        std::to_string(r.points) + " points"};
}

Outcome criterion7() {
  const MaterialParams p = mat_a();
  const EnvelopeReport r = envelope_check(strip_profile(), xi_estimate(p), zeta(p));
  return {r.passed, "worst E/bound " + fmt(r.worst_ratio) + " (<= 1), " + std::to_string(r.points) + " points"};
}

// MAT-A run to t = 100 from a temperature bump, shared by criteria 8 and 9.
struct LongRun {
  double peak = 0.0;
  double last = 0.0;
  EnergyReport report;
};

const LongRun& long_run() {
  static const LongRun result = [] {
    const Grid g(1.0, 1.0, 16, 16);
    const OperatorMatrices m = assemble(mat_a(), g);
    const State U0 = gaussian(g, Component::theta, 0.5, 0.5, 0.1);
    LongRun lr;
    lr.peak = thermal_energy_norm(U0.vector(), m);
    RunResult r = run(U0, m, Sources{}, 0.01, 100.0, [&](const State&, const State& after) {
      lr.last = thermal_energy_norm(after.vector(), m);
      lr.peak = std::max(lr.peak, lr.last);
    });
    lr.report = std::move(r.report);
    return lr;
  }();
  return result;
}

Outcome criterion8() {
  const LongRun& lr = long_run();
  const double factor = lr.peak / lr.last;
  const ModeCheckResult modes = overdetermined_mode_check(mat_a(), Grid(1.0, 1.0, 16, 16), 20);
  const bool ok = factor >= 10.0 && modes.applicable && modes.min_div_ratio() > 0.0;
  return {ok, "thermal decay factor " + fmt(factor) + " (>= 10), min div ratio " + fmt(modes.min_div_ratio())};
}

Outcome criterion9() {
  const UniquenessReport u = backward_uniqueness_check(mat_a(), Grid(1.0, 1.0, 16, 16), 1e-4, 0.01);
  const Grid g(1.0, 1.0, 16, 16);
  const RoundTripReport rt = forward_backward_roundtrip(gaussian(g, Component::w, 0.5, 0.5, 0.1),
                                                       assemble_backward(mat_a_type2(), g), 0.01, 1.0);
  const LocalizationReport loc = localization_impossibility_check(long_run().report);
  const bool ok = u.zero_data_max_norm <= 1e-12 && u.growth_bounded && rt.relative_error <= 1e-6 && loc.passed();
  return {ok, "zero data " + fmt(u.zero_data_max_norm) + ", round trip " + fmt(rt.relative_error) +
                  ", min E0 " + fmt(loc.min_E0) + ", log curvature " + fmt(loc.relative_curvature)};
}

Outcome criterion10() {
  const MmsResult r = mms_verify(mat_a());
  auto in = [](double q) { return q >= 1.8 && q <= 2.2; };
  return {in(r.space_order) && in(r.time_order),
          "space order " + fmt(r.space_order) + ", time order " + fmt(r.time_order) + " (in [1.8, 2.2])"};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 means none stated
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<Criterion> criteria{
      {1, "energy identity", 5.0, criterion1},
      {2, "type II conservation", 60.0, criterion2},
      {3, "type III balance and monotonicity", 60.0, criterion3},
      {4, "resolvent solvability", 5.0, criterion4},
      {5, "flux and volume forms agree", 300.0, criterion5},
      {6, "lemma margin on strip", 0.0, criterion6},
      {7, "decay envelope on strip", 600.0, criterion7},
      {8, "asymptotic thermal decay", 0.0, criterion8},
      {9, "backward uniqueness and localization", 0.0, criterion9},
      {10, "manufactured solution orders", 600.0, criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      out.pass = false;
      out.detail += ", over time limit";
    }
    std::printf("[%s] criterion %d: %s | %s | %.1fs\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
